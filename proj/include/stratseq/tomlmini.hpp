#pragma once

// Minimal TOML-subset reader covering what the computation-spec files use:
// top-level and [section] key/value pairs, [[array-of-tables]] headers, and
// single-line values (strings, integers, booleans, nested arrays, inline
// tables). The exact grammar is documented in docs/specfile.md.

#include "stratseq/error.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace stratseq::toml {

struct Value {
    enum class Kind { String, Integer, Boolean, Array, Table };
    Kind kind = Kind::Table;
    std::string str;
    long long integer = 0;
    bool boolean = false;
    std::vector<Value> array;
    std::map<std::string, Value> table;
    std::vector<std::string> table_order;

    bool has(const std::string& key) const { return table.count(key) != 0; }

    const Value& at(const std::string& key) const
    {
        auto it = table.find(key);
        if (it == table.end())
            fail(ErrorKind::ParseError, "missing key '" + key + "'");
        return it->second;
    }

    const std::string& as_string() const
    {
        if (kind != Kind::String)
            fail(ErrorKind::ParseError, "expected a string");
        return str;
    }

    long long as_int() const
    {
        if (kind != Kind::Integer)
            fail(ErrorKind::ParseError, "expected an integer");
        return integer;
    }

    bool as_bool() const
    {
        if (kind != Kind::Boolean)
            fail(ErrorKind::ParseError, "expected a boolean");
        return boolean;
    }

    const std::vector<Value>& as_array() const
    {
        if (kind != Kind::Array)
            fail(ErrorKind::ParseError, "expected an array");
        return array;
    }

    Value& put(const std::string& key)
    {
        if (!table.count(key))
            table_order.push_back(key);
        return table[key];
    }
};

namespace detail {

inline void skip_ws(const std::string& s, size_t& i)
{
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
        ++i;
}

inline Value parse_value(const std::string& s, size_t& i);

inline Value parse_array(const std::string& s, size_t& i)
{
    Value v;
    v.kind = Value::Kind::Array;
    ++i; // past '['
    skip_ws(s, i);
    if (i < s.size() && s[i] == ']') {
        ++i;
        return v;
    }
    while (true) {
        v.array.push_back(parse_value(s, i));
        skip_ws(s, i);
        if (i < s.size() && s[i] == ',') {
            ++i;
            skip_ws(s, i);
            if (i < s.size() && s[i] == ']') { // trailing comma
                ++i;
                return v;
            }
            continue;
        }
        if (i < s.size() && s[i] == ']') {
            ++i;
            return v;
        }
        fail(ErrorKind::ParseError, "unterminated array in: " + s);
    }
}

inline std::string parse_key(const std::string& s, size_t& i)
{
    skip_ws(s, i);
    size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' ||
                            s[i] == '-'))
        ++i;
    if (i == start)
        fail(ErrorKind::ParseError, "expected a key in: " + s);
    return s.substr(start, i - start);
}

inline Value parse_inline_table(const std::string& s, size_t& i)
{
    Value v;
    v.kind = Value::Kind::Table;
    ++i; // past '{'
    skip_ws(s, i);
    if (i < s.size() && s[i] == '}') {
        ++i;
        return v;
    }
    while (true) {
        std::string key = parse_key(s, i);
        skip_ws(s, i);
        if (i >= s.size() || s[i] != '=')
            fail(ErrorKind::ParseError, "expected '=' in inline table: " + s);
        ++i;
        skip_ws(s, i);
        v.put(key) = parse_value(s, i);
        skip_ws(s, i);
        if (i < s.size() && s[i] == ',') {
            ++i;
            skip_ws(s, i);
            continue;
        }
        if (i < s.size() && s[i] == '}') {
            ++i;
            return v;
        }
        fail(ErrorKind::ParseError, "unterminated inline table in: " + s);
    }
}

inline Value parse_value(const std::string& s, size_t& i)
{
    skip_ws(s, i);
    if (i >= s.size())
        fail(ErrorKind::ParseError, "missing value in: " + s);
    char c = s[i];
    if (c == '"') {
        Value v;
        v.kind = Value::Kind::String;
        ++i;
        while (i < s.size() && s[i] != '"') {
            if (s[i] == '\\' && i + 1 < s.size())
                ++i;
            v.str += s[i++];
        }
        if (i >= s.size())
            fail(ErrorKind::ParseError, "unterminated string in: " + s);
        ++i;
        return v;
    }
    if (c == '[')
        return parse_array(s, i);
    if (c == '{')
        return parse_inline_table(s, i);
    if (s.compare(i, 4, "true") == 0) {
        i += 4;
        Value v;
        v.kind = Value::Kind::Boolean;
        v.boolean = true;
        return v;
    }
    if (s.compare(i, 5, "false") == 0) {
        i += 5;
        Value v;
        v.kind = Value::Kind::Boolean;
        v.boolean = false;
        return v;
    }
    if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
        size_t start = i;
        if (c == '-' || c == '+')
            ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        Value v;
        v.kind = Value::Kind::Integer;
        v.integer = std::stoll(s.substr(start, i - start));
        return v;
    }
    fail(ErrorKind::ParseError, "cannot parse value in: " + s);
}

inline std::string strip_comment(const std::string& line)
{
    bool in_string = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"' && (i == 0 || line[i - 1] != '\\'))
            in_string = !in_string;
        if (line[i] == '#' && !in_string)
            return line.substr(0, i);
    }
    return line;
}

inline std::string trim(const std::string& s)
{
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

} // namespace detail

/// Parse a document into its root table.
inline Value parse(const std::string& text)
{
    Value root;
    root.kind = Value::Kind::Table;
    Value* current = &root;

    size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol == std::string::npos ? eol : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++lineno;
        line = detail::trim(detail::strip_comment(line));
        if (line.empty())
            continue;

        if (line.size() >= 4 && line.substr(0, 2) == "[[" &&
            line.substr(line.size() - 2) == "]]") {
            std::string name = detail::trim(line.substr(2, line.size() - 4));
            Value& arr = root.put(name);
            if (arr.kind != Value::Kind::Array) {
                arr = Value();
                arr.kind = Value::Kind::Array;
            }
            Value entry;
            entry.kind = Value::Kind::Table;
            arr.array.push_back(std::move(entry));
            current = &arr.array.back();
            continue;
        }
        if (line.front() == '[' && line.back() == ']') {
            std::string name = detail::trim(line.substr(1, line.size() - 2));
            Value& tbl = root.put(name);
            tbl.kind = Value::Kind::Table;
            current = &tbl;
            continue;
        }

        size_t i = 0;
        std::string key = detail::parse_key(line, i);
        detail::skip_ws(line, i);
        if (i >= line.size() || line[i] != '=')
            fail(ErrorKind::ParseError,
                 "line " + std::to_string(lineno) + ": expected 'key = value'");
        ++i;
        Value v = detail::parse_value(line, i);
        detail::skip_ws(line, i);
        if (i != line.size())
            fail(ErrorKind::ParseError,
                 "line " + std::to_string(lineno) + ": trailing characters after value");
        current->put(key) = std::move(v);
    }
    return root;
}

} // namespace stratseq::toml
