#pragma once

#include "stratseq/error.hpp"
#include "stratseq/numeric.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <compare>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace stratseq {

/// One graded piece: `mult` copies of the one-dimensional pure Hodge
/// structure Q(twist) in homological (or cohomological) degree `degree`.
/// A stored twist k always means Q(k); Borel-Moore tables carry nonnegative
/// twists, cohomology tables nonpositive ones.
struct WeightedClass {
    int degree = 0;
    int twist = 0;
    Int mult = 1;

    friend bool operator==(const WeightedClass& a, const WeightedClass& b)
    {
        return a.degree == b.degree && a.twist == b.twist && a.mult == b.mult;
    }
};

using DegTwist = std::pair<int, int>;

/// A finite direct sum of Tate classes, kept in canonical form: entries
/// sorted by (degree, twist), multiplicities merged and strictly positive.
/// The empty list is the zero module. Value semantics throughout; every
/// operation is pure.
class GradedTateModule {
public:
    GradedTateModule() = default;

    explicit GradedTateModule(std::vector<WeightedClass> classes)
    {
        for (WeightedClass& c : classes)
            accumulate(c.degree, c.twist, c.mult);
        prune();
    }

    /// Convenience builder from (degree, twist, mult) triples.
    static GradedTateModule of(std::initializer_list<std::array<long, 3>> triples)
    {
        GradedTateModule m;
        for (const auto& t : triples)
            m.accumulate(static_cast<int>(t[0]), static_cast<int>(t[1]), Int(t[2]));
        m.prune();
        return m;
    }

    static GradedTateModule zero() { return GradedTateModule(); }

    /// The unit for tensor: Q in degree 0.
    static GradedTateModule unit() { return of({{0, 0, 1}}); }

    bool is_zero() const { return table_.empty(); }

    const std::map<DegTwist, Int>& entries() const { return table_; }

    std::vector<WeightedClass> classes() const
    {
        std::vector<WeightedClass> out;
        out.reserve(table_.size());
        for (const auto& [key, mult] : table_)
            out.push_back({key.first, key.second, mult});
        return out;
    }

    Int multiplicity(int degree, int twist) const
    {
        auto it = table_.find({degree, twist});
        return it == table_.end() ? Int(0) : it->second;
    }

    /// Total dimension (sum of multiplicities).
    Int dimension() const
    {
        Int d = 0;
        for (const auto& [key, mult] : table_)
            d += mult;
        return d;
    }

    int min_degree() const
    {
        if (table_.empty())
            fail(ErrorKind::DegreeOutOfRange, "min_degree of the zero module");
        return table_.begin()->first.first;
    }

    int max_degree() const
    {
        if (table_.empty())
            fail(ErrorKind::DegreeOutOfRange, "max_degree of the zero module");
        return table_.rbegin()->first.first;
    }

    friend bool operator==(const GradedTateModule& a, const GradedTateModule& b)
    {
        return a.table_ == b.table_;
    }

    friend GradedTateModule add(const GradedTateModule& a, const GradedTateModule& b)
    {
        GradedTateModule out = a;
        for (const auto& [key, mult] : b.table_)
            out.accumulate(key.first, key.second, mult);
        out.prune();
        return out;
    }

    friend GradedTateModule tensor(const GradedTateModule& a, const GradedTateModule& b)
    {
        GradedTateModule out;
        for (const auto& [ka, ma] : a.table_)
            for (const auto& [kb, mb] : b.table_)
                out.accumulate(ka.first + kb.first, ka.second + kb.second, ma * mb);
        out.prune();
        return out;
    }

    friend GradedTateModule shift(const GradedTateModule& a, int d_delta, int t_delta)
    {
        GradedTateModule out;
        for (const auto& [key, mult] : a.table_)
            out.table_[{key.first + d_delta, key.second + t_delta}] = mult;
        return out;
    }

    /// Alternating sum of multiplicities by degree.
    friend Int euler(const GradedTateModule& a)
    {
        Int e = 0;
        for (const auto& [key, mult] : a.table_)
            e += (key.first % 2 == 0) ? mult : -mult;
        return e;
    }

    /// Alternating sums split by twist; used by exact-row checks.
    std::map<int, Int> euler_by_twist() const
    {
        std::map<int, Int> out;
        for (const auto& [key, mult] : table_)
            out[key.second] += (key.first % 2 == 0) ? mult : -mult;
        return out;
    }

private:
    void accumulate(int degree, int twist, const Int& mult)
    {
        table_[{degree, twist}] += mult;
    }

    void prune()
    {
        for (auto it = table_.begin(); it != table_.end();) {
            if (it->second == 0) {
                it = table_.erase(it);
            } else if (it->second < 0) {
                fail(ErrorKind::Inconsistent, "negative multiplicity in graded module");
            } else {
                ++it;
            }
        }
    }

    std::map<DegTwist, Int> table_;
};

enum class RenderStyle { Text, Latex, Json };
enum class Convention { Homological, Cohomological };

namespace detail {

inline std::string twist_group(const std::vector<std::pair<int, Int>>& twists, RenderStyle style)
{
    // Summands within one degree print with descending twist: Q(7)+Q(6).
    std::string q = style == RenderStyle::Latex ? "\\mathbf{Q}" : "Q";
    std::ostringstream os;
    bool first = true;
    for (auto it = twists.rbegin(); it != twists.rend(); ++it) {
        if (!first)
            os << "+";
        first = false;
        if (it->first == 0 && it->second == 1) {
            os << q;
            continue;
        }
        os << q;
        if (it->first != 0)
            os << "(" << it->first << ")";
        if (it->second != 1)
            os << "^" << (style == RenderStyle::Latex ? "{" : "") << it->second.get_str()
               << (style == RenderStyle::Latex ? "}" : "");
    }
    return os.str();
}

} // namespace detail

/// Deterministic serialization of a module. Cohomological tables list every
/// degree from 0 to the top one (zero rows included, matching the usual
/// printed form of a cohomology table); homological tables list only the
/// nonzero degrees in increasing order.
inline std::string render(const GradedTateModule& a, RenderStyle style, Convention conv)
{
    if (style == RenderStyle::Json) {
        nlohmann::json j;
        j["classes"] = nlohmann::json::array();
        for (const auto& c : a.classes()) {
            nlohmann::json e;
            e["deg"] = c.degree;
            e["twist"] = c.twist;
            if (fits_int64(c.mult))
                e["mult"] = to_int64(c.mult);
            else
                e["mult"] = c.mult.get_str();
            j["classes"].push_back(e);
        }
        return j.dump();
    }

    if (a.is_zero())
        return "0";

    std::map<int, std::vector<std::pair<int, Int>>> by_degree;
    for (const auto& [key, mult] : a.entries())
        by_degree[key.first].emplace_back(key.second, mult);

    std::ostringstream os;
    bool first = true;
    auto emit = [&](int degree, const std::vector<std::pair<int, Int>>* twists) {
        if (!first)
            os << "\n";
        first = false;
        if (conv == Convention::Cohomological)
            os << (style == RenderStyle::Latex ? "H^{" : "H^") << degree
               << (style == RenderStyle::Latex ? "}" : "");
        else
            os << (style == RenderStyle::Latex ? "\\bar H_{" : "BM_") << degree
               << (style == RenderStyle::Latex ? "}" : "");
        os << " = ";
        if (twists == nullptr)
            os << "0";
        else
            os << detail::twist_group(*twists, style);
    };

    if (conv == Convention::Cohomological) {
        int top = a.max_degree();
        int bottom = std::min(0, a.min_degree());
        for (int d = bottom; d <= top; ++d) {
            auto it = by_degree.find(d);
            emit(d, it == by_degree.end() ? nullptr : &it->second);
        }
    } else {
        for (const auto& [degree, twists] : by_degree)
            emit(degree, &twists);
    }
    return os.str();
}

/// JSON interchange form: {"classes":[{"deg":..,"twist":..,"mult":..}]}.
inline nlohmann::json to_json(const GradedTateModule& a)
{
    return nlohmann::json::parse(render(a, RenderStyle::Json, Convention::Homological));
}

inline GradedTateModule module_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("classes") || !j["classes"].is_array())
        fail(ErrorKind::ParseError, "graded module JSON must be {\"classes\":[...]}");
    std::vector<WeightedClass> classes;
    for (const auto& e : j["classes"]) {
        WeightedClass c;
        c.degree = e.at("deg").get<int>();
        c.twist = e.at("twist").get<int>();
        if (e.at("mult").is_string())
            c.mult = int_from_string(e.at("mult").get<std::string>());
        else
            c.mult = Int(e.at("mult").get<std::int64_t>());
        if (c.mult <= 0)
            fail(ErrorKind::ParseError, "multiplicities must be positive");
        classes.push_back(c);
    }
    return GradedTateModule(std::move(classes));
}

} // namespace stratseq
