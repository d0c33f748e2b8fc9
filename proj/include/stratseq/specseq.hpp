#pragma once

#include "stratseq/error.hpp"
#include "stratseq/graded.hpp"
#include "stratseq/strata.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace stratseq {

/// Address of one grid cell: 1-based column index p and the stored total
/// degree k. The rendered row index is q = k - p.
struct CellAddress {
    int p = 0;
    int k = 0;
    friend bool operator==(const CellAddress& a, const CellAddress& b)
    {
        return a.p == b.p && a.k == b.k;
    }
};

/// Book-keeping for imported (non-arithmetic) facts about the spectral
/// sequence. ExactRows is checked arithmetically before the rows are
/// deleted; the other two record claims that license totalize.
struct Assertion {
    enum class Kind { ExactRows, DegeneratesAtPage, ZeroDifferential };
    Kind kind = Kind::DegeneratesAtPage;
    std::vector<int> rows; // ExactRows: rendered row indices q
    int page = 1;          // DegeneratesAtPage
    CellAddress source, target;
    std::string justification;

    static Assertion exact_rows(std::vector<int> rows, std::string why)
    {
        Assertion a;
        a.kind = Kind::ExactRows;
        a.rows = std::move(rows);
        a.justification = std::move(why);
        return a;
    }
    static Assertion degenerates(int page, std::string why)
    {
        Assertion a;
        a.kind = Kind::DegeneratesAtPage;
        a.page = page;
        a.justification = std::move(why);
        return a;
    }
    static Assertion zero_differential(CellAddress src, CellAddress tgt, std::string why)
    {
        Assertion a;
        a.kind = Kind::ZeroDifferential;
        a.source = src;
        a.target = tgt;
        a.justification = std::move(why);
        return a;
    }
};

/// A twist-matched candidate differential d_page : source -> target.
struct Candidate {
    CellAddress source, target;
    int twist = 0;
    int page = 1;
    friend bool operator==(const Candidate& a, const Candidate& b)
    {
        return a.source == b.source && a.target == b.target && a.twist == b.twist &&
               a.page == b.page;
    }
};

/// First-page grid of a filtration spectral sequence. Columns are stored at
/// 1-based indices p; each class sits at its total degree k. Immutable value
/// semantics: assert_and_check returns a new grid.
class SSGrid {
public:
    struct Column {
        int p = 0;
        ColumnContribution contribution;
    };

    SSGrid() = default;

    /// Build from ordered contributions (p = 1, 2, ...). If band_floor is
    /// set, totalize rejects surviving classes of total degree below it.
    SSGrid(std::vector<ColumnContribution> contributions, int ambient_dim,
           std::optional<int> band_floor)
        : ambient_dim_(ambient_dim), band_floor_(band_floor)
    {
        int p = 1;
        for (auto& c : contributions)
            columns_.push_back({p++, std::move(c)});
        initial_euler_ = grid_euler();
    }

    int ambient_dim() const { return ambient_dim_; }
    std::optional<int> band_floor() const { return band_floor_; }
    const std::vector<Column>& columns() const { return columns_; }
    const std::vector<Assertion>& assertions() const { return assertions_; }
    const Int& initial_euler() const { return initial_euler_; }

    const Column* column_at(int p) const
    {
        for (const auto& c : columns_)
            if (c.p == p)
                return &c;
        return nullptr;
    }

    /// Sum of (-1)^k over all classes of all columns.
    Int grid_euler() const
    {
        Int e = 0;
        for (const auto& col : columns_)
            e += euler(col.contribution.table);
        return e;
    }

    friend SSGrid assert_and_check(const SSGrid& g, const Assertion& a);
    friend std::vector<Candidate> possible_differentials(const SSGrid& g, int r);
    friend GradedTateModule totalize(const SSGrid& g);

private:
    int ambient_dim_ = 1;
    std::optional<int> band_floor_;
    std::vector<Column> columns_;
    std::vector<Assertion> assertions_;
    Int initial_euler_ = 0;
};

/// All pairs E_{p,q} -> E_{p-r, q+r-1} where both cells hold classes of the
/// same twist. Differentials are modeled as twist-preserving: every
/// weight-reasons argument reduces to this filter.
inline std::vector<Candidate> possible_differentials(const SSGrid& g, int r)
{
    if (r < 1)
        fail(ErrorKind::DegreeOutOfRange, "page index must be >= 1");
    std::vector<Candidate> out;
    for (const auto& src : g.columns_) {
        const SSGrid::Column* tgt = g.column_at(src.p - r);
        if (!tgt)
            continue;
        for (const auto& [key, mult] : src.contribution.table.entries()) {
            const auto [k, w] = key;
            if (tgt->contribution.table.multiplicity(k - 1, w) > 0)
                out.push_back({{src.p, k}, {tgt->p, k - 1}, w, r});
        }
    }
    return out;
}

/// Candidates over every page the grid can support.
inline std::vector<Candidate> all_candidates(const SSGrid& g)
{
    std::vector<Candidate> out;
    if (g.columns().empty())
        return out;
    int span = g.columns().back().p - g.columns().front().p;
    for (int r = 1; r <= span; ++r)
        for (const auto& c : possible_differentials(g, r))
            out.push_back(c);
    return out;
}

inline SSGrid assert_and_check(const SSGrid& g, const Assertion& a)
{
    if (a.justification.empty())
        fail(ErrorKind::Inconsistent, "assertions must carry a justification");
    SSGrid out = g;
    switch (a.kind) {
        case Assertion::Kind::ExactRows: {
            for (int q : a.rows) {
                // per-twist alternating sum along the row must vanish
                std::map<int, Int> sums;
                for (const auto& col : out.columns_) {
                    int k = q + col.p;
                    for (const auto& [key, mult] : col.contribution.table.entries())
                        if (key.first == k)
                            sums[key.second] += (col.p % 2 == 0) ? mult : -mult;
                }
                for (const auto& [w, s] : sums)
                    if (s != 0) {
                        std::ostringstream os;
                        os << "row " << q << " has nonzero alternating sum " << s.get_str()
                           << " in twist " << w;
                        fail(ErrorKind::ExactnessViolated, os.str());
                    }
            }
            // rows verified: delete them
            for (auto& col : out.columns_) {
                std::vector<WeightedClass> kept;
                for (const auto& c : col.contribution.table.classes()) {
                    int q = c.degree - col.p;
                    if (std::find(a.rows.begin(), a.rows.end(), q) == a.rows.end())
                        kept.push_back(c);
                }
                col.contribution.table = GradedTateModule(std::move(kept));
            }
            break;
        }
        case Assertion::Kind::ZeroDifferential: {
            auto nonzero_at = [&](const CellAddress& cell) {
                const SSGrid::Column* col = out.column_at(cell.p);
                if (!col)
                    return false;
                for (const auto& [key, mult] : col->contribution.table.entries())
                    if (key.first == cell.k)
                        return true;
                return false;
            };
            if (!nonzero_at(a.source) || !nonzero_at(a.target))
                fail(ErrorKind::UnknownCell, "zero-differential assertion names an empty cell");
            break;
        }
        case Assertion::Kind::DegeneratesAtPage:
            break;
    }
    out.assertions_.push_back(a);
    return out;
}

namespace detail {

inline bool suppressed_by(const Candidate& c, const Assertion& a)
{
    if (a.kind == Assertion::Kind::DegeneratesAtPage)
        return c.page >= a.page;
    if (a.kind == Assertion::Kind::ZeroDifferential)
        return c.source == a.source && c.target == a.target;
    return false;
}

} // namespace detail

/// Direct sum of the surviving cells by total degree. Requires the grid to
/// be degenerate: either an explicit degeneration claim, or no twist-matched
/// candidate differential on any page (candidates individually voided by
/// zero-differential assertions count as handled).
inline GradedTateModule totalize(const SSGrid& g)
{
    for (const Candidate& c : all_candidates(g)) {
        bool handled = false;
        for (const Assertion& a : g.assertions())
            if (detail::suppressed_by(c, a)) {
                handled = true;
                break;
            }
        if (!handled) {
            std::ostringstream os;
            os << "unhandled candidate differential E(p=" << c.source.p << ",k=" << c.source.k
               << ") -> E(p=" << c.target.p << ",k=" << c.target.k << ") at twist " << c.twist
               << ", page " << c.page;
            fail(ErrorKind::NotDegenerate, os.str());
        }
    }

    GradedTateModule total;
    for (const auto& col : g.columns())
        total = add(total, col.contribution.table);

    if (g.band_floor() && !total.is_zero() && total.min_degree() < *g.band_floor()) {
        std::ostringstream os;
        os << "surviving class in degree " << total.min_degree() << " below the vanishing floor "
           << *g.band_floor() << " (complement is affine)";
        fail(ErrorKind::VanishingBandViolated, os.str());
    }

    // Differentials and exact-row deletions never change the alternating sum.
    if (euler(total) != g.initial_euler())
        fail(ErrorKind::Inconsistent, "Euler characteristic drifted during totalization");
    return total;
}

struct SuppressedCandidate {
    Candidate candidate;
    std::string justification;
};

struct AuditReport {
    std::vector<Assertion> assertions;
    std::vector<SuppressedCandidate> suppressed;
    std::vector<Candidate> unhandled;
};

/// Machine-readable record of what the grid imported: every assertion, every
/// candidate differential it suppressed, and any candidate nothing accounts
/// for.
inline AuditReport audit(const SSGrid& g)
{
    AuditReport report;
    report.assertions = g.assertions();
    for (const Candidate& c : all_candidates(g)) {
        bool handled = false;
        for (const Assertion& a : g.assertions())
            if (detail::suppressed_by(c, a)) {
                report.suppressed.push_back({c, a.justification});
                handled = true;
                break;
            }
        if (!handled)
            report.unhandled.push_back(c);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const Assertion& a)
{
    nlohmann::json j;
    switch (a.kind) {
        case Assertion::Kind::ExactRows:
            j["kind"] = "exact_rows";
            j["rows"] = a.rows;
            break;
        case Assertion::Kind::DegeneratesAtPage:
            j["kind"] = "degenerates_at_page";
            j["page"] = a.page;
            break;
        case Assertion::Kind::ZeroDifferential:
            j["kind"] = "zero_differential";
            j["source"] = {{"p", a.source.p}, {"k", a.source.k}};
            j["target"] = {{"p", a.target.p}, {"k", a.target.k}};
            break;
    }
    j["justification"] = a.justification;
    return j;
}

inline Assertion assertion_from_json(const nlohmann::json& j)
{
    std::string kind = j.at("kind").get<std::string>();
    std::string why = j.at("justification").get<std::string>();
    if (kind == "exact_rows")
        return Assertion::exact_rows(j.at("rows").get<std::vector<int>>(), why);
    if (kind == "degenerates_at_page")
        return Assertion::degenerates(j.at("page").get<int>(), why);
    if (kind == "zero_differential")
        return Assertion::zero_differential(
            {j.at("source").at("p").get<int>(), j.at("source").at("k").get<int>()},
            {j.at("target").at("p").get<int>(), j.at("target").at("k").get<int>()}, why);
    fail(ErrorKind::ParseError, "unknown assertion kind '" + kind + "'");
}

inline nlohmann::json to_json(const SSGrid& g)
{
    nlohmann::json j;
    j["ambient_dim"] = g.ambient_dim();
    if (g.band_floor())
        j["band_floor"] = *g.band_floor();
    else
        j["band_floor"] = nullptr;
    j["columns"] = nlohmann::json::array();
    for (const auto& col : g.columns()) {
        nlohmann::json c;
        c["p"] = col.p;
        c["name"] = col.contribution.stratum;
        c["table"] = to_json(col.contribution.table);
        c["simplex_table"] = to_json(col.contribution.simplex_only_table);
        j["columns"].push_back(c);
    }
    j["assertions"] = nlohmann::json::array();
    for (const auto& a : g.assertions())
        j["assertions"].push_back(to_json(a));
    return j;
}

inline SSGrid grid_from_json(const nlohmann::json& j)
{
    std::vector<ColumnContribution> contributions;
    for (const auto& c : j.at("columns")) {
        ColumnContribution cc;
        cc.stratum = c.at("name").get<std::string>();
        cc.table = module_from_json(c.at("table"));
        cc.simplex_only_table = module_from_json(c.at("simplex_table"));
        contributions.push_back(std::move(cc));
    }
    std::optional<int> floor;
    if (j.contains("band_floor") && !j.at("band_floor").is_null())
        floor = j.at("band_floor").get<int>();
    SSGrid g(std::move(contributions), j.at("ambient_dim").get<int>(), floor);
    for (const auto& a : j.at("assertions"))
        g = assert_and_check(g, assertion_from_json(a));
    return g;
}

/// LaTeX tabular in the traditional layout: one row per rendered index q
/// (descending), columns left to right, labels along the bottom. Zero
/// columns are omitted.
inline std::string grid_to_latex(const SSGrid& g)
{
    std::vector<const SSGrid::Column*> cols;
    for (const auto& col : g.columns())
        if (!col.contribution.table.is_zero())
            cols.push_back(&col);
    if (cols.empty())
        return "\\begin{tabular}{r}\n(empty)\n\\end{tabular}\n";

    int qmin = 0, qmax = 0;
    bool any = false;
    for (const auto* col : cols)
        for (const auto& [key, mult] : col->contribution.table.entries()) {
            int q = key.first - col->p;
            qmin = any ? std::min(qmin, q) : q;
            qmax = any ? std::max(qmax, q) : q;
            any = true;
        }

    std::ostringstream os;
    os << "\\begin{tabular}{r";
    for (size_t i = 0; i < cols.size(); ++i)
        os << "|c";
    os << "}\n";
    for (int q = qmax; q >= qmin; --q) {
        os << q;
        for (const auto* col : cols) {
            os << "&";
            int k = q + col->p;
            std::vector<std::pair<int, Int>> twists;
            for (const auto& [key, mult] : col->contribution.table.entries())
                if (key.first == k)
                    twists.emplace_back(key.second, mult);
            if (!twists.empty())
                os << "$" << detail::twist_group(twists, RenderStyle::Latex) << "$";
        }
        os << "\\\\\\hline\n";
    }
    for (const auto* col : cols)
        os << "&" << col->contribution.stratum;
    os << "\n\\end{tabular}\n";
    return os.str();
}

} // namespace stratseq
