#pragma once

#include "stratseq/error.hpp"
#include "stratseq/graded.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace stratseq {

/// Rank-one local systems the catalog knows about. Sign is the system on an
/// unordered configuration space changing sign under odd permutations of the
/// points; TorusT changes sign along odd loops in C*; Named covers the two
/// bespoke systems W (on non-collinear triples) and R (on double pairs).
struct LocalSystemTag {
    enum class Kind { Constant, Sign, TorusT, Named };
    Kind kind = Kind::Constant;
    std::string label; // for Named

    static LocalSystemTag constant() { return {Kind::Constant, ""}; }
    static LocalSystemTag sign() { return {Kind::Sign, ""}; }
    static LocalSystemTag torus_t() { return {Kind::TorusT, ""}; }
    static LocalSystemTag named(std::string l) { return {Kind::Named, std::move(l)}; }

    friend bool operator==(const LocalSystemTag& a, const LocalSystemTag& b)
    {
        return a.kind == b.kind && a.label == b.label;
    }
    friend bool operator<(const LocalSystemTag& a, const LocalSystemTag& b)
    {
        return std::tie(a.kind, a.label) < std::tie(b.kind, b.label);
    }

    std::string str() const
    {
        switch (kind) {
            case Kind::Constant: return "Q";
            case Kind::Sign: return "Sign";
            case Kind::TorusT: return "T";
            case Kind::Named: return label;
        }
        return "?";
    }

    static LocalSystemTag parse(const std::string& s)
    {
        if (s == "Q" || s == "Constant" || s.empty())
            return constant();
        if (s == "Sign" || s == "+-Q" || s == "pmQ")
            return sign();
        if (s == "T")
            return torus_t();
        return named(s);
    }
};

/// The base spaces whose (twisted) Borel-Moore homology the engine consumes.
struct Space {
    enum class Kind {
        Point,
        Affine,          // C^n
        Torus,           // C*
        Proj,            // P^n
        P1xP1,           // the nonsingular quadric surface
        ConeMinusVertex, // quadric cone in P^3 minus its vertex
        P3MinusQuadric,  // P^3 minus a nonsingular quadric
        Psi,             // unordered double pairs on P^1 (quotient of F(4,P^1))
        TripleNonCollinear, // non-collinear triples in P^2 minus a conic
        F4P1,            // ordered 4-tuples on P^1
    };
    Kind kind = Kind::Point;
    int n = 0; // Affine(n), Proj(n)

    friend bool operator==(const Space& a, const Space& b)
    {
        return a.kind == b.kind && a.n == b.n;
    }
    friend bool operator<(const Space& a, const Space& b)
    {
        return std::tie(a.kind, a.n) < std::tie(b.kind, b.n);
    }

    std::string str() const
    {
        switch (kind) {
            case Kind::Point: return "Point";
            case Kind::Affine: return "Affine(" + std::to_string(n) + ")";
            case Kind::Torus: return "Torus";
            case Kind::Proj: return "Proj(" + std::to_string(n) + ")";
            case Kind::P1xP1: return "P1xP1";
            case Kind::ConeMinusVertex: return "ConeMinusVertex";
            case Kind::P3MinusQuadric: return "P3MinusQuadric";
            case Kind::Psi: return "Psi";
            case Kind::TripleNonCollinear: return "TripleNonCollinear";
            case Kind::F4P1: return "F4P1";
        }
        return "?";
    }
};

/// A named configuration space: either a base space itself, or the space
/// B(k, Z) of unordered k-point subsets of a base space Z, together with a
/// coefficient system.
struct CatalogKey {
    int config_points = 0; // 0 = the space itself, k >= 1 = B(k, space)
    Space space;
    LocalSystemTag system;

    friend bool operator<(const CatalogKey& a, const CatalogKey& b)
    {
        return std::tie(a.config_points, a.space, a.system) <
               std::tie(b.config_points, b.space, b.system);
    }
    friend bool operator==(const CatalogKey& a, const CatalogKey& b)
    {
        return a.config_points == b.config_points && a.space == b.space && a.system == b.system;
    }

    std::string str() const
    {
        std::string s = config_points > 0
                            ? "B(" + std::to_string(config_points) + "," + space.str() + ")"
                            : space.str();
        return s + ";" + system.str();
    }
};

namespace detail {

inline Space parse_space(const std::string& s)
{
    auto num_arg = [&](const std::string& prefix) -> std::optional<int> {
        if (s.rfind(prefix + "(", 0) == 0 && s.back() == ')') {
            std::string inner = s.substr(prefix.size() + 1, s.size() - prefix.size() - 2);
            try {
                return std::stoi(inner);
            } catch (...) {
                fail(ErrorKind::ParseError, "bad space parameter in '" + s + "'");
            }
        }
        return std::nullopt;
    };
    if (s == "Point")
        return {Space::Kind::Point, 0};
    if (auto n = num_arg("Affine"))
        return {Space::Kind::Affine, *n};
    if (s == "Torus" || s == "C*")
        return {Space::Kind::Torus, 0};
    if (auto n = num_arg("Proj"))
        return {Space::Kind::Proj, *n};
    if (s == "P1" )
        return {Space::Kind::Proj, 1};
    if (s == "P3")
        return {Space::Kind::Proj, 3};
    if (s == "P1xP1")
        return {Space::Kind::P1xP1, 0};
    if (s == "ConeMinusVertex")
        return {Space::Kind::ConeMinusVertex, 0};
    if (s == "P3MinusQuadric")
        return {Space::Kind::P3MinusQuadric, 0};
    if (s == "Psi")
        return {Space::Kind::Psi, 0};
    if (s == "TripleNonCollinear")
        return {Space::Kind::TripleNonCollinear, 0};
    if (s == "F4P1")
        return {Space::Kind::F4P1, 0};
    fail(ErrorKind::ParseError, "unknown space '" + s + "'");
}

} // namespace detail

/// Parse "B(2,P1xP1);Sign" or "Psi;R" or "Torus" (system defaults to Q).
inline CatalogKey parse_catalog_key(const std::string& text)
{
    std::string space_part = text;
    std::string system_part;
    if (auto pos = text.find(';'); pos != std::string::npos) {
        space_part = text.substr(0, pos);
        system_part = text.substr(pos + 1);
    }
    CatalogKey key;
    key.system = LocalSystemTag::parse(system_part);
    if (space_part.rfind("B(", 0) == 0 && space_part.back() == ')') {
        std::string inner = space_part.substr(2, space_part.size() - 3);
        auto comma = inner.find(',');
        if (comma == std::string::npos)
            fail(ErrorKind::ParseError, "expected B(k,space) in '" + text + "'");
        try {
            key.config_points = std::stoi(inner.substr(0, comma));
        } catch (...) {
            fail(ErrorKind::ParseError, "bad point count in '" + text + "'");
        }
        if (key.config_points < 1)
            fail(ErrorKind::ParseError, "B(k,Z) requires k >= 1");
        key.space = detail::parse_space(inner.substr(comma + 1));
    } else {
        key.space = detail::parse_space(space_part);
    }
    return key;
}

namespace detail {

/// Coefficients of the Gaussian binomial [n choose k]_q: the Poincare
/// polynomial of the Grassmannian G(k, C^n) in q = t^2. Computed exactly as
/// prod_{i=1..k} (1-q^{n-k+i}) / (1-q^i).
inline std::vector<Int> gaussian_binomial(int n, int k)
{
    if (k < 0 || k > n)
        return {};
    std::vector<Int> p{1};
    auto times_one_minus = [&](int j) {
        std::vector<Int> out(p.size() + j, 0);
        for (size_t w = 0; w < p.size(); ++w) {
            out[w] += p[w];
            out[w + j] -= p[w];
        }
        p = std::move(out);
    };
    auto divide_one_minus = [&](int j) {
        // synthetic division by (1 - q^j); exact for these products
        std::vector<Int> out(p.size() - j, 0);
        for (size_t w = 0; w < out.size(); ++w) {
            out[w] = p[w];
            if (w >= static_cast<size_t>(j))
                out[w] += out[w - j];
        }
        p = std::move(out);
    };
    for (int i = 1; i <= k; ++i)
        times_one_minus(n - k + i);
    for (int i = 1; i <= k; ++i)
        divide_one_minus(i);
    p.resize(static_cast<size_t>(k) * (n - k) + 1);
    return p;
}

} // namespace detail

struct CatalogEntry {
    CatalogKey key;
    GradedTateModule table;
    std::string note; // provenance: which standard fact or derivation backs it
};

/// Twisted Borel-Moore homology of B(k, disjoint union of affine cells of the
/// given complex dimensions): one class per k-element subset of cells, since
/// two or more points in one cell contribute nothing. Returns zero when k
/// exceeds the number of cells.
inline GradedTateModule cell_sum(int k, const std::vector<int>& cells)
{
    if (k < 1)
        fail(ErrorKind::DegreeOutOfRange, "cell_sum requires k >= 1");
    if (cells.empty())
        fail(ErrorKind::DegreeOutOfRange, "cell decomposition must be nonempty");
    const int n = static_cast<int>(cells.size());
    GradedTateModule out;
    if (k > n)
        return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        int dim = 0;
        for (int i : idx)
            dim += cells[i];
        out = add(out, GradedTateModule({{2 * dim, dim, 1}}));
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return out;
}

/// Solve the long exact sequence of Borel-Moore homology
///   ... -> BM_k(closed) -> BM_k(total) -> BM_k(open) -> BM_{k-1}(closed) -> ...
/// for the open part, under the constraint that every map preserves the Tate
/// twist. `restriction_ranks` pins the rank of BM_k(closed) -> BM_k(total) at
/// the given (degree, twist); ranks that are not forced and not supplied make
/// the solution ambiguous.
inline GradedTateModule les_solve(const GradedTateModule& total, const GradedTateModule& closed,
                                  const std::map<DegTwist, Int>& restriction_ranks = {})
{
    std::map<int, bool> twists;
    for (const auto& [key, mult] : total.entries())
        twists[key.second] = true;
    for (const auto& [key, mult] : closed.entries())
        twists[key.second] = true;
    for (const auto& [key, rank] : restriction_ranks)
        twists[key.second] = true;

    std::vector<std::string> free_params;
    GradedTateModule open;
    for (const auto& [w, unused] : twists) {
        int lo = 0, hi = 0;
        bool any = false;
        auto see = [&](const GradedTateModule& m) {
            for (const auto& [key, mult] : m.entries())
                if (key.second == w) {
                    lo = any ? std::min(lo, key.first) : key.first;
                    hi = any ? std::max(hi, key.first) : key.first;
                    any = true;
                }
        };
        see(total);
        see(closed);
        if (!any)
            continue;
        std::map<int, Int> rank_at;
        for (int k = lo - 1; k <= hi + 1; ++k) {
            Int c = closed.multiplicity(k, w);
            Int t = total.multiplicity(k, w);
            Int cap = c < t ? c : t;
            auto it = restriction_ranks.find({k, w});
            if (it != restriction_ranks.end()) {
                if (it->second < 0 || it->second > cap) {
                    std::ostringstream os;
                    os << "rank " << it->second.get_str() << " at (degree " << k << ", twist " << w
                       << ") exceeds bound " << cap.get_str();
                    fail(ErrorKind::Inconsistent, os.str());
                }
                rank_at[k] = it->second;
            } else if (cap == 0) {
                rank_at[k] = 0;
            } else {
                std::ostringstream os;
                os << "(degree " << k << ", twist " << w << ", rank in [0," << cap.get_str()
                   << "])";
                free_params.push_back(os.str());
                rank_at[k] = 0;
            }
        }
        if (!free_params.empty())
            continue;
        for (int k = lo; k <= hi + 1; ++k) {
            Int c_prev = closed.multiplicity(k - 1, w);
            Int t = total.multiplicity(k, w);
            Int o = (t - rank_at[k]) + (c_prev - rank_at[k - 1]);
            if (o > 0)
                open = add(open, GradedTateModule({{k, w, o}}));
        }
    }
    if (!free_params.empty()) {
        std::string msg = "long exact sequence underdetermined; free restriction ranks: ";
        for (size_t i = 0; i < free_params.size(); ++i)
            msg += (i ? ", " : "") + free_params[i];
        fail(ErrorKind::Ambiguous, msg);
    }
    return open;
}

/// Borel-Moore homology of the open cone over a compact base with the given
/// ordinary homology: drop one point class and suspend the rest.
inline GradedTateModule cone_open(const GradedTateModule& base_homology)
{
    if (base_homology.multiplicity(0, 0) < 1)
        fail(ErrorKind::NoPointClass, "cone base must contain a class in degree 0, twist 0");
    GradedTateModule reduced;
    for (const auto& [key, mult] : base_homology.entries()) {
        Int m = mult;
        if (key.first == 0 && key.second == 0)
            m -= 1;
        if (m > 0)
            reduced = add(reduced, GradedTateModule({{key.first, key.second, m}}));
    }
    return shift(reduced, 1, 0);
}

/// Total space of a bundle whose Leray spectral sequence degenerates: the
/// caller asserts degeneration (recorded in pipeline provenance), the table
/// is the tensor product.
inline GradedTateModule bundle(const GradedTateModule& base, const GradedTateModule& fiber)
{
    return tensor(base, fiber);
}

namespace detail {

inline GradedTateModule grassmannian_shifted(int k, int n_plus_1)
{
    // BM of B(k, P^N) with the sign system: homology of G(k, C^{N+1})
    // shifted up by k(k-1), pure of weight -degree.
    auto coeffs = gaussian_binomial(n_plus_1, k);
    GradedTateModule out;
    int s = k * (k - 1);
    for (int i = 0; i < static_cast<int>(coeffs.size()); ++i)
        if (coeffs[i] != 0)
            out = add(out, GradedTateModule({{2 * i + s, i + s / 2, coeffs[i]}}));
    return out;
}

inline const std::map<CatalogKey, CatalogEntry>& registry()
{
    static const std::map<CatalogKey, CatalogEntry> reg = [] {
        std::map<CatalogKey, CatalogEntry> r;
        auto put = [&](const std::string& key_text, GradedTateModule table, std::string note) {
            CatalogKey key = parse_catalog_key(key_text);
            r[key] = CatalogEntry{key, std::move(table), std::move(note)};
        };
        auto M = [](std::initializer_list<std::array<long, 3>> t) {
            return GradedTateModule::of(t);
        };

        put("Point;Q", M({{0, 0, 1}}), "point");
        put("Torus;Q", M({{1, 0, 1}, {2, 1, 1}}), "C* = C minus a point, localization sequence");
        put("Torus;T", GradedTateModule::zero(),
            "pushforward of Q along the squaring map of C* splits as Q + T, so BM(C*;T) = 0");
        put("P1xP1;Q", M({{0, 0, 1}, {2, 1, 2}, {4, 2, 1}}),
            "cell decomposition pt | C | C | C^2 of the nonsingular quadric surface");
        put("ConeMinusVertex;Q", M({{2, 1, 1}, {4, 2, 1}}),
            "cell decomposition C | C^2 of the punctured quadric cone");
        put("P3MinusQuadric;Q", M({{3, 1, 1}, {6, 3, 1}}),
            "localization sequence of the nonsingular quadric surface inside P^3; "
            "re-derived in tests via les_solve");
        put("Psi;R", M({{4, 1, 1}, {7, 3, 1}}),
            "part of BM(F(4,P1)) anti-invariant under swapping within each of the two pairs");
        put("TripleNonCollinear;W", M({{6, 2, 1}, {9, 4, 1}}),
            "localization against the collinear locus in (P^2 minus a conic)^3, "
            "S_3-invariants; re-derived in tests via les_solve and the diagonal filtration");
        put("F4P1;Q", M({{4, 1, 2}, {5, 2, 1}, {7, 3, 2}, {8, 4, 1}}),
            "Leray-Hirsch factorization H(M_{0,4}) x H(PGL(2)) flipped by Poincare duality; "
            "re-derived in tests");

        // B(k, P1xP1) with the sign system; rows match cell_sum over (0,1,1,2)
        // and are cross-checked against it in tests.
        put("B(1,P1xP1);Sign", M({{0, 0, 1}, {2, 1, 2}, {4, 2, 1}}),
            "single points: same as the untwisted table");
        put("B(2,P1xP1);Sign", M({{2, 1, 2}, {4, 2, 2}, {6, 3, 2}}),
            "cell decomposition sum over 2-element subsets of (pt, C, C, C^2)");
        put("B(3,P1xP1);Sign", M({{4, 2, 1}, {6, 3, 2}, {8, 4, 1}}),
            "cell decomposition sum over 3-element subsets");
        put("B(4,P1xP1);Sign", M({{8, 4, 1}}), "all four cells occupied");

        put("B(1,ConeMinusVertex);Sign", M({{2, 1, 1}, {4, 2, 1}}),
            "single points: same as the untwisted table");
        put("B(2,ConeMinusVertex);Sign", M({{6, 3, 1}}),
            "cell decomposition sum over 2-element subsets of (C, C^2)");

        put("B(2,Torus);Sign", M({{2, 0, 1}, {3, 1, 1}}),
            "forced by the localization sequence for pairs in C containing the origin; "
            "note the degree-2 class has twist 0, it is the boundary of BM_1(C*)");
        put("B(2,Torus);Q", M({{2, 0, 1}, {3, 1, 2}, {4, 2, 1}}),
            "same localization sequence with constant coefficients");
        return r;
    }();
    return reg;
}

inline bool formula_table(const CatalogKey& key, GradedTateModule& out)
{
    // Parameterized families handled by a closed formula rather than a stored
    // table.
    const Space& z = key.space;
    int k = key.config_points;
    if (k == 0 && key.system.kind == LocalSystemTag::Kind::Constant) {
        if (z.kind == Space::Kind::Affine) {
            out = GradedTateModule({{2 * z.n, z.n, 1}});
            return true;
        }
        if (z.kind == Space::Kind::Proj) {
            GradedTateModule m;
            for (int i = 0; i <= z.n; ++i)
                m = add(m, GradedTateModule({{2 * i, i, 1}}));
            out = m;
            return true;
        }
    }
    if (key.system.kind == LocalSystemTag::Kind::Sign && k >= 1) {
        if (z.kind == Space::Kind::Affine) {
            out = k >= 2 ? GradedTateModule::zero()
                         : GradedTateModule({{2 * z.n, z.n, 1}});
            return true;
        }
        if (z.kind == Space::Kind::Proj) {
            out = grassmannian_shifted(k, z.n + 1);
            return true;
        }
        if (z.kind == Space::Kind::P1xP1 && k >= 5) {
            out = GradedTateModule::zero();
            return true;
        }
        if (z.kind == Space::Kind::ConeMinusVertex && k >= 3) {
            out = GradedTateModule::zero();
            return true;
        }
        if (z.kind == Space::Kind::Point) {
            out = k == 1 ? GradedTateModule::unit() : GradedTateModule::zero();
            return true;
        }
    }
    if (key.system.kind == LocalSystemTag::Kind::Constant && k >= 1) {
        if (z.kind == Space::Kind::Affine && k == 1) {
            out = GradedTateModule({{2 * z.n, z.n, 1}});
            return true;
        }
        if (z.kind == Space::Kind::Proj && k == 1) {
            GradedTateModule m;
            for (int i = 0; i <= z.n; ++i)
                m = add(m, GradedTateModule({{2 * i, i, 1}}));
            out = m;
            return true;
        }
    }
    return false;
}

inline void check_admissible(const CatalogKey& key)
{
    const auto sys = key.system.kind;
    if (key.config_points == 0) {
        if (sys == LocalSystemTag::Kind::Sign)
            fail(ErrorKind::InadmissibleSystem,
                 "sign system requires an unordered configuration space, got " + key.space.str());
        if (sys == LocalSystemTag::Kind::TorusT && key.space.kind != Space::Kind::Torus)
            fail(ErrorKind::InadmissibleSystem, "system T lives on C* only");
        if (key.system == LocalSystemTag::named("W") &&
            key.space.kind != Space::Kind::TripleNonCollinear)
            fail(ErrorKind::InadmissibleSystem, "system W lives on non-collinear triples only");
        if (key.system == LocalSystemTag::named("R") && key.space.kind != Space::Kind::Psi)
            fail(ErrorKind::InadmissibleSystem, "system R lives on the double-pair space only");
    } else {
        if (sys == LocalSystemTag::Kind::TorusT || sys == LocalSystemTag::Kind::Named)
            fail(ErrorKind::InadmissibleSystem,
                 "B(k,Z) carries the constant or the sign system only");
    }
}

} // namespace detail

/// Authoritative (twisted) Borel-Moore homology of a registered configuration
/// space. Tables are homological, with nonnegative twists.
inline GradedTateModule bm(const CatalogKey& key)
{
    detail::check_admissible(key);
    const auto& reg = detail::registry();
    if (auto it = reg.find(key); it != reg.end())
        return it->second.table;
    GradedTateModule out;
    if (detail::formula_table(key, out))
        return out;
    fail(ErrorKind::UnknownKey, "no catalog entry for " + key.str());
}

inline GradedTateModule bm(const std::string& key_text)
{
    return bm(parse_catalog_key(key_text));
}

/// Provenance note for a stored entry (empty for formula-backed families).
inline std::string catalog_note(const CatalogKey& key)
{
    const auto& reg = detail::registry();
    if (auto it = reg.find(key); it != reg.end())
        return it->second.note;
    return "";
}

/// All stored entries, for the catalog dump command.
inline std::vector<CatalogEntry> catalog_entries()
{
    std::vector<CatalogEntry> out;
    for (const auto& [key, entry] : detail::registry())
        out.push_back(entry);
    return out;
}

} // namespace stratseq
