#pragma once

#include "stratseq/catalog.hpp"
#include "stratseq/error.hpp"
#include "stratseq/graded.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace stratseq {

/// How a configuration family sits in the stratification: finitely many
/// points (an (m-1)-simplex bundle over the configuration space), a family
/// whose members contain a curve, or the single whole-space configuration
/// that closes the filtration.
enum class StratumKind { FinitePoints, ContainsCurve, WholeSpace };

/// The vanishing arguments the engine accepts as justification for a zero
/// column. Each maps to a fixed citation line in the audit log.
enum class VanishingRule {
    CurveInConfiguration, // the configuration is a single positive-dimensional curve
    LinePlusPoints,       // a curve together with a fixed finite set of points
    TwoComponentCurve,    // two or more curve components meeting in points
    CollinearOverflow,    // too many points on a rational curve or affine cell
    PairedCollinear,      // two collinear triplets; no anti-invariant classes upstairs
};

inline const char* vanishing_citation(VanishingRule r)
{
    switch (r) {
        case VanishingRule::CurveInConfiguration:
            return "configurations containing a curve: the simplicial fibers are open cones "
                   "over contractible unions and carry no Borel-Moore homology";
        case VanishingRule::LinePlusPoints:
            return "a curve plus finitely many points: the fiberwise projection onto the "
                   "point simplex has cone fibers with trivial Borel-Moore homology";
        case VanishingRule::TwoComponentCurve:
            return "a union of curves meeting in points: the fiber is an open cone over "
                   "two pieces glued along collapsible simplices, each with trivial "
                   "Borel-Moore homology";
        case VanishingRule::CollinearOverflow:
            return "sign-twisted homology of configurations vanishes once a rational curve "
                   "carries more than two of the points (or an affine cell carries two)";
        case VanishingRule::PairedCollinear:
            return "two collinear triplets: the ordered homology has no class anti-invariant "
                   "under both in-triplet transpositions";
    }
    return "";
}

inline const char* to_string(VanishingRule r)
{
    switch (r) {
        case VanishingRule::CurveInConfiguration: return "curve_in_configuration";
        case VanishingRule::LinePlusPoints: return "line_plus_points";
        case VanishingRule::TwoComponentCurve: return "two_component_curve";
        case VanishingRule::CollinearOverflow: return "collinear_overflow";
        case VanishingRule::PairedCollinear: return "paired_collinear";
    }
    return "";
}

inline std::optional<VanishingRule> vanishing_rule_from_string(const std::string& s)
{
    if (s == "curve_in_configuration")
        return VanishingRule::CurveInConfiguration;
    if (s == "line_plus_points")
        return VanishingRule::LinePlusPoints;
    if (s == "two_component_curve")
        return VanishingRule::TwoComponentCurve;
    if (s == "collinear_overflow")
        return VanishingRule::CollinearOverflow;
    if (s == "paired_collinear")
        return VanishingRule::PairedCollinear;
    return std::nullopt;
}

/// Where a stratum's base homology table comes from: a catalog key, an inline
/// table, or a tensor product of other bases (a bundle whose Leray spectral
/// sequence degenerates; the pipeline records that assertion).
struct BaseRef {
    enum class Kind { Catalog, Inline, Tensor };
    Kind kind = Kind::Inline;
    CatalogKey catalog;
    GradedTateModule inline_table;
    std::vector<BaseRef> factors;

    static BaseRef from_catalog(CatalogKey k)
    {
        BaseRef b;
        b.kind = Kind::Catalog;
        b.catalog = std::move(k);
        return b;
    }
    static BaseRef from_table(GradedTateModule t)
    {
        BaseRef b;
        b.kind = Kind::Inline;
        b.inline_table = std::move(t);
        return b;
    }
    static BaseRef from_tensor(std::vector<BaseRef> fs)
    {
        BaseRef b;
        b.kind = Kind::Tensor;
        b.factors = std::move(fs);
        return b;
    }
};

inline GradedTateModule resolve_base(const BaseRef& ref)
{
    switch (ref.kind) {
        case BaseRef::Kind::Catalog: return bm(ref.catalog);
        case BaseRef::Kind::Inline: return ref.inline_table;
        case BaseRef::Kind::Tensor: {
            GradedTateModule out = GradedTateModule::unit();
            for (const auto& f : ref.factors)
                out = bundle(out, resolve_base(f));
            return out;
        }
    }
    fail(ErrorKind::UnresolvedBase, "unreachable");
}

/// One configuration family: a row of a singular-configuration table or one
/// of the named columns of a first-page grid.
struct StratumSpec {
    std::string name;
    StratumKind kind = StratumKind::FinitePoints;
    int m = 1;           // number of points for FinitePoints
    int codim = 1;       // codimension c of the linear conditions in V
    int ambient_dim = 1; // N = dim V
    std::optional<BaseRef> base;
    std::map<DegTwist, int> involution_character; // +1 / -1 tags on contribution classes
    std::optional<VanishingRule> vanish;
    std::string note; // free-text provenance carried into the audit log

    int fiber_rank() const { return ambient_dim - codim; }
};

/// The stratum's first-page column: the table in total Borel-Moore degree of
/// the stratum, and the same table without the vector-bundle shift (used when
/// assembling the base of a final open cone).
struct ColumnContribution {
    std::string stratum;
    GradedTateModule table;
    GradedTateModule simplex_only_table;
};

inline ColumnContribution contribution(const StratumSpec& s)
{
    if (s.kind == StratumKind::WholeSpace)
        fail(ErrorKind::WholeSpaceNotHere,
             "whole-space stratum '" + s.name + "' must go through the open-cone pipeline");
    if (s.codim > s.ambient_dim || s.codim < 1)
        fail(ErrorKind::Inconsistent, "codimension out of range for stratum '" + s.name + "'");

    ColumnContribution out;
    out.stratum = s.name;
    if (s.kind == StratumKind::ContainsCurve)
        return out; // both tables zero

    if (s.m < 1)
        fail(ErrorKind::Inconsistent, "point count must be positive for '" + s.name + "'");
    if (!s.base)
        fail(ErrorKind::UnresolvedBase, "stratum '" + s.name + "' has no base table");
    GradedTateModule base = resolve_base(*s.base);
    const int d = s.fiber_rank();
    out.simplex_only_table = shift(base, s.m - 1, 0);
    out.table = shift(base, (s.m - 1) + 2 * d, d);
    return out;
}

inline nlohmann::json to_json(const StratumSpec& s)
{
    nlohmann::json j;
    j["name"] = s.name;
    j["kind"] = s.kind == StratumKind::FinitePoints
                    ? "points"
                    : (s.kind == StratumKind::ContainsCurve ? "curve" : "whole_space");
    j["m"] = s.m;
    j["codim"] = s.codim;
    j["ambient_dim"] = s.ambient_dim;
    if (s.base) {
        std::function<nlohmann::json(const BaseRef&)> base_json = [&](const BaseRef& b) {
            nlohmann::json jb;
            switch (b.kind) {
                case BaseRef::Kind::Catalog: jb["catalog"] = b.catalog.str(); break;
                case BaseRef::Kind::Inline: jb["inline"] = to_json(b.inline_table); break;
                case BaseRef::Kind::Tensor: {
                    jb["tensor"] = nlohmann::json::array();
                    for (const auto& f : b.factors)
                        jb["tensor"].push_back(base_json(f));
                    break;
                }
            }
            return jb;
        };
        j["base"] = base_json(*s.base);
    }
    if (!s.involution_character.empty()) {
        j["character"] = nlohmann::json::array();
        for (const auto& [key, sign] : s.involution_character)
            j["character"].push_back({key.first, key.second, sign});
    }
    if (s.vanish)
        j["vanish"] = to_string(*s.vanish);
    if (!s.note.empty())
        j["note"] = s.note;
    return j;
}

inline StratumSpec stratum_from_json(const nlohmann::json& j)
{
    StratumSpec s;
    s.name = j.at("name").get<std::string>();
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "points")
        s.kind = StratumKind::FinitePoints;
    else if (kind == "curve")
        s.kind = StratumKind::ContainsCurve;
    else if (kind == "whole_space")
        s.kind = StratumKind::WholeSpace;
    else
        fail(ErrorKind::ParseError, "unknown stratum kind '" + kind + "'");
    if (j.contains("m"))
        s.m = j.at("m").get<int>();
    s.codim = j.at("codim").get<int>();
    s.ambient_dim = j.at("ambient_dim").get<int>();
    if (j.contains("base")) {
        std::function<BaseRef(const nlohmann::json&)> base_of = [&](const nlohmann::json& jb) {
            if (jb.contains("catalog"))
                return BaseRef::from_catalog(
                    parse_catalog_key(jb.at("catalog").get<std::string>()));
            if (jb.contains("inline"))
                return BaseRef::from_table(module_from_json(jb.at("inline")));
            if (jb.contains("tensor")) {
                std::vector<BaseRef> fs;
                for (const auto& f : jb.at("tensor"))
                    fs.push_back(base_of(f));
                return BaseRef::from_tensor(std::move(fs));
            }
            fail(ErrorKind::ParseError, "base must be catalog, inline or tensor");
        };
        s.base = base_of(j.at("base"));
    }
    if (j.contains("character"))
        for (const auto& triple : j.at("character"))
            s.involution_character[{triple[0].get<int>(), triple[1].get<int>()}] =
                triple[2].get<int>();
    if (j.contains("vanish")) {
        auto rule = vanishing_rule_from_string(j.at("vanish").get<std::string>());
        if (!rule)
            fail(ErrorKind::ParseError, "unknown vanishing rule");
        s.vanish = rule;
    }
    if (j.contains("note"))
        s.note = j.at("note").get<std::string>();
    return s;
}

struct VanishingJustification {
    std::string stratum;
    VanishingRule rule;
    std::string citation;
};

/// Produce the audit-log record explaining why a stratum contributes nothing.
inline VanishingJustification vanishing_reason(const StratumSpec& s)
{
    auto made = [&](VanishingRule r) {
        return VanishingJustification{s.name, r, vanishing_citation(r)};
    };
    if (s.vanish) {
        if (*s.vanish == VanishingRule::CollinearOverflow && s.kind == StratumKind::ContainsCurve)
            fail(ErrorKind::NoRuleApplies,
                 "collinear_overflow applies to finite point configurations, not '" + s.name + "'");
        if ((*s.vanish == VanishingRule::CurveInConfiguration ||
             *s.vanish == VanishingRule::LinePlusPoints ||
             *s.vanish == VanishingRule::TwoComponentCurve) &&
            s.kind != StratumKind::ContainsCurve)
            fail(ErrorKind::NoRuleApplies,
                 "curve vanishing rules require a curve-containing stratum, got '" + s.name + "'");
        return made(*s.vanish);
    }
    if (s.kind == StratumKind::ContainsCurve)
        return made(VanishingRule::CurveInConfiguration);
    if (s.kind == StratumKind::FinitePoints && s.base) {
        GradedTateModule b = resolve_base(*s.base);
        if (b.is_zero() && s.base->kind == BaseRef::Kind::Catalog &&
            s.base->catalog.system.kind == LocalSystemTag::Kind::Sign)
            return made(VanishingRule::CollinearOverflow);
    }
    fail(ErrorKind::NoRuleApplies,
         "stratum '" + s.name + "' is not known-trivial; supply a base table or a rule");
}

} // namespace stratseq
