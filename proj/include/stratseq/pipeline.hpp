#pragma once

#include "stratseq/duality.hpp"
#include "stratseq/quotient.hpp"
#include "stratseq/specseq.hpp"
#include "stratseq/strata.hpp"
#include "stratseq/tomlmini.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace stratseq {

/// Post-totalization steps of a discriminant computation, in the fixed order
/// Alexander duality, group division, involution pruning.
struct PostProcess {
    bool alexander = false;
    std::optional<GroupKey> divide;
    bool prune = false;
    std::map<DegTwist, int> characters;
};

struct ConeSpec {
    std::vector<int> exact_rows;
    std::string justification;
};

/// A stratum entry of a spec file: contributing strata carry a column label,
/// the rest must vanish with a recorded justification.
struct StratumEntry {
    StratumSpec stratum;
    std::optional<std::string> column;
};

/// One stratum of a moduli assembly: a space of known dimension whose
/// cohomology is computed by a nested spec file or taken from a fixture.
struct AssemblyStratum {
    std::string name;
    int dim = 0;
    std::optional<std::string> spec_path; // relative to the assembly file
    std::optional<GradedTateModule> fixture;
};

struct ComputationSpec {
    std::string name;
    enum class Kind { Discriminant, Assembly } kind = Kind::Discriminant;
    int ambient_dim = 1;

    // discriminant computation
    std::vector<StratumEntry> strata;
    std::optional<ConeSpec> cone;
    std::vector<Assertion> assertions;
    PostProcess post;

    // moduli assembly, ordered from most closed to most open stratum
    std::vector<AssemblyStratum> pieces;
    bool use_fixtures = false;
    std::filesystem::path base_dir;
};

struct PipelineAudit {
    std::vector<VanishingJustification> vanishing;
    std::vector<std::string> notes;
    AuditReport cone_grid;
    AuditReport grid;
};

struct RunResult {
    std::string name;
    ComputationSpec::Kind kind = ComputationSpec::Kind::Discriminant;
    SSGrid cone_subgrid; // empty when no cone column
    SSGrid grid;
    GradedTateModule bm_sigma; // assemblies: compact-support cohomology of the union
    GradedTateModule hx;
    GradedTateModule quotient;
    GradedTateModule final_table;
    PipelineAudit audit;
};

// ---------------------------------------------------------------------------
// Spec-file loading
// ---------------------------------------------------------------------------

namespace detail {

inline GradedTateModule table_from_toml(const toml::Value& arr)
{
    std::vector<WeightedClass> classes;
    for (const auto& entry : arr.as_array()) {
        const auto& triple = entry.as_array();
        if (triple.size() != 3)
            fail(ErrorKind::ParseError, "inline tables use [degree, twist, mult] triples");
        classes.push_back(WeightedClass{static_cast<int>(triple[0].as_int()),
                                        static_cast<int>(triple[1].as_int()),
                                        Int(static_cast<long>(triple[2].as_int()))});
    }
    return GradedTateModule(std::move(classes));
}

inline std::map<DegTwist, int> characters_from_toml(const toml::Value& arr)
{
    std::map<DegTwist, int> chars;
    for (const auto& entry : arr.as_array()) {
        const auto& triple = entry.as_array();
        if (triple.size() != 3)
            fail(ErrorKind::ParseError, "characters use [degree, twist, sign] triples");
        chars[{static_cast<int>(triple[0].as_int()), static_cast<int>(triple[1].as_int())}] =
            static_cast<int>(triple[2].as_int());
    }
    return chars;
}

inline StratumEntry stratum_from_toml(const toml::Value& t, int ambient_dim)
{
    StratumEntry entry;
    StratumSpec& s = entry.stratum;
    s.name = t.at("name").as_string();
    s.ambient_dim = ambient_dim;
    s.codim = static_cast<int>(t.at("codim").as_int());
    std::string kind = t.at("kind").as_string();
    if (kind == "points") {
        s.kind = StratumKind::FinitePoints;
        s.m = static_cast<int>(t.at("m").as_int());
    } else if (kind == "curve") {
        s.kind = StratumKind::ContainsCurve;
    } else if (kind == "whole_space") {
        s.kind = StratumKind::WholeSpace;
    } else {
        fail(ErrorKind::ParseError, "stratum kind must be points|curve|whole_space");
    }
    if (t.has("base_catalog"))
        s.base = BaseRef::from_catalog(parse_catalog_key(t.at("base_catalog").as_string()));
    else if (t.has("base_inline"))
        s.base = BaseRef::from_table(table_from_toml(t.at("base_inline")));
    else if (t.has("base_tensor")) {
        std::vector<BaseRef> factors;
        for (const auto& key : t.at("base_tensor").as_array())
            factors.push_back(BaseRef::from_catalog(parse_catalog_key(key.as_string())));
        s.base = BaseRef::from_tensor(std::move(factors));
    }
    if (t.has("character"))
        s.involution_character = characters_from_toml(t.at("character"));
    if (t.has("vanish")) {
        auto rule = vanishing_rule_from_string(t.at("vanish").as_string());
        if (!rule)
            fail(ErrorKind::ParseError,
                 "unknown vanishing rule '" + t.at("vanish").as_string() + "'");
        s.vanish = rule;
    }
    if (t.has("note"))
        s.note = t.at("note").as_string();
    if (t.has("column"))
        entry.column = t.at("column").as_string();
    return entry;
}

inline Assertion assertion_from_toml(const toml::Value& t)
{
    std::string kind = t.at("kind").as_string();
    std::string why = t.at("justification").as_string();
    if (kind == "exact_rows") {
        std::vector<int> rows;
        for (const auto& r : t.at("rows").as_array())
            rows.push_back(static_cast<int>(r.as_int()));
        return Assertion::exact_rows(std::move(rows), why);
    }
    if (kind == "degenerates_at_page")
        return Assertion::degenerates(static_cast<int>(t.at("page").as_int()), why);
    if (kind == "zero_differential") {
        const auto& src = t.at("source").as_array();
        const auto& tgt = t.at("target").as_array();
        return Assertion::zero_differential(
            {static_cast<int>(src[0].as_int()), static_cast<int>(src[1].as_int())},
            {static_cast<int>(tgt[0].as_int()), static_cast<int>(tgt[1].as_int())}, why);
    }
    fail(ErrorKind::ParseError, "unknown assertion kind '" + kind + "'");
}

} // namespace detail

inline ComputationSpec load_spec(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::IoError, "cannot open spec file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    toml::Value root = toml::parse(buffer.str());

    ComputationSpec spec;
    spec.base_dir = path.parent_path();
    spec.name = root.at("name").as_string();
    std::string kind = root.has("kind") ? root.at("kind").as_string() : "discriminant";
    spec.ambient_dim = static_cast<int>(root.at("ambient_dim").as_int());

    if (kind == "assembly") {
        spec.kind = ComputationSpec::Kind::Assembly;
        if (root.has("use_fixtures"))
            spec.use_fixtures = root.at("use_fixtures").as_bool();
        for (const auto& t : root.at("strata").as_array()) {
            AssemblyStratum piece;
            piece.name = t.at("name").as_string();
            piece.dim = static_cast<int>(t.at("dim").as_int());
            if (t.has("spec"))
                piece.spec_path = t.at("spec").as_string();
            if (t.has("fixture"))
                piece.fixture = detail::table_from_toml(t.at("fixture"));
            if (t.has("cohomology"))
                piece.fixture = detail::table_from_toml(t.at("cohomology"));
            spec.pieces.push_back(std::move(piece));
        }
        return spec;
    }
    if (kind != "discriminant")
        fail(ErrorKind::ParseError, "spec kind must be discriminant or assembly");

    for (const auto& t : root.at("strata").as_array())
        spec.strata.push_back(detail::stratum_from_toml(t, spec.ambient_dim));
    if (root.has("cone")) {
        ConeSpec cone;
        for (const auto& r : root.at("cone").at("exact_rows").as_array())
            cone.exact_rows.push_back(static_cast<int>(r.as_int()));
        cone.justification = root.at("cone").at("justification").as_string();
        spec.cone = std::move(cone);
    }
    if (root.has("assertions"))
        for (const auto& t : root.at("assertions").as_array())
            spec.assertions.push_back(detail::assertion_from_toml(t));
    if (root.has("postprocess")) {
        const auto& p = root.at("postprocess");
        if (p.has("alexander"))
            spec.post.alexander = p.at("alexander").as_bool();
        if (p.has("divide"))
            spec.post.divide = group_from_string(p.at("divide").as_string());
        if (p.has("characters")) {
            spec.post.prune = true;
            spec.post.characters = detail::characters_from_toml(p.at("characters"));
        }
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

inline RunResult run(const ComputationSpec& spec);

namespace detail {

inline RunResult run_discriminant(const ComputationSpec& spec)
{
    RunResult out;
    out.name = spec.name;
    const int N = spec.ambient_dim;

    std::vector<ColumnContribution> columns;
    std::vector<std::string> column_labels;
    std::optional<StratumSpec> cone_stratum;
    std::string cone_label;

    for (const auto& entry : spec.strata) {
        const StratumSpec& s = entry.stratum;
        if (entry.column && s.kind == StratumKind::WholeSpace) {
            if (!spec.cone)
                fail(ErrorKind::WholeSpaceNotHere,
                     "whole-space column requires a [cone] section");
            if (cone_stratum)
                fail(ErrorKind::Inconsistent, "only one whole-space column is allowed");
            cone_stratum = s;
            cone_label = *entry.column;
            continue;
        }
        if (entry.column) {
            ColumnContribution c = contribution(s);
            c.stratum = *entry.column;
            if (s.base && s.base->kind == BaseRef::Kind::Tensor)
                out.audit.notes.push_back(
                    "stratum '" + s.name +
                    "': product base assumes the Leray spectral sequence of the bundle "
                    "degenerates");
            for (const auto& [key, sign] : s.involution_character)
                out.audit.notes.push_back(
                    "stratum '" + s.name + "': class (degree " + std::to_string(key.first) +
                    ", twist " + std::to_string(key.second) + ") carries involution sign " +
                    (sign < 0 ? "-1" : "+1"));
            columns.push_back(std::move(c));
            column_labels.push_back(*entry.column);
            continue;
        }
        // non-column strata must be certifiably trivial
        if (s.kind == StratumKind::FinitePoints && s.base) {
            if (!resolve_base(*s.base).is_zero())
                fail(ErrorKind::Inconsistent,
                     "stratum '" + s.name + "' has homology but no grid column");
        }
        if (s.kind == StratumKind::FinitePoints && s.base && !s.vanish &&
            s.base->kind == BaseRef::Kind::Inline) {
            // vanishing supplied as data: keep the free-text note in the audit
            out.audit.notes.push_back("stratum '" + s.name + "' vanishes: " +
                                      (s.note.empty() ? "table supplied as zero" : s.note));
            continue;
        }
        out.audit.vanishing.push_back(vanishing_reason(s));
    }

    if (cone_stratum) {
        // base of the final open cone: totalize the simplex-only sub-grid
        std::vector<ColumnContribution> sub;
        for (size_t i = 0; i < columns.size(); ++i)
            sub.push_back({column_labels[i], columns[i].simplex_only_table,
                           columns[i].simplex_only_table});
        SSGrid subgrid(std::move(sub), N, std::nullopt);
        subgrid = assert_and_check(
            subgrid, Assertion::exact_rows(spec.cone->exact_rows, spec.cone->justification));
        GradedTateModule base = totalize(subgrid);
        out.cone_subgrid = subgrid;
        out.audit.cone_grid = audit(subgrid);

        GradedTateModule cone_table = cone_open(base);
        const int d = cone_stratum->fiber_rank();
        ColumnContribution c;
        c.stratum = cone_label;
        c.simplex_only_table = cone_table;
        c.table = shift(cone_table, 2 * d, d);
        columns.push_back(std::move(c));
    }

    SSGrid grid(std::move(columns), N, N - 1);
    for (const auto& a : spec.assertions)
        grid = assert_and_check(grid, a);
    out.grid = grid;
    out.audit.grid = audit(grid);
    out.bm_sigma = totalize(grid);

    GradedTateModule current = out.bm_sigma;
    if (spec.post.alexander) {
        current = alexander(current, N);
        out.hx = current;
        out.audit.notes.push_back("Alexander duality applied with ambient dimension " +
                                  std::to_string(N));
    }
    if (spec.post.divide) {
        current = leray_hirsch_divide(current, group_cohomology(*spec.post.divide));
        out.quotient = current;
        out.audit.notes.push_back(std::string("division by the cohomology of ") +
                                  to_string(*spec.post.divide));
    }
    if (spec.post.prune) {
        current = invariant_part(current, spec.post.characters);
        out.audit.notes.push_back("involution-invariant part taken with supplied characters");
    }
    out.final_table = current;
    return out;
}

inline RunResult run_assembly(const ComputationSpec& spec)
{
    RunResult out;
    out.name = spec.name;
    out.kind = ComputationSpec::Kind::Assembly;
    const int total_dim = spec.ambient_dim;

    // resolve each stratum's cohomology table
    std::vector<std::pair<AssemblyStratum, GradedTateModule>> resolved;
    for (const auto& piece : spec.pieces) {
        GradedTateModule h;
        if (piece.spec_path && !spec.use_fixtures) {
            ComputationSpec inner = load_spec(spec.base_dir / *piece.spec_path);
            h = run(inner).final_table;
            out.audit.notes.push_back("stratum '" + piece.name + "' computed from " +
                                      *piece.spec_path);
        } else if (piece.fixture) {
            h = *piece.fixture;
            out.audit.notes.push_back("stratum '" + piece.name + "' taken from fixture");
        } else {
            fail(ErrorKind::UnresolvedBase,
                 "assembly stratum '" + piece.name + "' has neither spec nor fixture");
        }
        resolved.emplace_back(piece, std::move(h));
    }

    // compactly supported cohomology of each stratum, most open first; class
    // in H_c^j sits at total degree K - j so differentials drop the degree
    const int K = 4 * total_dim + 4;
    std::vector<ColumnContribution> columns;
    for (auto it = resolved.rbegin(); it != resolved.rend(); ++it) {
        const auto& [piece, h] = *it;
        GradedTateModule hc = poincare_flip(h, piece.dim);
        out.audit.notes.push_back("stratum '" + piece.name +
                                  "' assumed rationally smooth of dimension " +
                                  std::to_string(piece.dim) + " for the compact-support flip");
        GradedTateModule cells;
        for (const auto& f : hc.classes())
            cells = add(cells, GradedTateModule({{K - f.degree, f.twist, f.mult}}));
        columns.push_back({piece.name, cells, GradedTateModule::zero()});
    }

    SSGrid grid(std::move(columns), total_dim, std::nullopt);
    out.grid = grid;
    out.audit.grid = audit(grid);
    if (!out.audit.grid.unhandled.empty()) {
        const auto& c = out.audit.grid.unhandled.front();
        std::ostringstream os;
        os << "twist filtering does not force degeneration: candidate E(p=" << c.source.p
           << ",k=" << c.source.k << ") -> E(p=" << c.target.p << ",k=" << c.target.k << ")";
        fail(ErrorKind::UnexpectedDifferential, os.str());
    }
    GradedTateModule hc_total_k = totalize(grid);

    GradedTateModule hc_total;
    for (const auto& c : hc_total_k.classes())
        hc_total = add(hc_total, GradedTateModule({{K - c.degree, c.twist, c.mult}}));
    out.bm_sigma = hc_total; // compactly supported cohomology of the union
    out.final_table = poincare_flip(hc_total, total_dim);
    out.audit.notes.push_back(
        "total space flipped back assuming rational smoothness of dimension " +
        std::to_string(total_dim));
    return out;
}

} // namespace detail

inline RunResult run(const ComputationSpec& spec)
{
    if (spec.kind == ComputationSpec::Kind::Assembly)
        return detail::run_assembly(spec);
    return detail::run_discriminant(spec);
}

inline RunResult run_file(const std::filesystem::path& path)
{
    return run(load_spec(path));
}

// ---------------------------------------------------------------------------
// Result serialization
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const PipelineAudit& a)
{
    nlohmann::json j;
    j["vanishing"] = nlohmann::json::array();
    for (const auto& v : a.vanishing)
        j["vanishing"].push_back({{"stratum", v.stratum},
                                  {"rule", to_string(v.rule)},
                                  {"citation", v.citation}});
    j["notes"] = a.notes;
    auto report_json = [](const AuditReport& r) {
        nlohmann::json jr;
        jr["assertions"] = nlohmann::json::array();
        for (const auto& as : r.assertions)
            jr["assertions"].push_back(to_json(as));
        jr["suppressed"] = nlohmann::json::array();
        for (const auto& s : r.suppressed)
            jr["suppressed"].push_back(
                {{"source", {{"p", s.candidate.source.p}, {"k", s.candidate.source.k}}},
                 {"target", {{"p", s.candidate.target.p}, {"k", s.candidate.target.k}}},
                 {"twist", s.candidate.twist},
                 {"page", s.candidate.page},
                 {"justification", s.justification}});
        jr["unhandled"] = nlohmann::json::array();
        for (const auto& c : r.unhandled)
            jr["unhandled"].push_back({{"source", {{"p", c.source.p}, {"k", c.source.k}}},
                                       {"target", {{"p", c.target.p}, {"k", c.target.k}}},
                                       {"twist", c.twist},
                                       {"page", c.page}});
        return jr;
    };
    j["cone_grid"] = report_json(a.cone_grid);
    j["grid"] = report_json(a.grid);
    return j;
}

inline nlohmann::json to_json(const RunResult& r)
{
    nlohmann::json j;
    j["name"] = r.name;
    j["grid"] = to_json(r.grid);
    j["bm_sigma"] = to_json(r.bm_sigma);
    j["hx"] = to_json(r.hx);
    j["quotient"] = to_json(r.quotient);
    j["final"] = to_json(r.final_table);
    j["audit"] = to_json(r.audit);
    return j;
}

} // namespace stratseq
