#include "stratseq/catalog.hpp"
#include "stratseq/oracle/verify.hpp"
#include "stratseq/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace stratseq;

void print_module(const std::string& label, const GradedTateModule& m, Convention conv)
{
    std::cout << label << ":\n";
    std::string body = render(m, RenderStyle::Text, conv);
    std::istringstream is(body);
    std::string line;
    while (std::getline(is, line))
        std::cout << "  " << line << "\n";
}

int cmd_compute(const std::string& path, bool latex, bool json)
{
    RunResult result = run_file(path);
    if (latex) {
        std::cout << grid_to_latex(result.grid);
        return 0;
    }
    if (json) {
        std::cout << to_json(result).dump(2) << "\n";
        return 0;
    }
    std::cout << "computation: " << result.name << "\n\n";
    std::cout << "first-page grid (rows q = k - p):\n" << grid_to_latex(result.grid) << "\n";
    bool assembly = result.kind == ComputationSpec::Kind::Assembly;
    if (!result.bm_sigma.is_zero() && assembly) {
        std::cout << "compactly supported cohomology of the union:\n";
        std::map<int, std::vector<std::pair<int, Int>>> by_degree;
        for (const auto& c : result.bm_sigma.classes())
            by_degree[c.degree].emplace_back(c.twist, c.mult);
        for (const auto& [degree, twists] : by_degree)
            std::cout << "  Hc^" << degree << " = "
                      << stratseq::detail::twist_group(twists, RenderStyle::Text) << "\n";
    } else if (!result.bm_sigma.is_zero()) {
        print_module("totalized Borel-Moore homology", result.bm_sigma,
                     Convention::Homological);
    }
    if (!result.hx.is_zero())
        print_module("complement cohomology", result.hx, Convention::Cohomological);
    if (!result.quotient.is_zero())
        print_module("quotient cohomology", result.quotient, Convention::Cohomological);
    print_module("final table", result.final_table, Convention::Cohomological);
    return 0;
}

int cmd_audit(const std::string& path)
{
    RunResult result = run_file(path);
    const PipelineAudit& a = result.audit;
    std::cout << "audit trail for " << result.name << "\n\n";
    if (!a.vanishing.empty()) {
        std::cout << "vanishing strata:\n";
        for (const auto& v : a.vanishing)
            std::cout << "  - " << v.stratum << " [" << to_string(v.rule) << "]\n      "
                      << v.citation << "\n";
    }
    auto print_report = [](const char* label, const AuditReport& r) {
        if (r.assertions.empty() && r.suppressed.empty() && r.unhandled.empty())
            return;
        std::cout << label << ":\n";
        for (const auto& as : r.assertions)
            std::cout << "  assertion: " << to_json(as).dump() << "\n";
        for (const auto& s : r.suppressed)
            std::cout << "  suppressed d" << s.candidate.page << ": (p=" << s.candidate.source.p
                      << ",k=" << s.candidate.source.k << ") -> (p=" << s.candidate.target.p
                      << ",k=" << s.candidate.target.k << ") twist " << s.candidate.twist
                      << "\n      by: " << s.justification << "\n";
        for (const auto& c : r.unhandled)
            std::cout << "  UNHANDLED d" << c.page << ": (p=" << c.source.p
                      << ",k=" << c.source.k << ") -> (p=" << c.target.p << ",k=" << c.target.k
                      << ") twist " << c.twist << "\n";
    };
    print_report("cone sub-grid", a.cone_grid);
    print_report("main grid", a.grid);
    if (!a.notes.empty()) {
        std::cout << "imported assumptions and steps:\n";
        for (const auto& n : a.notes)
            std::cout << "  - " << n << "\n";
    }
    return 0;
}

int cmd_catalog(const std::string& key)
{
    if (!key.empty()) {
        CatalogKey k = parse_catalog_key(key);
        nlohmann::json j;
        j["key"] = k.str();
        j["table"] = to_json(bm(k));
        j["note"] = catalog_note(k);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    nlohmann::json j = nlohmann::json::array();
    for (const auto& e : catalog_entries()) {
        nlohmann::json entry;
        entry["key"] = e.key.str();
        entry["table"] = to_json(e.table);
        entry["note"] = e.note;
        j.push_back(entry);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_verify_codim(int table, int samples, std::uint64_t seed, const std::string& json_path)
{
    oracle::TableReport report = oracle::verify_table(table, samples, seed);
    for (const auto& row : report.rows) {
        std::cout << (row.pass ? "PASS" : "FAIL") << " type " << row.type_id << " (expected "
                  << row.expected_c << "): " << row.description << "\n";
        if (!row.pass) {
            std::cout << "     ranks:";
            for (int r : row.ranks)
                std::cout << " " << r;
            std::cout << "\n";
        }
    }
    std::cout << (report.pass ? "PASS" : "FAIL") << " table " << table << " (" << samples
              << " samples per type, seed " << seed << ")\n";
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out)
            fail(ErrorKind::IoError, "cannot write " + json_path);
        out << oracle::to_json(report).dump(2) << "\n";
    }
    return report.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"stratified spectral-sequence engine for discriminant complements"};
    app.require_subcommand(1);

    std::string spec_path;
    bool latex = false, json = false;
    auto* compute = app.add_subcommand("compute", "run a computation spec file");
    compute->add_option("specfile", spec_path, "path to the spec file")->required();
    compute->add_flag("--latex", latex, "emit the first-page grid as LaTeX");
    compute->add_flag("--json", json, "emit the full result bundle as JSON");

    std::string audit_path;
    auto* audit_cmd = app.add_subcommand("audit", "print the audit trail of a spec file");
    audit_cmd->add_option("specfile", audit_path, "path to the spec file")->required();

    std::string catalog_key;
    auto* catalog_cmd = app.add_subcommand("catalog", "dump homology catalog entries");
    catalog_cmd->add_option("key", catalog_key, "single key, e.g. 'B(2,P1xP1);Sign'");

    int table = 1, samples = 5;
    std::uint64_t seed = 42;
    std::string report_json;
    auto* verify = app.add_subcommand("verify-codim", "verify a codimension table by rank");
    verify->add_option("--table", table, "which table: 1 (quadric) or 3 (cone)")->required();
    verify->add_option("--samples", samples, "samples per configuration type");
    verify->add_option("--seed", seed, "base random seed");
    verify->add_option("--json", report_json, "write the JSON report to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compute)
            return cmd_compute(spec_path, latex, json);
        if (*audit_cmd)
            return cmd_audit(audit_path);
        if (*catalog_cmd)
            return cmd_catalog(catalog_key);
        if (*verify)
            return cmd_verify_codim(table, samples, seed, report_json);
    } catch (const stratseq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
