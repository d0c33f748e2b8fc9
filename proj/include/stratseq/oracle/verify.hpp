#pragma once

#include "stratseq/oracle/model.hpp"
#include "stratseq/oracle/sample_cone.hpp"
#include "stratseq/oracle/sample_segre.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace stratseq::oracle {

/// Which singular-configuration table to verify: 1 is the quadric surface
/// (bidegree (3,3) forms), 3 is the quadric cone (weighted degree 6).
inline const std::vector<ConfigType>& table_types(int table)
{
    if (table == 1)
        return segre_types();
    if (table == 3)
        return cone_types();
    fail(ErrorKind::UnknownKey, "table must be 1 or 3");
}

inline AmbientModel table_model(int table)
{
    if (table == 1)
        return AmbientModel::segre33();
    if (table == 3)
        return AmbientModel::weighted_sextic();
    fail(ErrorKind::UnknownKey, "table must be 1 or 3");
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t type_index, std::uint64_t sample)
{
    // splitmix64 over the packed tuple keeps every (type, sample) stream
    // independent of the others for any base seed
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (type_index * 1000003ULL + sample + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic sample of the given configuration type.
inline ConfigSample sample_config(int table, const std::string& type_id, std::uint64_t seed)
{
    const auto& types = table_types(table);
    for (size_t i = 0; i < types.size(); ++i)
        if (types[i].id == type_id) {
            Rng rng(mix_seed(seed, i, 0));
            ConfigSample s = types[i].make(rng);
            s.type_id = type_id;
            return s;
        }
    fail(ErrorKind::UnknownKey, "no configuration type '" + type_id + "' in table " +
                                    std::to_string(table));
}

struct TypeReport {
    std::string type_id;
    std::string description;
    int expected_c = 0;
    std::vector<int> ranks;
    bool pass = true;
};

struct TableReport {
    int table = 0;
    std::uint64_t seed = 0;
    int samples_per_type = 0;
    std::vector<TypeReport> rows;
    bool pass = true;
};

/// Sample every type of the table n times and compare the computed rank of
/// the singularity conditions against the expected codimension. Failures are
/// report content, not errors.
inline TableReport verify_table(int table, int samples_per_type, std::uint64_t seed)
{
    const auto& types = table_types(table);
    AmbientModel model = table_model(table);
    TableReport report;
    report.table = table;
    report.seed = seed;
    report.samples_per_type = samples_per_type;
    for (size_t i = 0; i < types.size(); ++i) {
        TypeReport row;
        row.type_id = types[i].id;
        row.description = types[i].description;
        row.expected_c = types[i].expected_codim;
        for (int sample = 0; sample < samples_per_type; ++sample) {
            Rng rng(mix_seed(seed, i, static_cast<std::uint64_t>(sample)));
            ConfigSample s = types[i].make(rng);
            s.type_id = types[i].id;
            int rank = codim(s, model);
            row.ranks.push_back(rank);
            if (rank != row.expected_c)
                row.pass = false;
        }
        report.pass = report.pass && row.pass;
        report.rows.push_back(std::move(row));
    }
    return report;
}

inline nlohmann::json to_json(const TableReport& r)
{
    nlohmann::json j;
    j["table"] = r.table;
    j["seed"] = r.seed;
    j["samples_per_type"] = r.samples_per_type;
    j["pass"] = r.pass;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json e;
        e["type_id"] = row.type_id;
        e["description"] = row.description;
        e["expected_c"] = row.expected_c;
        e["ranks"] = row.ranks;
        e["pass"] = row.pass;
        j["rows"].push_back(e);
    }
    return j;
}

} // namespace stratseq::oracle
