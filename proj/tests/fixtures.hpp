#pragma once

// Frozen expected tables for the two discriminant computations and the
// moduli assembly. Each value was derived once by hand from the stratum
// shift formulas and cross-checked against the published grids; the suites
// compare every pipeline intermediate against these.

#include "stratseq/graded.hpp"

#include <array>
#include <string>
#include <vector>

namespace fixtures {

using stratseq::GradedTateModule;

inline GradedTateModule M(std::initializer_list<std::array<long, 3>> t)
{
    return GradedTateModule::of(t);
}

// --- genus-4 curves on the nonsingular quadric (ambient dimension 16) -----

struct NamedTable {
    std::string name;
    GradedTateModule table;
};

/// E1 columns of the main grid, named A..G.
inline std::vector<NamedTable> c0_columns()
{
    return {
        {"A", M({{26, 13, 1}, {28, 14, 2}, {30, 15, 1}})},
        {"B", M({{23, 11, 2}, {25, 12, 2}, {27, 13, 2}})},
        {"C", M({{20, 9, 1}, {22, 10, 2}, {24, 11, 1}})},
        {"D", M({{19, 8, 1}})},
        {"E", M({{16, 4, 1}, {19, 6, 2}, {22, 8, 1}})},
        {"F", M({{16, 3, 1}, {19, 5, 2}, {22, 7, 1}})},
        {"G", M({{15, 2, 1}, {15, 3, 1}, {18, 4, 2}, {18, 5, 2}, {21, 6, 1}, {21, 7, 1}})},
    };
}

/// Simplex-only (no vector-bundle shift) columns feeding the final cone.
inline std::vector<NamedTable> c0_simplex_columns()
{
    return {
        {"A", M({{0, 0, 1}, {2, 1, 2}, {4, 2, 1}})},
        {"B", M({{3, 1, 2}, {5, 2, 2}, {7, 3, 2}})},
        {"C", M({{6, 2, 1}, {8, 3, 2}, {10, 4, 1}})},
        {"D", M({{11, 4, 1}})},
        {"E", M({{14, 3, 1}, {17, 5, 2}, {20, 7, 1}})},
        {"F", M({{14, 2, 1}, {17, 4, 2}, {20, 6, 1}})},
    };
}

/// Borel-Moore homology of the final open-cone stratum.
inline GradedTateModule c0_cone_table()
{
    return M({{15, 2, 1}, {15, 3, 1}, {18, 4, 2}, {18, 5, 2}, {21, 6, 1}, {21, 7, 1}});
}

inline GradedTateModule c0_bm_sigma()
{
    GradedTateModule out;
    for (const auto& c : c0_columns())
        out = add(out, c.table);
    return out;
}

/// Cohomology of the space of nonsingular bidegree-(3,3) forms.
inline GradedTateModule c0_hx()
{
    return M({{0, 0, 1},   {1, -1, 1},  {3, -2, 2},  {4, -3, 2},  {5, -3, 1},  {6, -4, 2},
              {7, -5, 1},  {8, -5, 2},  {9, -6, 2},  {9, -8, 1},  {9, -9, 1},  {10, -9, 1},
              {10, -10, 1}, {11, -7, 1}, {12, -8, 1}, {12, -10, 2}, {12, -11, 2}, {13, -11, 2},
              {13, -12, 2}, {15, -12, 1}, {15, -13, 1}, {16, -13, 1}, {16, -14, 1}});
}

inline GradedTateModule c0_quotient()
{
    return M({{0, 0, 1}, {5, -3, 1}, {9, -8, 1}, {9, -9, 1}});
}

inline GradedTateModule c0_final()
{
    return M({{0, 0, 1}, {5, -3, 1}});
}

// --- genus-4 curves on the quadric cone (ambient dimension 16) ------------

inline std::vector<NamedTable> c1_columns()
{
    return {
        {"A", M({{30, 15, 1}})},
        {"B", M({{28, 14, 1}, {30, 15, 1}})},
        {"C", M({{27, 13, 1}, {29, 14, 1}})},
        {"D", M({{27, 13, 1}})},
        {"E", M({{26, 12, 1}})},
    };
}

inline GradedTateModule c1_bm_sigma()
{
    return M({{26, 12, 1}, {27, 13, 2}, {28, 14, 1}, {29, 14, 1}, {30, 15, 2}});
}

inline GradedTateModule c1_hx()
{
    return M({{0, 0, 1}, {1, -1, 2}, {2, -2, 1}, {3, -2, 1}, {4, -3, 2}, {5, -4, 1}});
}

// --- assembly over the three-step filtration -------------------------------

inline GradedTateModule m4_cohomology()
{
    return M({{0, 0, 1}, {2, -1, 1}, {4, -2, 1}, {5, -3, 1}});
}

inline GradedTateModule hyperelliptic_hx()
{
    return M({{0, 0, 1}, {1, -1, 1}, {3, -2, 1}, {4, -3, 1}});
}

} // namespace fixtures
