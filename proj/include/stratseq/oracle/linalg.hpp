#pragma once

#include "stratseq/error.hpp"
#include "stratseq/numeric.hpp"

#include <utility>
#include <vector>

namespace stratseq::oracle {

using IntRow = std::vector<Int>;
using RatRow = std::vector<Rat>;

/// Rank by fraction-free (Bareiss) elimination over the integers. Rows are
/// consumed by value; entries stay integral throughout.
inline int rank_fraction_free(std::vector<IntRow> rows)
{
    if (rows.empty())
        return 0;
    const size_t ncols = rows[0].size();
    size_t r = 0; // next pivot row
    Int prev = 1;
    for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
        size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c] == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[r], rows[pivot]);
        for (size_t i = r + 1; i < rows.size(); ++i) {
            for (size_t j = c + 1; j < ncols; ++j) {
                Int num = rows[i][j] * rows[r][c] - rows[i][c] * rows[r][j];
                mpz_divexact(rows[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            rows[i][c] = 0;
        }
        prev = rows[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

inline int rank_fraction_free(const std::vector<RatRow>& rows)
{
    std::vector<IntRow> cleared;
    cleared.reserve(rows.size());
    for (const auto& row : rows)
        cleared.push_back(integer_row(row));
    return rank_fraction_free(std::move(cleared));
}

/// Plain rational Gauss rank; used as a second route in tests.
inline int rank_rational(std::vector<RatRow> rows)
{
    if (rows.empty())
        return 0;
    const size_t ncols = rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
        size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c] == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[r], rows[pivot]);
        for (size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0)
                continue;
            Rat f = rows[i][c] / rows[r][c];
            for (size_t j = c; j < ncols; ++j)
                rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

/// Exact determinant of a small rational matrix.
inline Rat determinant(std::vector<RatRow> m)
{
    const size_t n = m.size();
    Rat det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t pivot = c;
        while (pivot < n && m[pivot][c] == 0)
            ++pivot;
        if (pivot == n)
            return Rat(0);
        if (pivot != c) {
            std::swap(m[c], m[pivot]);
            det = -det;
        }
        det *= m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0)
                continue;
            Rat f = m[i][c] / m[c][c];
            for (size_t j = c; j < n; ++j)
                m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

/// Basis of the right kernel of a rational matrix (columns = unknowns).
inline std::vector<RatRow> kernel_basis(std::vector<RatRow> m, size_t ncols)
{
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < m.size(); ++c) {
        size_t pivot = r;
        while (pivot < m.size() && m[pivot][c] == 0)
            ++pivot;
        if (pivot == m.size())
            continue;
        std::swap(m[r], m[pivot]);
        Rat lead = m[r][c];
        for (size_t j = 0; j < ncols; ++j)
            m[r][j] /= lead;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rat f = m[i][c];
            for (size_t j = 0; j < ncols; ++j)
                m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (size_t c : pivot_col)
        is_pivot[c] = true;
    std::vector<RatRow> basis;
    for (size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free])
            continue;
        RatRow v(ncols, Rat(0));
        v[free] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i)
            v[pivot_col[i]] = -m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace stratseq::oracle
