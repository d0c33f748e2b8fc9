#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace stratseq {

/// Arbitrary-precision integer and rational scalars. Multiplicities use Int
/// so that stress tests (large tensor powers) cannot overflow silently.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_from_string(const std::string& s)
{
    return Int(s);
}

inline bool fits_int64(const Int& v)
{
    return v.fits_slong_p() || (sizeof(long) == 8 && v >= Int(INT64_MIN) && v <= Int(INT64_MAX));
}

inline std::int64_t to_int64(const Int& v)
{
    return static_cast<std::int64_t>(v.get_si());
}

/// Divide a vector of integers by their gcd (content). Zero rows stay zero.
inline void strip_content(std::vector<Int>& row)
{
    Int g = 0;
    for (const Int& x : row)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0 || g == 1)
        return;
    for (Int& x : row)
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

/// Clear denominators of a rational row, returning the integer row divided by
/// its content.
inline std::vector<Int> integer_row(const std::vector<Rat>& row)
{
    Int lcm = 1;
    for (const Rat& x : row)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<Int> out;
    out.reserve(row.size());
    for (const Rat& x : row) {
        Int scaled = x.get_num() * (lcm / x.get_den());
        out.push_back(scaled);
    }
    strip_content(out);
    return out;
}

} // namespace stratseq
