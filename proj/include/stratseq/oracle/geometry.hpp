#pragma once

#include "stratseq/error.hpp"
#include "stratseq/numeric.hpp"
#include "stratseq/oracle/linalg.hpp"

#include <random>
#include <set>
#include <vector>

namespace stratseq::oracle {

using Rng = std::mt19937_64;

constexpr int kMaxRetries = 400;

/// Small-height rational draws: integers in [-9, 9].
inline Rat draw(Rng& rng)
{
    std::uniform_int_distribution<int> d(-9, 9);
    return Rat(d(rng));
}

inline Rat draw_nonzero(Rng& rng)
{
    for (int i = 0; i < kMaxRetries; ++i) {
        Rat v = draw(rng);
        if (v != 0)
            return v;
    }
    fail(ErrorKind::SamplingExhausted, "nonzero draw");
}

/// A value distinct from everything drawn before under the same tag.
inline Rat fresh(Rng& rng, std::set<Rat>& used)
{
    for (int i = 0; i < kMaxRetries; ++i) {
        Rat v = draw(rng);
        if (used.insert(v).second)
            return v;
    }
    fail(ErrorKind::SamplingExhausted, "ran out of fresh small rationals");
}

// --------------------------------------------------------------------------
// The nonsingular quadric surface: points are pairs of P^1 points
// (a0, a1, b0, b1), normalized with first nonzero coordinate 1 in each factor.
// --------------------------------------------------------------------------

struct P1Pt {
    Rat u0, u1;
    friend bool operator==(const P1Pt& a, const P1Pt& b)
    {
        return a.u0 * b.u1 == a.u1 * b.u0;
    }
};

inline P1Pt p1_of(const Rat& t) { return {Rat(1), t}; }
inline P1Pt p1_infinity() { return {Rat(0), Rat(1)}; }

inline P1Pt p1_normalize(Rat u0, Rat u1)
{
    if (u0 != 0)
        return {Rat(1), u1 / u0};
    if (u1 == 0)
        fail(ErrorKind::InvalidSample, "zero vector is not a point of P1");
    return {Rat(0), Rat(1)};
}

inline std::vector<Rat> segre_point(const P1Pt& x, const P1Pt& y)
{
    return {x.u0, x.u1, y.u0, y.u1};
}

/// A bidegree-(1,1) form q(x, y) = sum c[i][j] x_i y_j; its zero locus is a
/// plane section of the quadric surface, irreducible iff det c != 0.
struct SegreConic {
    Rat c[2][2];

    Rat eval(const P1Pt& x, const P1Pt& y) const
    {
        Rat xs[2] = {x.u0, x.u1};
        Rat ys[2] = {y.u0, y.u1};
        Rat v = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                v += c[i][j] * xs[i] * ys[j];
        return v;
    }

    Rat det() const { return c[0][0] * c[1][1] - c[0][1] * c[1][0]; }

    /// The unique conic point over a given first-factor coordinate.
    P1Pt y_at(const P1Pt& x) const
    {
        Rat u0 = c[0][0] * x.u0 + c[1][0] * x.u1;
        Rat u1 = c[0][1] * x.u0 + c[1][1] * x.u1;
        return p1_normalize(u1, -u0);
    }

    /// The unique conic point over a given second-factor coordinate.
    P1Pt x_at(const P1Pt& y) const
    {
        Rat v0 = c[0][0] * y.u0 + c[0][1] * y.u1;
        Rat v1 = c[1][0] * y.u0 + c[1][1] * y.u1;
        return p1_normalize(v1, -v0);
    }

    std::vector<Rat> point_at_param(const P1Pt& x) const
    {
        P1Pt y = y_at(x);
        return segre_point(x, y);
    }
};

inline SegreConic random_nonsingular_conic(Rng& rng)
{
    for (int i = 0; i < kMaxRetries; ++i) {
        SegreConic q{{{draw(rng), draw(rng)}, {draw(rng), draw(rng)}}};
        if (q.det() != 0)
            return q;
    }
    fail(ErrorKind::SamplingExhausted, "nonsingular conic");
}

/// A nonsingular conic through the given points (each a (1,1) evaluation
/// constraint). Retries combinations from the constraint kernel until the
/// determinant is nonzero.
inline SegreConic conic_through(Rng& rng, const std::vector<std::vector<Rat>>& pts)
{
    std::vector<RatRow> rows;
    for (const auto& p : pts)
        rows.push_back({p[0] * p[2], p[0] * p[3], p[1] * p[2], p[1] * p[3]});
    auto basis = kernel_basis(rows, 4);
    if (basis.empty())
        fail(ErrorKind::SamplingExhausted, "no conic satisfies the constraints");
    for (int i = 0; i < kMaxRetries; ++i) {
        RatRow v(4, Rat(0));
        for (const auto& b : basis) {
            Rat k = draw(rng);
            for (int j = 0; j < 4; ++j)
                v[j] += k * b[j];
        }
        SegreConic q{{{v[0], v[1]}, {v[2], v[3]}}};
        if (q.det() != 0)
            return q;
    }
    fail(ErrorKind::SamplingExhausted, "nonsingular conic through constraints");
}

/// Homogeneous binary form of degree d, coefficients of x0^(d-i) x1^i.
struct BinForm {
    std::vector<Rat> c;

    Rat eval(const P1Pt& x) const
    {
        Rat v = 0;
        int d = static_cast<int>(c.size()) - 1;
        for (int i = 0; i <= d; ++i) {
            Rat term = c[i];
            for (int t = 0; t < d - i; ++t)
                term *= x.u0;
            for (int t = 0; t < i; ++t)
                term *= x.u1;
            v += term;
        }
        return v;
    }
};

/// Resultant of two binary quadratics (Sylvester determinant); nonzero iff
/// they share no root.
inline Rat resultant_quadratics(const BinForm& a, const BinForm& b)
{
    std::vector<RatRow> m = {
        {a.c[0], a.c[1], a.c[2], Rat(0)},
        {Rat(0), a.c[0], a.c[1], a.c[2]},
        {b.c[0], b.c[1], b.c[2], Rat(0)},
        {Rat(0), b.c[0], b.c[1], b.c[2]},
    };
    return determinant(m);
}

// --------------------------------------------------------------------------
// The quadric cone P(1,1,2): points [x : y : z], deg z = 2, normalized so the
// first nonzero of (x, y) is 1; the vertex [0:0:1] is handled separately.
// --------------------------------------------------------------------------

inline std::vector<Rat> cone_point(const P1Pt& ratio, const Rat& z)
{
    // normalization: scaling lambda rescales z by lambda^2; ratio is stored
    // normalized already
    return {ratio.u0, ratio.u1, z};
}

inline P1Pt cone_ratio(const std::vector<Rat>& p)
{
    return p1_normalize(p[0], p[1]);
}

/// A weighted-degree-2 form a x^2 + b xy + c y^2 + d z. Its zero locus is a
/// plane section of the cone; it misses the vertex (and is nonsingular) iff
/// d != 0.
struct ConeConic {
    Rat a, b, c, d;

    Rat eval(const std::vector<Rat>& p) const
    {
        return a * p[0] * p[0] + b * p[0] * p[1] + c * p[1] * p[1] + d * p[2];
    }

    std::vector<Rat> point_at(const P1Pt& t) const
    {
        Rat q2 = a * t.u0 * t.u0 + b * t.u0 * t.u1 + c * t.u1 * t.u1;
        return cone_point(t, -q2 / d);
    }
};

inline ConeConic random_cone_conic(Rng& rng)
{
    return ConeConic{draw(rng), draw(rng), draw(rng), draw_nonzero(rng)};
}

/// Two independent conics through two chosen cone points, neither through
/// the vertex.
inline std::pair<ConeConic, ConeConic> cone_conics_through(Rng& rng,
                                                           const std::vector<Rat>& p,
                                                           const std::vector<Rat>& q)
{
    std::vector<RatRow> rows = {
        {p[0] * p[0], p[0] * p[1], p[1] * p[1], p[2]},
        {q[0] * q[0], q[0] * q[1], q[1] * q[1], q[2]},
    };
    auto basis = kernel_basis(rows, 4);
    if (basis.size() < 2)
        fail(ErrorKind::SamplingExhausted, "conic pencil through two points is degenerate");
    for (int i = 0; i < kMaxRetries; ++i) {
        Rat k1 = draw(rng), k2 = draw(rng), l1 = draw(rng), l2 = draw(rng);
        RatRow u(4, Rat(0)), v(4, Rat(0));
        for (int j = 0; j < 4; ++j) {
            u[j] = k1 * basis[0][j] + k2 * basis[1][j];
            v[j] = l1 * basis[0][j] + l2 * basis[1][j];
        }
        if (u[3] == 0 || v[3] == 0)
            continue;
        if (k1 * l2 - k2 * l1 == 0)
            continue;
        return {ConeConic{u[0], u[1], u[2], u[3]}, ConeConic{v[0], v[1], v[2], v[3]}};
    }
    fail(ErrorKind::SamplingExhausted, "independent conics through two points");
}

} // namespace stratseq::oracle
