#pragma once

#include "stratseq/error.hpp"
#include "stratseq/numeric.hpp"
#include "stratseq/oracle/linalg.hpp"

#include <array>
#include <string>
#include <vector>

namespace stratseq::oracle {

/// The two 16-dimensional ambient spaces whose discriminants the engine
/// studies: bihomogeneous forms of bidegree (3,3) on the quadric surface, and
/// weighted-degree-6 forms on the quadric cone (deg z = 2).
enum class AmbientKind { SegreBidegree33, WeightedSextic };

struct Monomial {
    std::array<int, 4> exps{}; // Segre: (x0, x1, y0, y1); Weighted: (x, y, z, unused)
};

struct AmbientModel {
    AmbientKind kind;
    int nvars;                      // 4 or 3
    std::vector<Monomial> basis;    // fixed documented order, 16 entries
    int vertex_row_index = -1;      // weighted: index of the z^3 monomial

    static AmbientModel segre33()
    {
        AmbientModel m;
        m.kind = AmbientKind::SegreBidegree33;
        m.nvars = 4;
        // x0^(3-i) x1^i y0^(3-j) y1^j, index 4*i + j
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; j <= 3; ++j)
                m.basis.push_back(Monomial{{3 - i, i, 3 - j, j}});
        return m;
    }

    static AmbientModel weighted_sextic()
    {
        AmbientModel m;
        m.kind = AmbientKind::WeightedSextic;
        m.nvars = 3;
        // x^a y^b z^c with a + b + 2c = 6; c outermost, then a descending
        for (int c = 0; c <= 3; ++c)
            for (int a = 6 - 2 * c; a >= 0; --a) {
                int b = 6 - 2 * c - a;
                if (static_cast<int>(m.basis.size()) < 16)
                    m.basis.push_back(Monomial{{a, b, c, 0}});
                if (a == 0 && b == 0 && c == 3)
                    m.vertex_row_index = static_cast<int>(m.basis.size()) - 1;
            }
        return m;
    }

    int dim() const { return static_cast<int>(basis.size()); }

    /// Row of the evaluation of d(monomial)/d(var) at the point.
    RatRow partial_row(int var, const std::vector<Rat>& point) const
    {
        RatRow row(basis.size(), Rat(0));
        for (size_t m = 0; m < basis.size(); ++m) {
            int e = basis[m].exps[var];
            if (e == 0)
                continue;
            Rat v = e;
            for (int w = 0; w < nvars; ++w) {
                int p = basis[m].exps[w] - (w == var ? 1 : 0);
                for (int t = 0; t < p; ++t)
                    v *= point[w];
            }
            row[m] = v;
        }
        return row;
    }

    /// The single linear condition cutting out curves through the cone
    /// vertex: the coefficient of z^3.
    RatRow vertex_row() const
    {
        if (kind != AmbientKind::WeightedSextic)
            fail(ErrorKind::InvalidSample, "vertex conditions only exist on the cone");
        RatRow row(basis.size(), Rat(0));
        row[vertex_row_index] = 1;
        return row;
    }

    /// All singularity conditions a point imposes: the partials with respect
    /// to every variable. By the Euler relations the block has rank at most
    /// 3 in both models; that bound is asserted by the caller.
    std::vector<RatRow> point_block(const std::vector<Rat>& point) const
    {
        std::vector<RatRow> rows;
        for (int v = 0; v < nvars; ++v)
            rows.push_back(partial_row(v, point));
        return rows;
    }
};

/// A sampled curve component: a deterministic list of exact points on it.
/// Curves through the cone vertex additionally impose the vertex condition.
struct CurveSample {
    std::string what;
    bool through_vertex = false;
    std::vector<std::vector<Rat>> samples;
};

/// One exact configuration of a given singularity type.
struct ConfigSample {
    std::string type_id;
    std::vector<std::vector<Rat>> points; // non-vertex point coordinates
    bool has_vertex = false;              // weighted model only
    std::vector<CurveSample> curves;
};

namespace detail {

inline bool same_projective_point(const std::vector<Rat>& a, const std::vector<Rat>& b,
                                  AmbientKind kind)
{
    if (kind == AmbientKind::SegreBidegree33) {
        // pairs of P1 points
        bool x_eq = a[0] * b[1] == a[1] * b[0];
        bool y_eq = a[2] * b[3] == a[3] * b[2];
        return x_eq && y_eq;
    }
    // weighted [x:y:z], z of weight two: equal iff ratios agree and z scales
    // by the square; points are stored normalized, so compare directly
    return a == b;
}

} // namespace detail

/// Stack the singularity conditions of a configuration into one matrix, with
/// `per_curve` sample points per curve component.
inline std::vector<RatRow> condition_matrix(const ConfigSample& s, const AmbientModel& m,
                                            int per_curve)
{
    for (size_t i = 0; i < s.points.size(); ++i) {
        if (static_cast<int>(s.points[i].size()) != m.nvars)
            fail(ErrorKind::InvalidSample, "point arity does not match the model");
        bool zero = true;
        for (const Rat& c : s.points[i])
            if (c != 0)
                zero = false;
        if (zero)
            fail(ErrorKind::InvalidSample, "zero coordinate vector");
        if (m.kind == AmbientKind::WeightedSextic && s.points[i][0] == 0 && s.points[i][1] == 0)
            fail(ErrorKind::InvalidSample, "the vertex enters through has_vertex, not points");
        for (size_t j = i + 1; j < s.points.size(); ++j)
            if (detail::same_projective_point(s.points[i], s.points[j], m.kind))
                fail(ErrorKind::InvalidSample, "coincident points in configuration");
    }

    std::vector<RatRow> rows;
    bool need_vertex = s.has_vertex;
    for (const auto& p : s.points) {
        auto block = m.point_block(p);
        // Euler relations force one dependency per point block
        if (rank_fraction_free(block) > 3)
            fail(ErrorKind::InvalidSample, "point block exceeds rank 3");
        for (auto& r : block)
            rows.push_back(std::move(r));
    }
    for (const auto& curve : s.curves) {
        if (static_cast<int>(curve.samples.size()) < per_curve)
            fail(ErrorKind::InvalidSample, "curve '" + curve.what + "' has too few samples");
        for (int i = 0; i < per_curve; ++i) {
            auto block = m.point_block(curve.samples[i]);
            if (rank_fraction_free(block) > 3)
                fail(ErrorKind::InvalidSample, "point block exceeds rank 3");
            for (auto& r : block)
                rows.push_back(std::move(r));
        }
        if (curve.through_vertex)
            need_vertex = true;
    }
    if (need_vertex)
        rows.push_back(m.vertex_row());
    return rows;
}

/// Codimension of the linear conditions of a configuration: the rank of its
/// condition matrix. Curve components are sampled at 2 dim V points and the
/// count is doubled once; the two ranks must agree.
inline int codim(const ConfigSample& s, const AmbientModel& m)
{
    const int base = 2 * m.dim();
    if (s.curves.empty())
        return rank_fraction_free(condition_matrix(s, m, 0));
    int r1 = rank_fraction_free(condition_matrix(s, m, base));
    int r2 = rank_fraction_free(condition_matrix(s, m, 2 * base));
    if (r1 != r2)
        fail(ErrorKind::RankNotStabilized,
             "curve sampling rank moved from " + std::to_string(r1) + " to " +
                 std::to_string(r2) + " for type " + s.type_id);
    return r1;
}

} // namespace stratseq::oracle
