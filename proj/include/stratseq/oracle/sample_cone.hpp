#pragma once

#include "stratseq/oracle/geometry.hpp"
#include "stratseq/oracle/model.hpp"
#include "stratseq/oracle/sample_segre.hpp" // RetryTag, with_retries, param_seq, ConfigType

#include <set>
#include <string>
#include <vector>

namespace stratseq::oracle {

namespace detail {

inline std::vector<Rat> cpt(const Rat& ratio, const Rat& z)
{
    return {Rat(1), ratio, z};
}

inline CurveSample cone_ruling_line(const P1Pt& ratio)
{
    CurveSample c;
    c.what = "ruling line through the vertex";
    c.through_vertex = true;
    for (int v = 0; static_cast<int>(c.samples.size()) < kCurveSamples; ++v) {
        c.samples.push_back(cone_point(ratio, Rat(v)));
        if (static_cast<int>(c.samples.size()) < kCurveSamples && v > 0)
            c.samples.push_back(cone_point(ratio, Rat(-v)));
    }
    return c;
}

inline CurveSample cone_conic_curve(const ConeConic& q)
{
    CurveSample c;
    c.what = "nonsingular conic section (misses the vertex)";
    for (const auto& t : param_seq(kCurveSamples))
        c.samples.push_back(q.point_at(t));
    return c;
}

/// Irreducible weighted-degree-3 curve A(x,y) z + B(x,y) = 0; always passes
/// through the vertex.
inline CurveSample cone_cubic_curve(const Rat& a0, const Rat& a1, const BinForm& B)
{
    CurveSample c;
    c.what = "irreducible degree-three curve through the vertex";
    c.through_vertex = true;
    for (int v = 0; static_cast<int>(c.samples.size()) < kCurveSamples; ++v) {
        for (Rat t : {Rat(v), Rat(-v)}) {
            if (v == 0 && t == 0 && !c.samples.empty())
                continue;
            Rat a = a0 + a1 * t; // A at (1, t)
            if (a == 0)
                continue;
            c.samples.push_back(cpt(t, -B.eval(p1_of(t)) / a));
            if (static_cast<int>(c.samples.size()) >= kCurveSamples)
                break;
        }
    }
    return c;
}

inline CurveSample cone_surface()
{
    CurveSample c;
    c.what = "the whole cone";
    c.through_vertex = true;
    for (int t = -4; t <= 4; ++t)
        for (int z = 0; z <= 7; ++z)
            c.samples.push_back(cpt(Rat(t), Rat(z)));
    return c;
}

// P^3 coordinates (x^2, xy, y^2, z) of the cone, quadric w0 w2 = w1^2.
inline std::vector<Rat> cone_to_p3(const std::vector<Rat>& p)
{
    return {p[0] * p[0], p[0] * p[1], p[1] * p[1], p[2]};
}

inline Rat cone_quadric(const std::vector<Rat>& w)
{
    return w[0] * w[2] - w[1] * w[1];
}

inline Rat cone_bilinear(const std::vector<Rat>& p, const std::vector<Rat>& v)
{
    return p[0] * v[2] + p[2] * v[0] - 2 * p[1] * v[1];
}

inline std::vector<Rat> cone_from_p3(const std::vector<Rat>& w)
{
    if (w[0] != 0)
        return {Rat(1), w[1] / w[0], w[3] / w[0]};
    if (w[2] != 0) {
        // x = 0 chart: preimage of (0, 0, w2, w3)
        require(w[1] == 0);
        return {Rat(0), Rat(1), w[3] / w[2]};
    }
    retry(); // the vertex: not a valid sample point
}

inline std::vector<Rat> cone_second_intersection(const std::vector<Rat>& p,
                                                 const std::vector<Rat>& v)
{
    Rat b = cone_bilinear(p, v);
    Rat qv = cone_quadric(v);
    require(b != 0);
    std::vector<Rat> w(4);
    for (int i = 0; i < 4; ++i)
        w[i] = qv * p[i] - b * v[i];
    bool zero = true;
    for (const auto& c : w)
        if (c != 0)
            zero = false;
    require(!zero);
    return cone_from_p3(w);
}

inline bool distinct_ratios(const std::vector<std::vector<Rat>>& pts)
{
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i][0] * pts[j][1] == pts[i][1] * pts[j][0])
                return false;
    return true;
}

inline RatRow cone_conic_row(const std::vector<Rat>& p)
{
    return {p[0] * p[0], p[0] * p[1], p[1] * p[1], p[2]};
}

inline bool cone_four_on_conic(const std::vector<std::vector<Rat>>& four)
{
    std::vector<RatRow> rows;
    for (const auto& p : four)
        rows.push_back(cone_conic_row(p));
    return determinant(rows) == 0;
}

inline bool cone_some_four_on_conic(const std::vector<std::vector<Rat>>& pts)
{
    const size_t n = pts.size();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            for (size_t c = b + 1; c < n; ++c)
                for (size_t d = c + 1; d < n; ++d)
                    if (cone_four_on_conic({pts[a], pts[b], pts[c], pts[d]}))
                        return true;
    return false;
}

/// General configuration on the cone: no vertex, pairwise distinct rulings,
/// at most three points on any conic section.
inline void require_general(const std::vector<std::vector<Rat>>& pts)
{
    require(distinct_ratios(pts));
    if (pts.size() >= 4)
        require(!cone_some_four_on_conic(pts));
}

} // namespace detail

/// The singular-configuration table of weighted-degree-6 curves on the
/// quadric cone: 30 types.
inline const std::vector<ConfigType>& cone_types()
{
    using namespace detail;
    static const std::vector<ConfigType> types = [] {
        std::vector<ConfigType> t;
        auto add = [&](std::string id, int c, std::string desc,
                       std::function<ConfigSample(Rng&)> f) {
            t.push_back({std::move(id), c, std::move(desc), std::move(f)});
        };

        auto fresh_general = [](Rng& r, ConfigSample& s, std::set<Rat>& ratios, int count) {
            for (int i = 0; i < count; ++i)
                s.points.push_back(cpt(fresh(r, ratios), draw(r)));
        };

        add("1", 1, "the vertex", [](Rng& rng) {
            return with_retries("", rng, [](Rng&) {
                ConfigSample s;
                s.has_vertex = true;
                return s;
            });
        });

        add("2", 3, "one general point", [fresh_general](Rng& rng) {
            return with_retries("", rng, [&](Rng& r) {
                ConfigSample s;
                std::set<Rat> ratios;
                fresh_general(r, s, ratios, 1);
                return s;
            });
        });

        add("3", 4, "the vertex plus a general point", [fresh_general](Rng& rng) {
            return with_retries("", rng, [&](Rng& r) {
                ConfigSample s;
                s.has_vertex = true;
                std::set<Rat> ratios;
                fresh_general(r, s, ratios, 1);
                return s;
            });
        });

        add("4", 6, "the vertex plus two points on one ruling line", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                s.has_vertex = true;
                Rat ratio = draw(r);
                std::set<Rat> uz;
                s.points.push_back(cpt(ratio, fresh(r, uz)));
                s.points.push_back(cpt(ratio, fresh(r, uz)));
                return s;
            });
        });

        add("5", 6, "two general points", [fresh_general](Rng& rng) {
            return with_retries("", rng, [&](Rng& r) {
                ConfigSample s;
                std::set<Rat> ratios;
                fresh_general(r, s, ratios, 2);
                return s;
            });
        });

        add("6", 7, "a ruling line", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                s.curves.push_back(cone_ruling_line(p1_of(draw(r))));
                return s;
            });
        });

        add("7", 7, "the vertex plus two general points", [fresh_general](Rng& rng) {
            return with_retries("", rng, [&](Rng& r) {
                ConfigSample s;
                s.has_vertex = true;
                std::set<Rat> ratios;
                fresh_general(r, s, ratios, 2);
                return s;
            });
        });

        add("8", 9, "three general points", [fresh_general](Rng& rng) {
            return with_retries("", rng, [&](Rng& r) {
                ConfigSample s;
                std::set<Rat> ratios;
                fresh_general(r, s, ratios, 3);
                return s;
            });
        });

        add("9", 9, "the vertex, two points on one ruling line, plus a general point",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    s.has_vertex = true;
                    std::set<Rat> ratios;
                    Rat ratio = fresh(r, ratios);
                    std::set<Rat> uz;
                    s.points.push_back(cpt(ratio, fresh(r, uz)));
                    s.points.push_back(cpt(ratio, fresh(r, uz)));
                    s.points.push_back(cpt(fresh(r, ratios), draw(r)));
                    return s;
                });
            });

        add("10", 10, "the vertex plus three general points", [fresh_general](Rng& rng) {
            return with_retries("", rng, [&](Rng& r) {
                ConfigSample s;
                s.has_vertex = true;
                std::set<Rat> ratios;
                fresh_general(r, s, ratios, 3);
                return s;
            });
        });

        add("11", 10, "a ruling line plus a general point", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                std::set<Rat> ratios;
                s.curves.push_back(cone_ruling_line(p1_of(fresh(r, ratios))));
                s.points.push_back(cpt(fresh(r, ratios), draw(r)));
                return s;
            });
        });

        add("12", 11, "the vertex plus two points on each of two ruling lines", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                s.has_vertex = true;
                std::set<Rat> ratios;
                for (int line = 0; line < 2; ++line) {
                    Rat ratio = fresh(r, ratios);
                    std::set<Rat> uz;
                    s.points.push_back(cpt(ratio, fresh(r, uz)));
                    s.points.push_back(cpt(ratio, fresh(r, uz)));
                }
                return s;
            });
        });

        add("13", 11, "four points on a nonsingular conic section", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                ConeConic q = random_cone_conic(r);
                std::set<Rat> params;
                for (int i = 0; i < 4; ++i)
                    s.points.push_back(q.point_at(p1_of(fresh(r, params))));
                return s;
            });
        });

        add("14", 12, "a ruling line plus two points on another ruling line", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                std::set<Rat> ratios;
                s.curves.push_back(cone_ruling_line(p1_of(fresh(r, ratios))));
                Rat other = fresh(r, ratios);
                std::set<Rat> uz;
                s.points.push_back(cpt(other, fresh(r, uz)));
                s.points.push_back(cpt(other, fresh(r, uz)));
                return s;
            });
        });

        add("15", 12, "four general points", [fresh_general](Rng& rng) {
            return with_retries("", rng, [&](Rng& r) {
                ConfigSample s;
                std::set<Rat> ratios;
                fresh_general(r, s, ratios, 4);
                require_general(s.points);
                return s;
            });
        });

        add("16", 12, "the vertex, two points on one ruling line, plus two general points",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    s.has_vertex = true;
                    std::set<Rat> ratios;
                    Rat ratio = fresh(r, ratios);
                    std::set<Rat> uz;
                    s.points.push_back(cpt(ratio, fresh(r, uz)));
                    s.points.push_back(cpt(ratio, fresh(r, uz)));
                    s.points.push_back(cpt(fresh(r, ratios), draw(r)));
                    s.points.push_back(cpt(fresh(r, ratios), draw(r)));
                    return s;
                });
            });

        add("17", 12, "the vertex plus four points on a nonsingular conic section",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    s.has_vertex = true;
                    ConeConic q = random_cone_conic(r);
                    std::set<Rat> params;
                    for (int i = 0; i < 4; ++i)
                        s.points.push_back(q.point_at(p1_of(fresh(r, params))));
                    return s;
                });
            });

        add("18", 12, "two ruling lines", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                std::set<Rat> ratios;
                s.curves.push_back(cone_ruling_line(p1_of(fresh(r, ratios))));
                s.curves.push_back(cone_ruling_line(p1_of(fresh(r, ratios))));
                return s;
            });
        });

        add("19", 12, "a nonsingular conic section", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                s.curves.push_back(cone_conic_curve(random_cone_conic(r)));
                return s;
            });
        });

        add("20", 13, "the vertex plus a nonsingular conic section", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                s.has_vertex = true;
                s.curves.push_back(cone_conic_curve(random_cone_conic(r)));
                return s;
            });
        });

        add("21", 13, "a ruling line plus two general points", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                std::set<Rat> ratios;
                s.curves.push_back(cone_ruling_line(p1_of(fresh(r, ratios))));
                s.points.push_back(cpt(fresh(r, ratios), draw(r)));
                s.points.push_back(cpt(fresh(r, ratios), draw(r)));
                return s;
            });
        });

        add("22", 14,
            "the vertex, four conic points, plus a fifth point on the ruling line "
            "through one of them",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    s.has_vertex = true;
                    ConeConic q = random_cone_conic(r);
                    std::set<Rat> params;
                    for (int i = 0; i < 4; ++i)
                        s.points.push_back(q.point_at(p1_of(fresh(r, params))));
                    // the line joining a conic point with the vertex is the
                    // ruling line through it: same ratio, different height
                    const auto& p0 = s.points[0];
                    Rat z = draw(r);
                    require(z != p0[2]);
                    s.points.push_back({p0[0], p0[1], z});
                    return s;
                });
            });

        add("23", 14,
            "the vertex, two points on each of two ruling lines, plus a general point",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    s.has_vertex = true;
                    std::set<Rat> ratios;
                    for (int line = 0; line < 2; ++line) {
                        Rat ratio = fresh(r, ratios);
                        std::set<Rat> uz;
                        s.points.push_back(cpt(ratio, fresh(r, uz)));
                        s.points.push_back(cpt(ratio, fresh(r, uz)));
                    }
                    s.points.push_back(cpt(fresh(r, ratios), draw(r)));
                    return s;
                });
            });

        add("24", 14, "four points on a nonsingular conic section plus a general point",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    ConeConic q = random_cone_conic(r);
                    std::set<Rat> params;
                    for (int i = 0; i < 4; ++i) {
                        Rat t = fresh(r, params);
                        s.points.push_back(q.point_at(p1_of(t)));
                    }
                    auto extra = cpt(fresh(r, params), draw(r));
                    require(q.eval(extra) != 0);
                    s.points.push_back(extra);
                    return s;
                });
            });

        add("25", 15, "an irreducible degree-three curve", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                Rat a0 = draw(r), a1 = draw(r);
                require(a0 != 0 || a1 != 0);
                BinForm B{{draw(r), draw(r), draw(r), draw(r)}};
                // irreducible iff the linear z-coefficient and the cubic part
                // share no root: B at the root of A is nonzero
                P1Pt root = p1_normalize(-a1, a0);
                require(B.eval(root) != 0);
                s.curves.push_back(cone_cubic_curve(a0, a1, B));
                return s;
            });
        });

        add("26", 15, "all crossings of two ruling lines and two conic sections",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    s.has_vertex = true; // the two ruling lines cross at the vertex
                    std::set<Rat> ratios;
                    auto p = cpt(fresh(r, ratios), draw(r));
                    auto q = cpt(fresh(r, ratios), draw(r));
                    auto [c1, c2] = cone_conics_through(r, p, q);
                    Rat r1 = fresh(r, ratios), r2 = fresh(r, ratios);
                    auto l1c1 = c1.point_at(p1_of(r1));
                    auto l1c2 = c2.point_at(p1_of(r1));
                    auto l2c1 = c1.point_at(p1_of(r2));
                    auto l2c2 = c2.point_at(p1_of(r2));
                    require(l1c1[2] != l1c2[2]);
                    require(l2c1[2] != l2c2[2]);
                    s.points = {p, q, l1c1, l1c2, l2c1, l2c2};
                    return s;
                });
            });

        add("27", 15, "six points cut by three concurrent lines through an external point",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    std::set<Rat> ratios;
                    auto p1p = cpt(fresh(r, ratios), draw(r));
                    auto p2p = cpt(fresh(r, ratios), draw(r));
                    auto w1 = cone_to_p3(p1p), w2 = cone_to_p3(p2p);
                    Rat lam = draw_nonzero(r);
                    std::vector<Rat> v(4);
                    for (int i = 0; i < 4; ++i)
                        v[i] = w1[i] + lam * w2[i];
                    require(cone_quadric(v) != 0);
                    auto p3p = cpt(fresh(r, ratios), draw(r));
                    auto p4p = cone_second_intersection(cone_to_p3(p3p), v);
                    auto p5p = cpt(fresh(r, ratios), draw(r));
                    auto p6p = cone_second_intersection(cone_to_p3(p5p), v);
                    s.points = {p1p, p2p, p3p, p4p, p5p, p6p};
                    require(distinct_ratios(s.points));
                    std::vector<RatRow> span = {v, cone_to_p3(p1p), cone_to_p3(p3p),
                                                cone_to_p3(p5p)};
                    require(determinant(span) != 0);
                    return s;
                });
            });

        add("28", 15, "three ruling lines", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                std::set<Rat> ratios;
                for (int i = 0; i < 3; ++i)
                    s.curves.push_back(cone_ruling_line(p1_of(fresh(r, ratios))));
                return s;
            });
        });

        add("29", 15, "a ruling line plus a nonsingular conic section", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                s.curves.push_back(cone_ruling_line(p1_of(draw(r))));
                s.curves.push_back(cone_conic_curve(random_cone_conic(r)));
                return s;
            });
        });

        add("30", 16, "the whole cone", [](Rng& rng) {
            return with_retries("", rng, [](Rng&) {
                ConfigSample s;
                s.curves.push_back(cone_surface());
                return s;
            });
        });

        return t;
    }();
    return types;
}

} // namespace stratseq::oracle
