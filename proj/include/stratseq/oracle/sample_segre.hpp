#pragma once

#include "stratseq/oracle/geometry.hpp"
#include "stratseq/oracle/model.hpp"

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace stratseq::oracle {

namespace detail {

struct RetryTag {
};

[[noreturn]] inline void retry() { throw RetryTag{}; }

inline void require(bool ok)
{
    if (!ok)
        retry();
}

/// Deterministic parameter sequence 0, 1, -1, 2, -2, ... used for curve
/// sample points (configuration coordinates stay in [-9, 9]; curve samples
/// only need to be distinct and exact).
inline std::vector<P1Pt> param_seq(int n)
{
    std::vector<P1Pt> out;
    out.push_back(p1_of(Rat(0)));
    for (int v = 1; static_cast<int>(out.size()) < n; ++v) {
        out.push_back(p1_of(Rat(v)));
        if (static_cast<int>(out.size()) < n)
            out.push_back(p1_of(Rat(-v)));
    }
    return out;
}

constexpr int kCurveSamples = 64; // 4 * dim V; codim() uses halves of this

inline std::vector<Rat> pt(const Rat& a, const Rat& b)
{
    return {Rat(1), a, Rat(1), b};
}

inline CurveSample segre_line_first(const P1Pt& x)
{
    CurveSample c;
    c.what = "ruling line, first family";
    for (const auto& s : param_seq(kCurveSamples))
        c.samples.push_back(segre_point(x, s));
    return c;
}

inline CurveSample segre_line_second(const P1Pt& y)
{
    CurveSample c;
    c.what = "ruling line, second family";
    for (const auto& s : param_seq(kCurveSamples))
        c.samples.push_back(segre_point(s, y));
    return c;
}

inline CurveSample segre_conic_curve(const SegreConic& q)
{
    CurveSample c;
    c.what = "nonsingular conic section";
    for (const auto& s : param_seq(kCurveSamples))
        c.samples.push_back(q.point_at_param(s));
    return c;
}

inline CurveSample segre_surface()
{
    CurveSample c;
    c.what = "the whole quadric surface";
    auto ps = param_seq(8);
    for (const auto& a : ps)
        for (const auto& b : ps)
            c.samples.push_back(segre_point(a, b));
    return c;
}

// P^3 coordinates of the Segre embedding and the ambient quadric z0 z3 = z1 z2.
inline std::vector<Rat> segre_to_p3(const std::vector<Rat>& p)
{
    return {p[0] * p[2], p[0] * p[3], p[1] * p[2], p[1] * p[3]};
}

inline Rat segre_quadric(const std::vector<Rat>& z)
{
    return z[0] * z[3] - z[1] * z[2];
}

inline Rat segre_bilinear(const std::vector<Rat>& p, const std::vector<Rat>& v)
{
    return p[0] * v[3] + p[3] * v[0] - p[1] * v[2] - p[2] * v[1];
}

inline std::vector<Rat> segre_from_p3(const std::vector<Rat>& z)
{
    P1Pt x = (z[0] != 0 || z[2] != 0) ? p1_normalize(z[0], z[2]) : p1_normalize(z[1], z[3]);
    P1Pt y = (z[0] != 0 || z[1] != 0) ? p1_normalize(z[0], z[1]) : p1_normalize(z[2], z[3]);
    return segre_point(x, y);
}

/// Second point of intersection of the quadric with the line through a known
/// quadric point p and an external point v; retries if tangent.
inline std::vector<Rat> segre_second_intersection(const std::vector<Rat>& p,
                                                  const std::vector<Rat>& v)
{
    Rat b = segre_bilinear(p, v);
    Rat qv = segre_quadric(v);
    require(b != 0); // otherwise the line is tangent at p
    std::vector<Rat> w(4);
    for (int i = 0; i < 4; ++i)
        w[i] = qv * p[i] - b * v[i];
    bool zero = true;
    for (const auto& c : w)
        if (c != 0)
            zero = false;
    require(!zero);
    return segre_from_p3(w);
}

inline bool pairwise_general(const std::vector<std::vector<Rat>>& pts)
{
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            bool same_x = pts[i][0] * pts[j][1] == pts[i][1] * pts[j][0];
            bool same_y = pts[i][2] * pts[j][3] == pts[i][3] * pts[j][2];
            if (same_x || same_y)
                return false;
        }
    return true;
}

inline RatRow conic_row(const std::vector<Rat>& p)
{
    return {p[0] * p[2], p[0] * p[3], p[1] * p[2], p[1] * p[3]};
}

inline bool on_common_conic(const std::vector<std::vector<Rat>>& four)
{
    std::vector<RatRow> rows;
    for (const auto& p : four)
        rows.push_back(conic_row(p));
    return determinant(rows) == 0;
}

inline bool some_four_on_conic(const std::vector<std::vector<Rat>>& pts)
{
    const size_t n = pts.size();
    std::vector<size_t> idxorder;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            for (size_t c = b + 1; c < n; ++c)
                for (size_t d = c + 1; d < n; ++d)
                    if (on_common_conic({pts[a], pts[b], pts[c], pts[d]}))
                        return true;
    return false;
}

template <typename F>
ConfigSample with_retries(const std::string& type_id, Rng& rng, F builder)
{
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        try {
            ConfigSample s = builder(rng);
            s.type_id = type_id;
            return s;
        } catch (const RetryTag&) {
            continue;
        }
    }
    fail(ErrorKind::SamplingExhausted, "could not realize configuration type " + type_id);
}

} // namespace detail

struct ConfigType {
    std::string id;
    int expected_codim;
    std::string description;
    std::function<ConfigSample(Rng&)> make;
};

/// The singular-configuration table of bidegree-(3,3) curves on the
/// nonsingular quadric surface: 26 types, codimension verified by the rank
/// oracle. Descriptions carry the faithful reading each sampler implements.
inline const std::vector<ConfigType>& segre_types()
{
    using namespace detail;
    static const std::vector<ConfigType> types = [] {
        std::vector<ConfigType> t;
        auto add = [&](std::string id, int c, std::string desc,
                       std::function<ConfigSample(Rng&)> f) {
            t.push_back({std::move(id), c, std::move(desc), std::move(f)});
        };

        add("1", 3, "one point", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                s.points.push_back(pt(draw(r), draw(r)));
                return s;
            });
        });

        add("2", 6, "two points on distinct rulings", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                std::set<Rat> ux, uy;
                s.points.push_back(pt(fresh(r, ux), fresh(r, uy)));
                s.points.push_back(pt(fresh(r, ux), fresh(r, uy)));
                return s;
            });
        });

        add("3", 7, "three points on a ruling line", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                Rat a = draw(r);
                std::set<Rat> uy;
                bool first_family = (r() & 1) != 0;
                for (int i = 0; i < 3; ++i)
                    s.points.push_back(first_family ? pt(a, fresh(r, uy))
                                                    : pt(fresh(r, uy), a));
                return s;
            });
        });

        add("4", 8, "a ruling line", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                if ((r() & 1) != 0)
                    s.curves.push_back(segre_line_first(p1_of(draw(r))));
                else
                    s.curves.push_back(segre_line_second(p1_of(draw(r))));
                return s;
            });
        });

        add("5", 9, "three points, pairwise on distinct rulings", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                std::set<Rat> ux, uy;
                for (int i = 0; i < 3; ++i)
                    s.points.push_back(pt(fresh(r, ux), fresh(r, uy)));
                return s;
            });
        });

        add("6", 10, "three points on a ruling line plus one point off it", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                std::set<Rat> ux, uy;
                Rat a = fresh(r, ux);
                for (int i = 0; i < 3; ++i)
                    s.points.push_back(pt(a, fresh(r, uy)));
                s.points.push_back(pt(fresh(r, ux), fresh(r, uy)));
                return s;
            });
        });

        add("7", 11, "four points on a nonsingular conic section", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                SegreConic q = random_nonsingular_conic(r);
                std::set<Rat> up;
                for (int i = 0; i < 4; ++i)
                    s.points.push_back(q.point_at_param(p1_of(fresh(r, up))));
                return s;
            });
        });

        add("8", 11, "two points on each of two crossing ruling lines plus the crossing",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    std::set<Rat> ux, uy;
                    Rat a = fresh(r, ux), b = fresh(r, uy);
                    s.points.push_back(pt(a, fresh(r, uy)));
                    s.points.push_back(pt(a, fresh(r, uy)));
                    s.points.push_back(pt(fresh(r, ux), b));
                    s.points.push_back(pt(fresh(r, ux), b));
                    s.points.push_back(pt(a, b));
                    return s;
                });
            });

        add("9", 11, "a ruling line plus one point off it", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                std::set<Rat> ux;
                Rat a = fresh(r, ux);
                s.curves.push_back(segre_line_first(p1_of(a)));
                s.points.push_back(pt(fresh(r, ux), draw(r)));
                return s;
            });
        });

        add("10", 12, "four points, pairwise general, on no common conic section",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    std::set<Rat> ux, uy;
                    for (int i = 0; i < 4; ++i)
                        s.points.push_back(pt(fresh(r, ux), fresh(r, uy)));
                    require(!on_common_conic(s.points));
                    return s;
                });
            });

        add("11", 12, "a nonsingular conic section", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                s.curves.push_back(segre_conic_curve(random_nonsingular_conic(r)));
                return s;
            });
        });

        add("12", 13,
            "three points on a ruling line plus two points sharing no plane with it",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    std::set<Rat> ux, uy;
                    Rat a = fresh(r, ux);
                    for (int i = 0; i < 3; ++i)
                        s.points.push_back(pt(a, fresh(r, uy)));
                    // a plane through the line meets the surface in the line
                    // plus one second-family line: keep the extras off a
                    // common second-family line
                    s.points.push_back(pt(fresh(r, ux), fresh(r, uy)));
                    s.points.push_back(pt(fresh(r, ux), fresh(r, uy)));
                    return s;
                });
            });

        add("13", 14,
            "one point plus four conic points avoiding the rulings through it",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    SegreConic q = random_nonsingular_conic(r);
                    std::vector<Rat> p = pt(draw(r), draw(r));
                    require(q.eval(p1_normalize(p[0], p[1]), p1_normalize(p[2], p[3])) != 0);
                    s.points.push_back(p);
                    std::set<Rat> up;
                    for (int i = 0; i < 4; ++i) {
                        auto cp = q.point_at_param(p1_of(fresh(r, up)));
                        // avoid the two ruling lines through p
                        require(cp[0] * p[1] != cp[1] * p[0]);
                        require(cp[2] * p[3] != cp[3] * p[2]);
                        s.points.push_back(cp);
                    }
                    return s;
                });
            });

        add("14", 14,
            "two points on each of two crossing ruling lines, the crossing, plus a "
            "general sixth point",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    std::set<Rat> ux, uy;
                    Rat a = fresh(r, ux), b = fresh(r, uy);
                    s.points.push_back(pt(a, fresh(r, uy)));
                    s.points.push_back(pt(a, fresh(r, uy)));
                    s.points.push_back(pt(fresh(r, ux), b));
                    s.points.push_back(pt(fresh(r, ux), b));
                    s.points.push_back(pt(a, b));
                    s.points.push_back(pt(fresh(r, ux), fresh(r, uy)));
                    return s;
                });
            });

        add("15", 14,
            "two triplets on distinct first-family lines, all second coordinates distinct",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    std::set<Rat> ux, uy;
                    Rat a1 = fresh(r, ux), a2 = fresh(r, ux);
                    for (int i = 0; i < 3; ++i)
                        s.points.push_back(pt(a1, fresh(r, uy)));
                    for (int i = 0; i < 3; ++i)
                        s.points.push_back(pt(a2, fresh(r, uy)));
                    return s;
                });
            });

        add("16", 14, "a ruling line plus two points off it on distinct rulings",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    std::set<Rat> ux, uy;
                    Rat a = fresh(r, ux);
                    s.curves.push_back(segre_line_first(p1_of(a)));
                    s.points.push_back(pt(fresh(r, ux), fresh(r, uy)));
                    s.points.push_back(pt(fresh(r, ux), fresh(r, uy)));
                    return s;
                });
            });

        add("17", 15, "five points in general position, no four on a conic section",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    std::set<Rat> ux, uy;
                    for (int i = 0; i < 5; ++i)
                        s.points.push_back(pt(fresh(r, ux), fresh(r, uy)));
                    require(!some_four_on_conic(s.points));
                    return s;
                });
            });

        add("18", 15,
            "a line-conic crossing, two more points on the line, three more on the conic",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    SegreConic q = random_nonsingular_conic(r);
                    std::set<Rat> up;
                    Rat a = fresh(r, up);
                    auto cross = q.point_at_param(p1_of(a));
                    require(cross[2] != 0);
                    s.points.push_back(cross);
                    std::set<Rat> uy{cross[3] / cross[2]};
                    s.points.push_back(pt(a, fresh(r, uy)));
                    s.points.push_back(pt(a, fresh(r, uy)));
                    for (int i = 0; i < 3; ++i) {
                        auto cp = q.point_at_param(p1_of(fresh(r, up)));
                        require(cp[2] != 0);
                        require(uy.insert(cp[3] / cp[2]).second);
                        s.points.push_back(cp);
                    }
                    return s;
                });
            });

        add("19", 15, "six points cut by three concurrent lines through an external point",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    std::set<Rat> ux, uy;
                    auto p1 = pt(fresh(r, ux), fresh(r, uy));
                    auto p2 = pt(fresh(r, ux), fresh(r, uy));
                    auto z1 = segre_to_p3(p1), z2 = segre_to_p3(p2);
                    Rat lam = draw_nonzero(r);
                    std::vector<Rat> v(4);
                    for (int i = 0; i < 4; ++i)
                        v[i] = z1[i] + lam * z2[i];
                    require(segre_quadric(v) != 0);
                    auto p3 = pt(fresh(r, ux), fresh(r, uy));
                    auto p4 = segre_second_intersection(segre_to_p3(p3), v);
                    auto p5 = pt(fresh(r, ux), fresh(r, uy));
                    auto p6 = segre_second_intersection(segre_to_p3(p5), v);
                    s.points = {p1, p2, p3, p4, p5, p6};
                    require(pairwise_general(s.points));
                    // the three lines must span the ambient projective space
                    std::vector<RatRow> span = {v, segre_to_p3(p1), segre_to_p3(p3),
                                                segre_to_p3(p5)};
                    require(determinant(span) != 0);
                    return s;
                });
            });

        add("20", 15,
            "the seven crossings of two first-family lines, one second-family line, and "
            "an irreducible (1,2) curve",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    // component bidegrees (1,0) + (1,0) + (0,1) + (1,2) = (3,3);
                    // the configuration is the seven pairwise crossings
                    ConfigSample s;
                    std::set<Rat> ux, uy;
                    Rat a1 = fresh(r, ux), a2 = fresh(r, ux);
                    Rat b = fresh(r, uy);
                    Rat u1 = fresh(r, uy), u2 = fresh(r, uy); // curve roots on x = a1
                    Rat v1 = fresh(r, uy), v2 = fresh(r, uy); // curve roots on x = a2
                    // curve A(y) x0 + B(y) x1 with prescribed restrictions
                    // R1 = A + a1 B and R2 = A + a2 B
                    Rat k1 = draw_nonzero(r), k2 = draw_nonzero(r);
                    BinForm R1{{k1 * u1 * u2, -k1 * (u1 + u2), k1}};
                    BinForm R2{{k2 * v1 * v2, -k2 * (v1 + v2), k2}};
                    BinForm A{{Rat(0), Rat(0), Rat(0)}}, B{{Rat(0), Rat(0), Rat(0)}};
                    for (int i = 0; i < 3; ++i) {
                        B.c[i] = (R2.c[i] - R1.c[i]) / (a2 - a1);
                        A.c[i] = R1.c[i] - a1 * B.c[i];
                    }
                    require(resultant_quadratics(A, B) != 0); // irreducible
                    // crossing with the second-family line y = (1, b)
                    P1Pt yb = p1_of(b);
                    P1Pt xb = p1_normalize(B.eval(yb), -A.eval(yb));
                    require(xb.u0 != 0);
                    require(ux.insert(xb.u1 / xb.u0).second);
                    s.points.push_back(pt(a1, b));
                    s.points.push_back(pt(a2, b));
                    s.points.push_back(segre_point(xb, yb));
                    s.points.push_back(pt(a1, u1));
                    s.points.push_back(pt(a1, u2));
                    s.points.push_back(pt(a2, v1));
                    s.points.push_back(pt(a2, v2));
                    return s;
                });
            });

        add("21", 15, "crossings of a ruling line pair and two nonsingular conic sections",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    std::set<Rat> ux, uy;
                    auto p = pt(fresh(r, ux), fresh(r, uy));
                    auto q = pt(fresh(r, ux), fresh(r, uy));
                    SegreConic c1 = conic_through(r, {p, q});
                    SegreConic c2 = conic_through(r, {p, q});
                    bool proportional = true;
                    for (int i = 0; i < 2 && proportional; ++i)
                        for (int j = 0; j < 2 && proportional; ++j)
                            for (int i2 = 0; i2 < 2 && proportional; ++i2)
                                for (int j2 = 0; j2 < 2; ++j2)
                                    if (c1.c[i][j] * c2.c[i2][j2] !=
                                        c1.c[i2][j2] * c2.c[i][j]) {
                                        proportional = false;
                                        break;
                                    }
                    require(!proportional);
                    Rat a = fresh(r, ux), b = fresh(r, uy);
                    auto lc1 = c1.point_at_param(p1_of(a));
                    auto lc2 = c2.point_at_param(p1_of(a));
                    auto mc1 = segre_point(c1.x_at(p1_of(b)), p1_of(b));
                    auto mc2 = segre_point(c2.x_at(p1_of(b)), p1_of(b));
                    s.points = {pt(a, b), lc1, lc2, mc1, mc2, p, q};
                    for (size_t i = 0; i < s.points.size(); ++i)
                        for (size_t j = i + 1; j < s.points.size(); ++j)
                            require(!detail::same_projective_point(
                                s.points[i], s.points[j], AmbientKind::SegreBidegree33));
                    return s;
                });
            });

        add("22", 15, "crossings of two ruling line pairs and a nonsingular conic section",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    std::set<Rat> ux, uy;
                    Rat a1 = fresh(r, ux), a2 = fresh(r, ux);
                    Rat b1 = fresh(r, uy), b2 = fresh(r, uy);
                    SegreConic q = random_nonsingular_conic(r);
                    auto e1 = q.point_at_param(p1_of(a1));
                    auto e2 = q.point_at_param(p1_of(a2));
                    auto f1 = segre_point(q.x_at(p1_of(b1)), p1_of(b1));
                    auto f2 = segre_point(q.x_at(p1_of(b2)), p1_of(b2));
                    require(e1[2] != 0 && e2[2] != 0 && f1[0] != 0 && f2[0] != 0);
                    require(uy.count(e1[3] / e1[2]) == 0);
                    require(uy.count(e2[3] / e2[2]) == 0);
                    require(e1[3] * e2[2] != e1[2] * e2[3]);
                    require(ux.count(f1[1] / f1[0]) == 0);
                    require(ux.count(f2[1] / f2[0]) == 0);
                    require(f1[1] * f2[0] != f1[0] * f2[1]);
                    s.points = {pt(a1, b1), pt(a1, b2), pt(a2, b1), pt(a2, b2),
                                e1,         e2,         f1,         f2};
                    return s;
                });
            });

        add("23", 15, "the nine crossings of three ruling lines per family", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                std::set<Rat> ux, uy;
                Rat a[3] = {fresh(r, ux), fresh(r, ux), fresh(r, ux)};
                Rat b[3] = {fresh(r, uy), fresh(r, uy), fresh(r, uy)};
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        s.points.push_back(pt(a[i], b[j]));
                return s;
            });
        });

        add("24", 15, "a ruling line plus three points on a parallel ruling line",
            [](Rng& rng) {
                return with_retries("", rng, [](Rng& r) {
                    ConfigSample s;
                    std::set<Rat> ux, uy;
                    Rat a = fresh(r, ux), a2 = fresh(r, ux);
                    s.curves.push_back(segre_line_first(p1_of(a)));
                    for (int i = 0; i < 3; ++i)
                        s.points.push_back(pt(a2, fresh(r, uy)));
                    return s;
                });
            });

        add("25", 15, "a nonsingular conic section plus one point off it", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                ConfigSample s;
                SegreConic q = random_nonsingular_conic(r);
                s.curves.push_back(segre_conic_curve(q));
                auto p = pt(draw(r), draw(r));
                require(q.eval(p1_normalize(p[0], p[1]), p1_normalize(p[2], p[3])) != 0);
                s.points.push_back(p);
                return s;
            });
        });

        add("26", 16, "the whole surface", [](Rng& rng) {
            return with_retries("", rng, [](Rng& r) {
                (void)r;
                ConfigSample s;
                s.curves.push_back(segre_surface());
                return s;
            });
        });

        return t;
    }();
    return types;
}

} // namespace stratseq::oracle
