#include "stratseq/strata.hpp"

#include "fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace stratseq;
using fixtures::M;

namespace {

StratumSpec points(std::string name, int m, int codim, BaseRef base, int N = 16)
{
    StratumSpec s;
    s.name = std::move(name);
    s.kind = StratumKind::FinitePoints;
    s.m = m;
    s.codim = codim;
    s.ambient_dim = N;
    s.base = std::move(base);
    return s;
}

} // namespace

TEST_CASE("contribution: two points on the quadric surface")
{
    auto s = points("B", 2, 6, BaseRef::from_catalog(parse_catalog_key("B(2,P1xP1);Sign")));
    auto c = contribution(s);
    CHECK(c.table == M({{23, 11, 2}, {25, 12, 2}, {27, 13, 2}}));
    CHECK(c.simplex_only_table == M({{3, 1, 2}, {5, 2, 2}, {7, 3, 2}}));
    // the two tables differ exactly by the rank-d vector bundle shift
    int d = s.fiber_rank();
    CHECK(c.table == shift(c.simplex_only_table, 2 * d, d));
}

TEST_CASE("contribution: the cone vertex")
{
    auto s = points("A", 1, 1, BaseRef::from_table(GradedTateModule::unit()));
    CHECK(contribution(s).table == M({{30, 15, 1}}));
}

TEST_CASE("contribution: concurrent-lines column via a tensor base")
{
    auto s = points("E", 6, 15,
                    BaseRef::from_tensor({
                        BaseRef::from_catalog(parse_catalog_key("P3MinusQuadric;Q")),
                        BaseRef::from_catalog(parse_catalog_key("TripleNonCollinear;W")),
                    }));
    CHECK(contribution(s).table == M({{16, 4, 1}, {19, 6, 2}, {22, 8, 1}}));
}

TEST_CASE("contribution: curve-containing strata are zero, whole space refuses")
{
    StratumSpec line;
    line.name = "a line";
    line.kind = StratumKind::ContainsCurve;
    line.codim = 8;
    line.ambient_dim = 16;
    auto c = contribution(line);
    CHECK(c.table.is_zero());
    CHECK(c.simplex_only_table.is_zero());

    StratumSpec whole;
    whole.name = "whole surface";
    whole.kind = StratumKind::WholeSpace;
    whole.codim = 16;
    whole.ambient_dim = 16;
    CHECK_THROWS_MATCHES(contribution(whole), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.kind() == ErrorKind::WholeSpaceNotHere;
                         }));

    StratumSpec nobase = points("?", 2, 6, BaseRef::from_table(GradedTateModule::unit()));
    nobase.base.reset();
    CHECK_THROWS_MATCHES(contribution(nobase), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.kind() == ErrorKind::UnresolvedBase;
                         }));
}

TEST_CASE("contribution is monotone: empty base gives empty tables")
{
    auto s = points("dead", 3, 7, BaseRef::from_catalog(parse_catalog_key("B(3,Proj(1));Sign")));
    auto c = contribution(s);
    CHECK(c.table.is_zero());
    CHECK(c.simplex_only_table.is_zero());
}

TEST_CASE("every named first-page column obeys the shift formula")
{
    struct Row {
        const char* name;
        int m, codim;
        BaseRef base;
    };
    std::vector<Row> rows;
    rows.push_back({"A", 1, 3, BaseRef::from_catalog(parse_catalog_key("B(1,P1xP1);Sign"))});
    rows.push_back({"B", 2, 6, BaseRef::from_catalog(parse_catalog_key("B(2,P1xP1);Sign"))});
    rows.push_back({"C", 3, 9, BaseRef::from_catalog(parse_catalog_key("B(3,P1xP1);Sign"))});
    rows.push_back({"D", 4, 12, BaseRef::from_catalog(parse_catalog_key("B(4,P1xP1);Sign"))});
    rows.push_back({"E", 6, 15,
                    BaseRef::from_tensor({
                        BaseRef::from_catalog(parse_catalog_key("P3MinusQuadric;Q")),
                        BaseRef::from_catalog(parse_catalog_key("TripleNonCollinear;W")),
                    })});
    rows.push_back({"F", 8, 15,
                    BaseRef::from_tensor({
                        BaseRef::from_catalog(parse_catalog_key("P3MinusQuadric;Q")),
                        BaseRef::from_catalog(parse_catalog_key("Psi;R")),
                    })});

    auto expected = fixtures::c0_columns();
    auto expected_simplex = fixtures::c0_simplex_columns();
    for (size_t i = 0; i < rows.size(); ++i) {
        auto s = points(rows[i].name, rows[i].m, rows[i].codim, rows[i].base);
        auto c = contribution(s);
        CHECK(c.table == expected[i].table);
        CHECK(c.simplex_only_table == expected_simplex[i].table);
        // total shift (m-1) + 2(N-c), twist shift N-c
        auto base = resolve_base(rows[i].base);
        CHECK(c.table == shift(base, (rows[i].m - 1) + 2 * (16 - rows[i].codim),
                               16 - rows[i].codim));
    }
}

TEST_CASE("quadric-cone columns")
{
    auto cone = BaseRef::from_catalog(parse_catalog_key("ConeMinusVertex;Q"));
    auto pairs = BaseRef::from_catalog(parse_catalog_key("B(2,ConeMinusVertex);Sign"));
    auto expected = fixtures::c1_columns();
    CHECK(contribution(points("A", 1, 1, BaseRef::from_table(GradedTateModule::unit()))).table ==
          expected[0].table);
    CHECK(contribution(points("B", 1, 3, cone)).table == expected[1].table);
    CHECK(contribution(points("C", 2, 4, cone)).table == expected[2].table);
    CHECK(contribution(points("D", 2, 6, pairs)).table == expected[3].table);
    CHECK(contribution(points("E", 3, 7, pairs)).table == expected[4].table);
}

TEST_CASE("vanishing_reason selects and validates rules")
{
    StratumSpec line_plus;
    line_plus.name = "a line and 3 points";
    line_plus.kind = StratumKind::ContainsCurve;
    line_plus.codim = 15;
    line_plus.ambient_dim = 16;
    line_plus.vanish = VanishingRule::LinePlusPoints;
    CHECK(vanishing_reason(line_plus).rule == VanishingRule::LinePlusPoints);

    StratumSpec pure_curve = line_plus;
    pure_curve.vanish.reset();
    CHECK(vanishing_reason(pure_curve).rule == VanishingRule::CurveInConfiguration);

    // three points on a rational curve: inferred from the catalog base
    auto collinear =
        points("three collinear points", 3, 7, BaseRef::from_catalog(parse_catalog_key("B(3,Proj(1));Sign")));
    CHECK(vanishing_reason(collinear).rule == VanishingRule::CollinearOverflow);

    auto paired = points("two collinear triplets", 6, 14, BaseRef::from_table(GradedTateModule::zero()));
    paired.vanish = VanishingRule::PairedCollinear;
    auto just = vanishing_reason(paired);
    CHECK(just.rule == VanishingRule::PairedCollinear);
    CHECK(!just.citation.empty());

    // a live stratum has no vanishing justification
    auto live = points("B", 2, 6, BaseRef::from_catalog(parse_catalog_key("B(2,P1xP1);Sign")));
    CHECK_THROWS_MATCHES(vanishing_reason(live), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.kind() == ErrorKind::NoRuleApplies;
                         }));

    // rules cannot be attached to the wrong stratum kind
    auto wrong = points("points", 3, 7, BaseRef::from_table(GradedTateModule::zero()));
    wrong.vanish = VanishingRule::CurveInConfiguration;
    CHECK_THROWS_AS(vanishing_reason(wrong), Error);
}
