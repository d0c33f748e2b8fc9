#include "stratseq/oracle/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace stratseq;
using namespace stratseq::oracle;

TEST_CASE("fraction-free rank agrees with rational elimination")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int trial = 0; trial < 60; ++trial) {
        size_t m = 1 + rng() % 8, n = 1 + rng() % 8;
        std::vector<RatRow> rows(m, RatRow(n));
        for (auto& row : rows)
            for (auto& x : row)
                x = Rat(d(rng), 1 + (rng() % 3));
        CHECK(rank_fraction_free(rows) == rank_rational(rows));
    }
}

TEST_CASE("rank of known matrices")
{
    std::vector<RatRow> id3 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(rank_fraction_free(id3) == 3);
    std::vector<RatRow> dep = {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
    CHECK(rank_fraction_free(dep) == 2);
    CHECK(rank_fraction_free(std::vector<IntRow>{}) == 0);
}

TEST_CASE("kernel_basis spans the right kernel")
{
    std::vector<RatRow> m = {{1, 2, 3, 4}, {0, 1, 1, 1}};
    auto basis = kernel_basis(m, 4);
    REQUIRE(basis.size() == 2);
    for (const auto& v : basis) {
        for (const auto& row : m) {
            Rat dot = 0;
            for (size_t i = 0; i < 4; ++i)
                dot += row[i] * v[i];
            CHECK(dot == 0);
        }
    }
}

TEST_CASE("single point blocks have the expected ranks")
{
    auto segre = AmbientModel::segre33();
    ConfigSample one;
    one.type_id = "1";
    one.points.push_back({Rat(1), Rat(2), Rat(1), Rat(-3)});
    CHECK(codim(one, segre) == 3);

    auto cone = AmbientModel::weighted_sextic();
    ConfigSample vertex;
    vertex.type_id = "3.1";
    vertex.has_vertex = true;
    CHECK(codim(vertex, cone) == 1);

    ConfigSample general;
    general.type_id = "3.2";
    general.points.push_back({Rat(1), Rat(2), Rat(5)});
    CHECK(codim(general, cone) == 3);
}

TEST_CASE("point blocks obey the Euler-relation rank bound")
{
    auto segre = AmbientModel::segre33();
    std::mt19937_64 rng(99);
    for (int i = 0; i < 40; ++i) {
        auto p = std::vector<Rat>{Rat(1), draw(rng), Rat(1), draw(rng)};
        CHECK(rank_fraction_free(segre.point_block(p)) <= 3);
    }
    auto cone = AmbientModel::weighted_sextic();
    for (int i = 0; i < 40; ++i) {
        auto p = std::vector<Rat>{Rat(1), draw(rng), draw(rng)};
        CHECK(rank_fraction_free(cone.point_block(p)) <= 3);
    }
}

TEST_CASE("coincident points are rejected")
{
    auto segre = AmbientModel::segre33();
    ConfigSample s;
    s.type_id = "degenerate";
    s.points.push_back({Rat(1), Rat(2), Rat(1), Rat(3)});
    s.points.push_back({Rat(2), Rat(4), Rat(3), Rat(9)});
    CHECK_THROWS_MATCHES(codim(s, segre), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.kind() == ErrorKind::InvalidSample;
                         }));
}

TEST_CASE("sampled configurations satisfy their stated predicates")
{
    auto two = sample_config(1, "2", 1);
    REQUIRE(two.points.size() == 2);
    CHECK(two.points[0][1] * two.points[1][0] != two.points[0][0] * two.points[1][1]);
    CHECK(two.points[0][3] * two.points[1][2] != two.points[0][2] * two.points[1][3]);

    auto five = sample_config(1, "17", 7);
    REQUIRE(five.points.size() == 5);

    auto concurrent = sample_config(3, "27", 3);
    REQUIRE(concurrent.points.size() == 6);
    // all six points below the vertex chart, pairwise distinct rulings
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = i + 1; j < 6; ++j)
            CHECK(concurrent.points[i][0] * concurrent.points[j][1] !=
                  concurrent.points[i][1] * concurrent.points[j][0]);
}

TEST_CASE("subconfiguration monotonicity and generic growth by three")
{
    auto segre = AmbientModel::segre33();
    std::uint64_t seed = 20250809;
    auto s3 = sample_config(1, "5", seed); // three pairwise general points
    REQUIRE(s3.points.size() == 3);
    ConfigSample s2 = s3, s1 = s3;
    s2.points.pop_back();
    s1.points.resize(1);
    int c1 = codim(s1, segre), c2 = codim(s2, segre), c3 = codim(s3, segre);
    CHECK(c1 == 3);
    CHECK(c2 == 6);
    CHECK(c3 == 9);
}

TEST_CASE("codimension tables verify at a smoke-test sample count")
{
    auto r1 = verify_table(1, 2, 42);
    for (const auto& row : r1.rows) {
        INFO("table 1 type " << row.type_id << " (" << row.description << ") expected "
                             << row.expected_c);
        CHECK(row.pass);
    }
    CHECK(r1.pass);

    auto r3 = verify_table(3, 2, 42);
    for (const auto& row : r3.rows) {
        INFO("table 3 type " << row.type_id << " (" << row.description << ") expected "
                             << row.expected_c);
        CHECK(row.pass);
    }
    CHECK(r3.pass);
}

TEST_CASE("verify_table with zero samples is an empty pass")
{
    auto r = verify_table(1, 0, 1);
    CHECK(r.pass);
    for (const auto& row : r.rows)
        CHECK(row.ranks.empty());
}

TEST_CASE("curve sampling must stabilize")
{
    // a fake "curve" whose early samples sit on a ruling line and whose later
    // samples wander off it: the rank grows when the sample count doubles
    auto segre = AmbientModel::segre33();
    CurveSample fake;
    fake.what = "not actually a curve";
    for (int i = 0; i < 32; ++i)
        fake.samples.push_back({Rat(1), Rat(2), Rat(1), Rat(i)});
    for (int i = 0; i < 32; ++i)
        fake.samples.push_back({Rat(1), Rat(100 + i), Rat(1), Rat(i)});
    ConfigSample s;
    s.type_id = "fake";
    s.curves.push_back(fake);
    CHECK_THROWS_MATCHES(codim(s, segre), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.kind() == ErrorKind::RankNotStabilized;
                         }));
}

TEST_CASE("sampling exhaustion is reported")
{
    std::mt19937_64 rng(1);
    std::set<Rat> used;
    for (int v = -9; v <= 9; ++v)
        used.insert(Rat(v));
    CHECK_THROWS_MATCHES(fresh(rng, used), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.kind() == ErrorKind::SamplingExhausted;
                         }));
}

TEST_CASE("report serializes to the documented JSON shape")
{
    auto r = verify_table(1, 1, 5);
    auto j = to_json(r);
    CHECK(j["table"] == 1);
    CHECK(j["rows"].size() == 26);
    CHECK(j["rows"][0].contains("type_id"));
    CHECK(j["rows"][0].contains("expected_c"));
    CHECK(j["rows"][0].contains("ranks"));
    CHECK(j["rows"][0].contains("pass"));
}
