#include "stratseq/catalog.hpp"
#include "stratseq/duality.hpp"
#include "stratseq/quotient.hpp"
#include "stratseq/specseq.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace stratseq;

namespace {
GradedTateModule M(std::initializer_list<std::array<long, 3>> t)
{
    return GradedTateModule::of(t);
}
} // namespace

TEST_CASE("gaussian binomial coefficients")
{
    auto g = detail::gaussian_binomial(4, 2);
    REQUIRE(g.size() == 5);
    CHECK(g[0] == 1);
    CHECK(g[1] == 1);
    CHECK(g[2] == 2);
    CHECK(g[3] == 1);
    CHECK(g[4] == 1);
    CHECK(detail::gaussian_binomial(2, 2) == std::vector<Int>{1});
    CHECK(detail::gaussian_binomial(2, 3).empty());
}

TEST_CASE("catalog tables: the flagship entries")
{
    CHECK(bm("B(3,Affine(5));Sign").is_zero());
    CHECK(bm("B(4,P1xP1);Sign") == M({{8, 4, 1}}));
    CHECK(bm("Torus;T").is_zero());
    CHECK(bm("B(2,Torus);Sign") == M({{2, 0, 1}, {3, 1, 1}}));
    CHECK(bm("F4P1;Q") == M({{4, 1, 2}, {5, 2, 1}, {7, 3, 2}, {8, 4, 1}}));
    CHECK(bm("B(2,P1xP1);Sign") == M({{2, 1, 2}, {4, 2, 2}, {6, 3, 2}}));
    CHECK(bm("ConeMinusVertex;Q") == M({{2, 1, 1}, {4, 2, 1}}));
}

TEST_CASE("catalog errors")
{
    CHECK_THROWS_MATCHES(bm("B(7,Torus);Sign"), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.kind() == ErrorKind::UnknownKey;
                         }));
    CHECK_THROWS_MATCHES(bm("Proj(2);Sign"), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.kind() == ErrorKind::InadmissibleSystem;
                         }));
    CHECK_THROWS_MATCHES(bm("P1xP1;T"), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.kind() == ErrorKind::InadmissibleSystem;
                         }));
    CHECK_THROWS_MATCHES(bm("Psi;W"), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.kind() == ErrorKind::InadmissibleSystem;
                         }));
}

TEST_CASE("configurations on projective spaces: Grassmannian shift")
{
    // B(k, P^N) has total dimension binomial(N+1, k) and dies for k > N+1.
    CHECK(bm("B(1,Proj(1));Sign") == M({{0, 0, 1}, {2, 1, 1}}));
    CHECK(bm("B(2,Proj(1));Sign") == M({{2, 1, 1}}));
    CHECK(bm("B(3,Proj(1));Sign").is_zero());
    CHECK(bm("B(4,Proj(1));Sign").is_zero());
    CHECK(bm("B(2,Proj(3));Sign").dimension() == 6);
    CHECK(bm("B(5,Proj(3));Sign").is_zero());

    auto binom = [](int n, int k) {
        Int r = 1;
        for (int i = 0; i < k; ++i)
            r = r * (n - i) / (i + 1);
        return r;
    };
    for (int N = 1; N <= 4; ++N)
        for (int k = 1; k <= N + 2; ++k) {
            CatalogKey key = parse_catalog_key("B(" + std::to_string(k) + ",Proj(" +
                                               std::to_string(N) + "));Sign");
            CHECK(bm(key).dimension() == (k > N + 1 ? Int(0) : binom(N + 1, k)));
        }
}

TEST_CASE("cell_sum: subsets of affine cells")
{
    CHECK(cell_sum(2, {0, 1, 1, 2}) == M({{2, 1, 2}, {4, 2, 2}, {6, 3, 2}}));
    CHECK(cell_sum(5, {0, 1, 1, 2}).is_zero());
    CHECK(cell_sum(1, {2}) == M({{4, 2, 1}}));
    CHECK(cell_sum(2, {1, 2}) == M({{6, 3, 1}}));

    // k = 1 is the sum over single cells
    auto one = cell_sum(1, {0, 1, 1, 2});
    CHECK(one == M({{0, 0, 1}, {2, 1, 2}, {4, 2, 1}}));
}

TEST_CASE("hard-coded quadric-surface tables match the cell decomposition")
{
    for (int k = 1; k <= 5; ++k) {
        CatalogKey key = parse_catalog_key("B(" + std::to_string(k) + ",P1xP1);Sign");
        CHECK(bm(key) == cell_sum(k, {0, 1, 1, 2}));
    }
    CHECK(bm("B(2,ConeMinusVertex);Sign") == cell_sum(2, {1, 2}));
    CHECK(cell_sum(3, {1, 2}).is_zero());
    CHECK(bm("B(1,ConeMinusVertex);Sign") == cell_sum(1, {1, 2}));
}

TEST_CASE("les_solve: forced solutions")
{
    // complement of a point in the affine line
    CHECK(les_solve(M({{2, 1, 1}}), GradedTateModule::unit()) == M({{1, 0, 1}, {2, 1, 1}}));
    // suspension of a point class
    CHECK(les_solve(GradedTateModule::zero(), GradedTateModule::unit()) == M({{1, 0, 1}}));
}

TEST_CASE("les_solve: complement of the quadric surface in P3")
{
    auto total = bm("Proj(3);Q");
    auto closed = bm("P1xP1;Q");
    std::map<DegTwist, Int> ranks{{{0, 0}, 1}, {{2, 1}, 1}, {{4, 2}, 1}};
    auto open = les_solve(total, closed, ranks);
    CHECK(open == bm("P3MinusQuadric;Q"));

    // per-twist alternating sums balance
    CHECK(euler(total) == euler(closed) + euler(open));

    // without the ranks the sequence is underdetermined
    CHECK_THROWS_MATCHES(les_solve(total, closed), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.kind() == ErrorKind::Ambiguous; }));
    // a rank above its bound is rejected
    std::map<DegTwist, Int> bad{{{0, 0}, 2}, {{2, 1}, 1}, {{4, 2}, 1}};
    CHECK_THROWS_MATCHES(les_solve(total, closed, bad), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.kind() == ErrorKind::Inconsistent; }));
}

TEST_CASE("les_solve re-derives the twisted pair configurations on C*")
{
    // pairs in C containing the origin form a closed C*; the twisted homology
    // of all pairs in C vanishes, so the boundary map is an isomorphism.
    auto open_sign = les_solve(GradedTateModule::zero(), bm("Torus;Q"));
    CHECK(open_sign == bm("B(2,Torus);Sign"));

    // constant coefficients: pairs in C are C x C* up to homotopy
    auto total = M({{3, 1, 1}, {4, 2, 1}});
    auto open_const = les_solve(total, bm("Torus;Q"));
    CHECK(open_const == bm("B(2,Torus);Q"));

    CHECK(euler(GradedTateModule::zero()) == euler(bm("Torus;Q")) + euler(open_sign));
}

TEST_CASE("les_solve euler identity on random forced instances")
{
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> deg(0, 6);
    std::uniform_int_distribution<int> mult(1, 3);
    for (int trial = 0; trial < 200; ++trial) {
        // closed and total with disjoint twists: everything is forced
        std::vector<WeightedClass> c, t;
        int nc = static_cast<int>(rng() % 4), nt = static_cast<int>(rng() % 4);
        for (int i = 0; i < nc; ++i)
            c.push_back(WeightedClass{deg(rng), 0, Int(mult(rng))});
        for (int i = 0; i < nt; ++i)
            t.push_back(WeightedClass{deg(rng), 1, Int(mult(rng))});
        GradedTateModule closed{std::move(c)}, total{std::move(t)};
        auto open = les_solve(total, closed);
        CHECK(euler(total) == euler(closed) + euler(open));
    }
}

TEST_CASE("cone_open")
{
    CHECK(cone_open(GradedTateModule::unit()).is_zero());
    auto base = M({{0, 0, 1}, {14, 2, 1}, {14, 3, 1}, {17, 4, 2}, {17, 5, 2}, {20, 6, 1}, {20, 7, 1}});
    CHECK(cone_open(base) ==
          M({{15, 2, 1}, {15, 3, 1}, {18, 4, 2}, {18, 5, 2}, {21, 6, 1}, {21, 7, 1}}));
    CHECK(cone_open(M({{0, 0, 2}})) == M({{1, 0, 1}}));
    CHECK_THROWS_MATCHES(cone_open(M({{2, 1, 1}})), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.kind() == ErrorKind::NoPointClass; }));

    // no degree-0 class ever survives
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        std::vector<WeightedClass> cls{WeightedClass{0, 0, Int(1 + rng() % 3)}};
        for (int j = 0; j < static_cast<int>(rng() % 5); ++j)
            cls.push_back(WeightedClass{static_cast<int>(rng() % 20),
                                        static_cast<int>(rng() % 8), Int(1 + rng() % 3)});
        auto out = cone_open(GradedTateModule(std::move(cls)));
        if (!out.is_zero())
            CHECK(out.min_degree() >= 1);
    }
}

TEST_CASE("bundle is the tensor product of the tables")
{
    auto e_base = bundle(bm("P3MinusQuadric;Q"), bm("TripleNonCollinear;W"));
    CHECK(e_base == M({{9, 3, 1}, {12, 5, 2}, {15, 7, 1}}));
    CHECK(bundle(bm("P1xP1;Q"), GradedTateModule::unit()) == bm("P1xP1;Q"));
    CHECK(bundle(bm("P1xP1;Q"), M({{26, 13, 1}})) ==
          M({{26, 13, 1}, {28, 14, 2}, {30, 15, 1}}));
}

TEST_CASE("scripted derivation: non-collinear triples in the complement of a conic")
{
    // ambient ordered triples carry the cube of the twisted pair table on P^1
    auto b2p1 = bm("B(2,Proj(1));Sign");
    auto total = tensor(tensor(b2p1, b2p1), b2p1);
    REQUIRE(total == M({{6, 3, 1}}));

    // collinear locus, filtered: small diagonal; coplanar-with-a-tangent
    // triples; the rest dies in the T system on C*.
    auto delta1 = b2p1; // the small diagonal is a copy of the conic complement
    auto fiber = les_solve(bm("Affine(3);Q"), bm("Affine(1);Q"));
    REQUIRE(fiber == M({{3, 1, 1}, {6, 3, 1}}));
    auto delta2_minus_delta1 = bundle(bm("Proj(1);Q"), fiber);
    REQUIRE(delta2_minus_delta1 == M({{3, 1, 1}, {5, 2, 1}, {6, 3, 1}, {8, 4, 1}}));
    CHECK(bm("Torus;T").is_zero()); // third stratum contributes nothing

    // two-column grid for the collinear locus; its row q=1 is exact since
    // survivors would violate the affine vanishing band downstream
    ColumnContribution c1{"diag", delta1, delta1};
    ColumnContribution c2{"tangent", delta2_minus_delta1, delta2_minus_delta1};
    SSGrid grid({c1, c2}, 16, std::nullopt);
    grid = assert_and_check(
        grid, Assertion::exact_rows({1}, "survivors would sit below the affine vanishing band"));
    auto delta = totalize(grid);
    REQUIRE(delta == M({{5, 2, 1}, {6, 3, 1}, {8, 4, 1}}));

    // localization of the ordered complement against the collinear locus;
    // the degree-6 restriction is an isomorphism (its generator is the
    // S3-invariant fundamental class on both sides)
    auto w_table = les_solve(total, delta, {{{6, 3}, Int(1)}});
    CHECK(w_table == bm("TripleNonCollinear;W"));
}

TEST_CASE("scripted derivation: ordered 4-tuples on P1 via group factorization")
{
    // cohomology of the 3-punctured line times PGL(2); Borel-Moore homology
    // of the smooth 4-fold is BM_k = H^{8-k} twisted by +4
    auto m04 = M({{0, 0, 1}, {1, -1, 2}});
    auto h = tensor(m04, group_cohomology(GroupKey::PGL2));
    GradedTateModule bm_f4;
    for (const auto& c : h.classes())
        bm_f4 = add(bm_f4, GradedTateModule({{8 - c.degree, c.twist + 4, c.mult}}));
    CHECK(bm_f4 == bm("F4P1;Q"));

    // the compact-support flip of the same table has the twists negated
    auto hc = poincare_flip(h, 4);
    for (const auto& c : hc.classes())
        CHECK(bm_f4.multiplicity(c.degree, -c.twist) == c.mult);
}

TEST_CASE("catalog dump lists entries with notes")
{
    auto entries = catalog_entries();
    CHECK(entries.size() >= 15);
    bool found = false;
    for (const auto& e : entries)
        if (e.key.str() == "B(2,Torus);Sign") {
            found = true;
            CHECK(!e.note.empty());
            CHECK(e.table == M({{2, 0, 1}, {3, 1, 1}}));
        }
    CHECK(found);
}
