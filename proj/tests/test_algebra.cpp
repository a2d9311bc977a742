#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "liesym/algebra.hpp"
#include "liesym/verify.hpp"

using namespace liesym;

namespace {

JordanStructure blocks_of(const std::vector<std::pair<long, int>>& spec,
                          FieldTag field = FieldTag::Complex) {
    JordanStructure js;
    js.field = field;
    for (auto [eig, size] : spec)
        js.blocks.push_back({true, Rational(eig), Complex(static_cast<double>(eig), 0), size});
    js.canonicalize();
    return js;
}

}  // namespace

TEST_CASE("worked dimensions", "[algebra]") {
    auto a = build_algebra_exact(blocks_of({{2, 2}, {3, 2}}));
    CHECK(a.dimension() == 13);
    CHECK(a.commutant_dim == 4);
    CHECK(a.classification == Classification::NonNilpotent);

    auto b = build_algebra_exact(blocks_of({{2, 2}, {2, 2}}));
    CHECK(b.dimension() == 17);
    CHECK(b.commutant_dim == 8);

    auto c = build_algebra_exact(blocks_of({{0, 2}, {0, 2}}));
    CHECK(c.dimension() == 18);
    CHECK(c.commutant_dim == 8);
    CHECK(c.classification == Classification::Nilpotent);

    // the dilation field: t d/dt - 2 x1 d1 - 4 x2 d2 - 2 x3 d3 - 4 x4 d4
    const auto& dil = c.generators.back();
    REQUIRE(dil.family == GenFamily::Dilation);
    const auto& q = dil.restricted();
    CHECK(q.c1 == QuadExt(1));
    std::vector<long> expect{-2, -4, -2, -4};
    for (size_t i = 0; i < 4; ++i) CHECK(q.linear(i, i) == QuadExt(Rational(expect[i])));
}

TEST_CASE("scalar structures are routed to the free algebra", "[algebra]") {
    CHECK_THROWS_AS(build_algebra_exact(blocks_of({{5, 1}, {5, 1}, {5, 1}})), ScalarSystemError);
}

TEST_CASE("free algebra families", "[algebra]") {
    for (int n : {1, 2, 3, 4}) {
        auto alg = build_free_algebra(n);
        CHECK(static_cast<long>(alg.dimension()) == static_cast<long>((n + 2) * (n + 2) - 1));
        CHECK(alg.classification == Classification::Free);
    }
    // n = 2: family pattern 1 + n + 1 + n + n + n^2 + n + 1
    auto alg = build_free_algebra(2);
    REQUIRE(alg.dimension() == 15);
    // first generator is d/dt: xi = 1
    const auto& g0 = alg.generators[0].projective();
    CHECK(g0.xi == MultiPoly::constant(3, Rational(1)));
    for (const auto& e : g0.eta) CHECK(e.is_zero());
    // last generator: t^2 d/dt + t x^c d/dx^c
    const auto& gl = alg.generators.back().projective();
    auto t = MultiPoly::variable(3, 0);
    CHECK(gl.xi == t * t);
    CHECK(gl.eta[0] == t * MultiPoly::variable(3, 1));
    CHECK(gl.eta[1] == t * MultiPoly::variable(3, 2));
}

TEST_CASE("dimension shortcut on the bound cases", "[algebra]") {
    auto r1 = dimension_only(blocks_of({{0, 3}}).to_rational_matrix());
    CHECK(r1.dimension == 11);  // 3n + 2
    CHECK(r1.classification == Classification::Nilpotent);

    RatMatrix diag(3, 3);
    diag(0, 0) = Rational(1);
    diag(1, 1) = Rational(2);
    diag(2, 2) = Rational(3);
    auto r2 = dimension_only(diag);
    CHECK(r2.dimension == 10);  // 3n + 1
    CHECK(r2.classification == Classification::NonNilpotent);

    auto r3 = dimension_only(blocks_of({{0, 2}, {0, 1}, {0, 1}, {0, 1}}).to_rational_matrix());
    CHECK(r3.dimension == 29);  // n^2 + 4 at n = 5
    CHECK(r3.commutant_dim == 17);

    auto r4 = dimension_only(Rational(5) * RatMatrix::identity(3));
    CHECK(r4.dimension == 24);  // (n+2)^2 - 1 at n = 3
    CHECK(r4.classification == Classification::Free);

    // irrational eigenvalues still get an exact dimension
    RatMatrix comp(2, 2);
    comp(0, 1) = Rational(1);
    comp(1, 0) = Rational(2);
    auto r5 = dimension_only(comp);
    CHECK(r5.dimension == 7);  // distinct eigenvalues: 3n + 1
}

TEST_CASE("submaximal dimension families", "[algebra]") {
    // n^2 + 3 is reached by one repeated nonzero eigenvalue with a single
    // size-2 block, and by n-1 repeats plus one distinct eigenvalue; both have
    // invariant degrees (2, 1, ..., 1).
    for (int n : {3, 4, 5}) {
        std::vector<std::pair<long, int>> fam1{{7, 2}};
        for (int i = 2; i < n; ++i) fam1.push_back({7, 1});
        auto r1 = dimension_only(blocks_of(fam1).to_rational_matrix());
        CHECK(r1.dimension == static_cast<long>(n) * n + 3);
        CHECK(r1.classification == Classification::NonNilpotent);

        std::vector<std::pair<long, int>> fam2;
        for (int i = 1; i < n; ++i) fam2.push_back({7, 1});
        fam2.push_back({3, 1});
        auto r2 = dimension_only(blocks_of(fam2).to_rational_matrix());
        CHECK(r2.dimension == static_cast<long>(n) * n + 3);
        CHECK(r2.partition == r1.partition);
    }
}

TEST_CASE("attainable dimension sets", "[algebra]") {
    auto d2 = realizable_dimensions(2);
    CHECK(d2 == std::set<long>{7, 8});

    auto d3 = realizable_dimensions(3);
    CHECK(d3 == std::set<long>{10, 11, 12, 13});

    auto d4 = realizable_dimensions(4);
    std::set<long> all_4;
    for (long v = 13; v <= 20; ++v) all_4.insert(v);
    CHECK(d4 == all_4);

    auto d5 = realizable_dimensions(5);
    CHECK(!d5.count(26));
    CHECK(!d5.count(27));
    for (long v = 16; v <= 29; ++v)
        if (v != 26 && v != 27) CHECK(d5.count(v) == 1);

    CHECK_THROWS_AS(realizable_dimensions(1), std::invalid_argument);
    CHECK_THROWS_AS(realizable_dimensions(9), std::invalid_argument);
}

TEST_CASE("similarity lift preserves the symmetry property", "[algebra]") {
    auto alg = build_algebra_exact(blocks_of({{0, 2}}));

    // identity is a no-op
    auto same = lift_by_similarity(alg, RatMatrix::identity(2));
    CHECK(same.system_matrix == alg.system_matrix);

    RatMatrix p(2, 2, {Rational(2), Rational(-1), Rational(3), Rational(1)});
    auto lifted = lift_by_similarity(alg, p);
    // lifted generators solve the conjugated system exactly
    for (const auto& g : lifted.generators)
        CHECK(exact_residual_zero(g.restricted(), lifted.system_matrix));

    RatMatrix singular(2, 2, {Rational(1), Rational(2), Rational(2), Rational(4)});
    CHECK_THROWS_AS(lift_by_similarity(alg, singular), std::invalid_argument);
}

TEST_CASE("block permutation keeps the span", "[algebra]") {
    auto alg = build_algebra_exact(blocks_of({{0, 2}, {0, 2}}));
    RatMatrix p(4, 4);
    p(0, 2) = Rational(1);
    p(1, 3) = Rational(1);
    p(2, 0) = Rational(1);
    p(3, 1) = Rational(1);
    auto lifted = lift_by_similarity(alg, p);
    // swapping equal blocks fixes the system matrix, so the lifted generators
    // are still symmetries of the original system
    CHECK(lifted.system_matrix == alg.system_matrix);
    for (const auto& g : lifted.generators)
        CHECK(exact_residual_zero(g.restricted(), alg.system_matrix));
}

TEST_CASE("generator count always matches the dimension formula", "[algebra]") {
    std::mt19937_64 rng(99);
    for (int k = 0; k < 12; ++k) {
        // random small structure with eigenvalues from a fixed exact set
        JordanStructure js;
        long eigs[] = {-1, 0, 1, 2, 9};
        int n = 0;
        while (n < 2 + static_cast<int>(rng() % 3)) {
            int size = 1 + static_cast<int>(rng() % 2);
            js.blocks.push_back({true, Rational(eigs[rng() % 5]), Complex(0, 0), size});
            n += size;
        }
        js.canonicalize();
        if (js.scalar()) continue;
        auto alg = build_algebra_exact(js);
        auto rep = dimension_only(js);
        CHECK(static_cast<long>(alg.dimension()) == rep.dimension);
        CHECK(alg.commutant_dim == rep.commutant_dim);
    }
}
