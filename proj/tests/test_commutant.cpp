#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "liesym/commutant.hpp"
#include "liesym/counting.hpp"
#include "liesym/structure.hpp"

using namespace liesym;

namespace {

JordanStructure blocks_of(std::initializer_list<std::pair<long, int>> spec,
                          FieldTag field = FieldTag::Complex) {
    JordanStructure js;
    js.field = field;
    for (auto [eig, size] : spec)
        js.blocks.push_back({true, Rational(eig), Complex(static_cast<double>(eig), 0), size});
    js.canonicalize();
    return js;
}

bool commutes(const RatMatrix& d, const RatMatrix& h) { return d * h == h * d; }

}  // namespace

TEST_CASE("commutant basis sizes on the worked structures", "[commutant]") {
    RatMatrix d1 = blocks_of({{2, 2}, {3, 2}}).to_rational_matrix();
    auto b1 = commutant_basis(d1);
    CHECK(b1.size() == 4);
    for (const auto& h : b1) {
        CHECK(commutes(d1, h));
        // distinct eigenvalues: no cross-block coupling and Toeplitz diagonals
        CHECK(h(0, 2).is_zero());
        CHECK(h(0, 3).is_zero());
        CHECK(h(2, 0).is_zero());
        CHECK(h(3, 1).is_zero());
        CHECK(h(0, 0) == h(1, 1));
        CHECK(h(2, 2) == h(3, 3));
        CHECK(h(1, 0).is_zero());
        CHECK(h(3, 2).is_zero());
    }

    RatMatrix d2 = blocks_of({{2, 2}, {2, 2}}).to_rational_matrix();
    auto b2 = commutant_basis(d2);
    CHECK(b2.size() == 8);
    for (const auto& h : b2) CHECK(commutes(d2, h));
    // cross-block couplings are present somewhere in the basis
    bool cross = false;
    for (const auto& h : b2) cross = cross || !h(0, 2).is_zero() || !h(2, 0).is_zero();
    CHECK(cross);

    CHECK(commutant_basis(RatMatrix::identity(2)).size() == 4);
}

TEST_CASE("real rotation structure commutant", "[commutant]") {
    JordanStructure js;
    js.field = FieldTag::Real;
    js.rotations.push_back({true, Rational(1), Rational(1), Complex(1, 1), 1});
    js.blocks.push_back({true, Rational(0), Complex(0, 0), 2});
    js.blocks.push_back({true, Rational(0), Complex(0, 0), 1});
    RatMatrix d = js.to_rational_matrix();
    auto basis = commutant_basis(d);
    CHECK(basis.size() == 7);
    for (const auto& h : basis) CHECK(commutes(d, h));

    // the displayed pattern: rotation cell decouples from the nilpotent part
    for (const auto& h : basis) {
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 2; j < 5; ++j) {
                CHECK(h(i, j).is_zero());
                CHECK(h(j, i).is_zero());
            }
        // rotation cell commuting with R: [[p, q], [-q, p]]
        CHECK(h(0, 0) == h(1, 1));
        CHECK(h(0, 1) == -h(1, 0));
    }
}

TEST_CASE("linear combinations stay in the commutant", "[commutant]") {
    std::mt19937_64 rng(8);
    RatMatrix d = blocks_of({{0, 2}, {0, 2}}).to_rational_matrix();
    auto basis = commutant_basis(d);
    REQUIRE(basis.size() == 8);
    for (int k = 0; k < 10; ++k) {
        RatMatrix combo(4, 4);
        for (const auto& h : basis)
            combo = combo + Rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1) * h;
        CHECK(commutes(d, combo));
    }
}

TEST_CASE("ramp diagonal particular solution", "[commutant]") {
    auto j2 = blocks_of({{0, 2}});
    RatMatrix g = gamma_particular(j2, Rational(1));
    CHECK(g(0, 0) == Rational(1));
    CHECK(g(1, 1) == Rational(2));
    RatMatrix j = j2.to_rational_matrix();
    CHECK(j * g - g * j == j);

    auto j5 = blocks_of({{0, 2}, {0, 2}, {0, 1}});
    RatMatrix g5 = gamma_particular(j5, Rational(-2));
    std::vector<long> expect{-2, -4, -2, -4, -2};
    for (size_t i = 0; i < 5; ++i) CHECK(g5(i, i) == Rational(expect[i]));
    RatMatrix j5m = j5.to_rational_matrix();
    CHECK(j5m * g5 - g5 * j5m == Rational(-2) * j5m);

    CHECK(gamma_particular(j5, Rational(0)).is_zero());
    CHECK_THROWS_AS(gamma_particular(blocks_of({{2, 2}}), Rational(1)), std::domain_error);
}

TEST_CASE("shifted equation is solvable exactly for nilpotent matrices", "[commutant]") {
    RatMatrix j22 = blocks_of({{2, 2}}).to_rational_matrix();
    CHECK(!solve_sylvester_shift(j22, Rational(1)).has_value());

    RatMatrix j30 = blocks_of({{0, 3}}).to_rational_matrix();
    auto h = solve_sylvester_shift(j30, Rational(1));
    REQUIRE(h.has_value());
    CHECK(j30 * *h - *h * j30 == j30);
    // the ramp is one valid answer; the generic solution differs from it by a
    // commuting matrix
    RatMatrix ramp = gamma_particular(blocks_of({{0, 3}}), Rational(1));
    RatMatrix diff = *h - ramp;
    CHECK(j30 * diff == diff * j30);

    // nilpotent but not in canonical form
    std::mt19937_64 rng(11);
    RatMatrix p = RatMatrix::identity(2);
    p(1, 0) = Rational(3);
    p(0, 1) = Rational(-1);
    p(0, 0) = Rational(2);  // det = 2*1 - (-1)*3 = 5
    RatMatrix d = p * blocks_of({{0, 2}}).to_rational_matrix() * *inverse(p);
    auto hs = solve_sylvester_shift(d, Rational(1));
    REQUIRE(hs.has_value());
    CHECK(d * *hs - *hs * d == d);

    // presence tracks nilpotency across a mixed corpus
    for (auto spec : {blocks_of({{0, 2}, {0, 1}}), blocks_of({{1, 2}}), blocks_of({{0, 4}}),
                      blocks_of({{0, 2}, {1, 1}})}) {
        RatMatrix m = spec.to_rational_matrix();
        CHECK(solve_sylvester_shift(m, Rational(2)).has_value() == is_nilpotent(m));
    }
}

TEST_CASE("particular plus commutant element still solves", "[commutant]") {
    auto js = blocks_of({{0, 2}, {0, 2}});
    RatMatrix j = js.to_rational_matrix();
    RatMatrix part = gamma_particular(js, Rational(3));
    auto basis = commutant_basis(j);
    std::mt19937_64 rng(21);
    for (int k = 0; k < 5; ++k) {
        RatMatrix h = part;
        for (const auto& b : basis)
            h = h + Rational(static_cast<long>(rng() % 7) - 3) * b;
        CHECK(j * h - h * j == Rational(3) * j);
    }
}

TEST_CASE("commutant count matches the degree formula over a corpus", "[commutant]") {
    std::mt19937_64 rng(1212);
    for (int k = 0; k < 25; ++k) {
        size_t n = 2 + rng() % 3;
        RatMatrix d(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) d(i, j) = Rational(static_cast<long>(rng() % 5) - 2);
        auto basis = commutant_basis(d);
        CHECK(static_cast<long>(basis.size()) ==
              commutant_dim_from_partition(smith_invariant_factors(d).degrees));
        for (const auto& h : basis) CHECK(commutes(d, h));
    }
}
