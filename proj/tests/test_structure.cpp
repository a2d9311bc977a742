#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "liesym/counting.hpp"
#include "liesym/smith.hpp"
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

RatMatrix random_unimodular(std::mt19937_64& rng, size_t n) {
    // lower * upper triangular with unit diagonals: determinant one, exact inverse
    RatMatrix lo = RatMatrix::identity(n), up = RatMatrix::identity(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i > j) lo(i, j) = Rational(static_cast<long>(rng() % 5) - 2);
            if (i < j) up(i, j) = Rational(static_cast<long>(rng() % 5) - 2);
        }
    return lo * up;
}

/// Independent characteristic polynomial by Laplace expansion of x*E - D.
UniPoly charpoly_by_expansion(const RatMatrix& d) {
    const size_t n = d.rows();
    PolyMatrix m = characteristic_matrix(d);
    std::vector<size_t> cols(n);
    for (size_t j = 0; j < n; ++j) cols[j] = j;
    auto rec = [&](auto&& self, size_t row, std::vector<size_t> active) -> UniPoly {
        if (active.empty()) return UniPoly::constant(Rational(1));
        UniPoly det;
        for (size_t k = 0; k < active.size(); ++k) {
            if (m(row, active[k]).is_zero()) continue;
            std::vector<size_t> rest;
            for (size_t l = 0; l < active.size(); ++l)
                if (l != k) rest.push_back(active[l]);
            UniPoly term = m(row, active[k]) * self(self, row + 1, rest);
            det = (k % 2 == 0) ? det + term : det - term;
        }
        return det;
    };
    return rec(rec, 0, cols);
}

}  // namespace

TEST_CASE("system reduction", "[structure]") {
    RatMatrix z(2, 2), d0(2, 2);
    d0(0, 0) = Rational(1);
    d0(1, 1) = Rational(7);
    CHECK(reduce_system(z, d0) == d0);

    RatMatrix e = RatMatrix::identity(2);
    RatMatrix b(2, 2);
    b(0, 0) = Rational(2);
    b(1, 1) = Rational(3);
    RatMatrix d = reduce_system(e, b);
    CHECK(d(0, 0) == Rational(1));
    CHECK(d(1, 1) == Rational(2));

    RatMatrix nil(2, 2);
    nil(0, 1) = Rational(1);
    CHECK(reduce_system(nil, RatMatrix::identity(2)) == RatMatrix::identity(2));

    RatMatrix nc(2, 2);
    nc(0, 0) = Rational(1);
    nc(1, 1) = Rational(2);
    CHECK_THROWS_AS(reduce_system(nil, nc), NonCommutingError);
}

TEST_CASE("invariant factors of the worked structures", "[structure]") {
    auto inv1 = smith_invariant_factors(blocks_of({{2, 2}, {3, 2}}).to_rational_matrix());
    REQUIRE(inv1.count() == 1);
    CHECK(inv1.degrees == std::vector<int>{4});
    UniPoly expect = UniPoly::linear_root(Rational(2)) * UniPoly::linear_root(Rational(2)) *
                     UniPoly::linear_root(Rational(3)) * UniPoly::linear_root(Rational(3));
    CHECK(inv1.factors[0] == expect);

    auto inv2 = smith_invariant_factors(blocks_of({{2, 2}, {2, 2}}).to_rational_matrix());
    REQUIRE(inv2.count() == 2);
    CHECK(inv2.degrees == std::vector<int>{2, 2});
    UniPoly sq = UniPoly::linear_root(Rational(2)) * UniPoly::linear_root(Rational(2));
    CHECK(inv2.factors[0] == sq);
    CHECK(inv2.factors[1] == sq);

    auto inv3 = smith_invariant_factors(Rational(1) * RatMatrix::identity(3));
    REQUIRE(inv3.count() == 3);
    CHECK(inv3.degrees == std::vector<int>{1, 1, 1});
    for (const auto& f : inv3.factors) CHECK(f == UniPoly::linear_root(Rational(1)));
}

TEST_CASE("invariant factor chain, product and similarity invariance", "[structure]") {
    std::mt19937_64 rng(424242);
    for (int k = 0; k < 25; ++k) {
        size_t n = 2 + rng() % 3;
        RatMatrix d(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) d(i, j) = Rational(static_cast<long>(rng() % 7) - 3);

        auto inv = smith_invariant_factors(d);
        // each factor divides its predecessor and all are monic
        for (size_t i = 0; i + 1 < inv.count(); ++i) CHECK(inv.factors[i + 1].divides(inv.factors[i]));
        int total = 0;
        UniPoly prod = UniPoly::constant(Rational(1));
        for (const auto& f : inv.factors) {
            CHECK(f.is_monic());
            total += f.degree();
            prod = prod * f;
        }
        CHECK(total == static_cast<int>(n));
        CHECK(prod == charpoly_by_expansion(d));

        RatMatrix p = random_unimodular(rng, n);
        RatMatrix conj = p * d * *inverse(p);
        CHECK(smith_invariant_factors(conj).degrees == inv.degrees);
    }
}

TEST_CASE("commutant counts from partition", "[structure]") {
    CHECK(commutant_dim_from_partition({4}) == 4);
    CHECK(commutant_dim_from_partition({2, 2}) == 8);
    CHECK(commutant_dim_from_partition({1, 1, 1, 1}) == 16);       // n^2 at n = 4
    CHECK(commutant_dim_from_partition({2, 1, 1}) == 10);          // n^2 - 2n + 2 at n = 4
    CHECK_THROWS_AS(commutant_dim_from_partition({1, 2}), std::invalid_argument);
}

TEST_CASE("commutant counts from elementary divisors", "[structure]") {
    CHECK(commutant_dim_from_divisors({{0, 2}, {1, 2}}) == 4);
    CHECK(commutant_dim_from_divisors({{0, 2}, {0, 2}}) == 8);

    // diagonal case: sum of squared multiplicities
    std::mt19937_64 rng(7);
    for (int k = 0; k < 20; ++k) {
        std::vector<std::pair<int, int>> divisors;
        long expect = 0;
        int groups = 1 + static_cast<int>(rng() % 4);
        for (int g = 0; g < groups; ++g) {
            int mult = 1 + static_cast<int>(rng() % 4);
            expect += static_cast<long>(mult) * mult;
            for (int i = 0; i < mult; ++i) divisors.emplace_back(g, 1);
        }
        CHECK(commutant_dim_from_divisors(divisors) == expect);
    }

    // single eigenvalue: both routes agree with sum (2i-1) k_i
    for (int k = 0; k < 20; ++k) {
        std::vector<int> sizes;
        int s = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < s; ++i) sizes.push_back(1 + static_cast<int>(rng() % 4));
        std::sort(sizes.rbegin(), sizes.rend());
        long expect = 0;
        std::vector<std::pair<int, int>> divisors;
        for (size_t i = 0; i < sizes.size(); ++i) {
            expect += static_cast<long>(2 * i + 1) * sizes[i];
            divisors.emplace_back(0, sizes[i]);
        }
        CHECK(commutant_dim_from_divisors(divisors) == expect);
        CHECK(commutant_dim_from_partition(sizes) == expect);
    }
}

TEST_CASE("jordan structure recovery", "[structure]") {
    auto canonical = blocks_of({{0, 2}, {0, 1}, {0, 1}});
    auto js = jordan_structure(canonical.to_rational_matrix(), FieldTag::Complex);
    REQUIRE(js.blocks.size() == 3);
    CHECK(js.blocks[0].size == 2);
    CHECK(js.blocks[1].size == 1);
    CHECK(js.blocks[2].size == 1);
    CHECK(js.exact());

    std::mt19937_64 rng(31337);
    RatMatrix p = random_unimodular(rng, 4);
    RatMatrix d = *inverse(p) * blocks_of({{2, 2}, {3, 2}}).to_rational_matrix() * p;
    auto rec = jordan_structure(d, FieldTag::Complex);
    REQUIRE(rec.blocks.size() == 2);
    CHECK(rec.blocks[0].eig == Rational(2));
    CHECK(rec.blocks[0].size == 2);
    CHECK(rec.blocks[1].eig == Rational(3));
    CHECK(rec.blocks[1].size == 2);
}

TEST_CASE("real-field recovery merges conjugate pairs", "[structure]") {
    JordanStructure src;
    src.field = FieldTag::Real;
    src.rotations.push_back({true, Rational(1), Rational(1), Complex(1, 1), 1});
    src.blocks.push_back({true, Rational(0), Complex(0, 0), 2});
    src.blocks.push_back({true, Rational(0), Complex(0, 0), 1});
    RatMatrix d = src.to_rational_matrix();

    auto js = jordan_structure(d, FieldTag::Real);
    REQUIRE(js.rotations.size() == 1);
    CHECK(js.rotations[0].size == 1);
    CHECK(!js.rotations[0].exact);
    CHECK(std::abs(js.rotations[0].pair_numeric - Complex(1, 1)) < 1e-9);
    REQUIRE(js.blocks.size() == 2);
    CHECK(js.blocks[0].size == 2);
    CHECK(js.blocks[1].size == 1);
    CHECK(!js.exact());

    // same matrix over the complex field keeps the pair separate
    auto jc = jordan_structure(d, FieldTag::Complex);
    CHECK(jc.rotations.empty());
    CHECK(jc.blocks.size() == 4);
}

TEST_CASE("nilpotency and scalarity", "[structure]") {
    CHECK(is_nilpotent(blocks_of({{0, 2}, {0, 1}}).to_rational_matrix()));
    CHECK(!is_nilpotent(blocks_of({{2, 2}, {3, 2}}).to_rational_matrix()));

    RatMatrix d(2, 2, {Rational(2), Rational(-4), Rational(1), Rational(-2)});
    CHECK(is_nilpotent(d));  // squares to zero

    CHECK(is_scalar(RatMatrix(3, 3)));
    CHECK(is_scalar(Rational(5) * RatMatrix::identity(3)));
    CHECK(!is_scalar(blocks_of({{0, 2}}).to_rational_matrix()));
}

TEST_CASE("commutant dimension parity and bounds", "[structure]") {
    std::mt19937_64 rng(2025);
    for (int k = 0; k < 40; ++k) {
        size_t n = 2 + rng() % 4;
        RatMatrix d(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) d(i, j) = Rational(static_cast<long>(rng() % 7) - 3);
        long N = commutant_dim_from_partition(smith_invariant_factors(d).degrees);
        CHECK((N - static_cast<long>(n)) % 2 == 0);
        CHECK(N >= static_cast<long>(n));
        CHECK(N <= static_cast<long>(n * n));
        // N = n exactly when there is a single invariant factor
        CHECK((N == static_cast<long>(n)) == (smith_invariant_factors(d).count() == 1));
    }
}

TEST_CASE("block sizes reproduce elementary divisors of invariant factors", "[structure]") {
    auto js = blocks_of({{2, 3}, {2, 1}, {5, 2}});
    RatMatrix d = js.to_rational_matrix();
    auto inv = smith_invariant_factors(d);
    // expected: I1 = (x-2)^3 (x-5)^2, I2 = (x-2)
    REQUIRE(inv.count() == 2);
    CHECK(inv.degrees == std::vector<int>{5, 1});
    auto recovered = jordan_structure(d, FieldTag::Complex);
    REQUIRE(recovered.blocks.size() == 3);
    CHECK(recovered.blocks[0].eig == Rational(2));
    CHECK(recovered.blocks[0].size == 3);
    CHECK(recovered.blocks[1].size == 1);
    CHECK(recovered.blocks[2].eig == Rational(5));
    CHECK(recovered.blocks[2].size == 2);
}

TEST_CASE("numeric eigenvalue fallback", "[structure]") {
    // companion matrix of x^2 - 2: irrational pair, exact structure flags off
    RatMatrix d(2, 2);
    d(0, 1) = Rational(1);
    d(1, 0) = Rational(2);
    auto js = jordan_structure(d, FieldTag::Complex);
    CHECK(!js.exact());
    REQUIRE(js.blocks.size() == 2);
    CHECK(js.blocks[0].size == 1);
    CHECK(js.blocks[1].size == 1);
    CHECK(std::abs(js.blocks[0].eig_numeric.real() + std::sqrt(2.0)) < 1e-9);
    CHECK(std::abs(js.blocks[1].eig_numeric.real() - std::sqrt(2.0)) < 1e-9);
}
