#include <catch2/catch_amalgamated.hpp>

#include "liesym/closure.hpp"
#include "liesym/report.hpp"

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

JordanStructure example2_structure() {
    JordanStructure js;
    js.field = FieldTag::Real;
    js.rotations.push_back({true, Rational(1), Rational(1), Complex(1, 1), 1});
    js.blocks.push_back({true, Rational(0), Complex(0, 0), 2});
    js.blocks.push_back({true, Rational(0), Complex(0, 0), 1});
    return js;
}

}  // namespace

TEST_CASE("pointwise residuals on the real worked system", "[verification]") {
    auto alg = build_algebra_numeric(example2_structure());
    auto pts = sample_points(2024, 20, 5);
    const auto& j = alg.system_matrix;

    // x^4 d/dx^3 is a symmetry of that system
    VectorField<Complex> good = VectorField<Complex>::zero(5);
    good.linear(2, 3) = Complex(1, 0);
    CHECK(max_abs(residual(Generator<Complex>{GenFamily::Commutant, good}, j, pts)) < 1e-12);

    // x^3 d/dx^4 is not
    VectorField<Complex> bad = VectorField<Complex>::zero(5);
    bad.linear(3, 2) = Complex(1, 0);
    CHECK(max_abs(residual(Generator<Complex>{GenFamily::Commutant, bad}, j, pts)) > 0.1);

    // time translation always is, for an autonomous system
    CHECK(max_abs(residual(Generator<Complex>{GenFamily::TimeTranslation,
                                              VectorField<Complex>::time_translation(5)},
                           j, pts)) < 1e-12);
}

TEST_CASE("projective generator residual on the free system", "[verification]") {
    // t^2 d/dt + t x^c d/dx^c on x'' = 0
    const size_t vars = 3;
    ProjectiveVectorField q;
    auto t = MultiPoly::variable(vars, 0);
    q.xi = t * t;
    q.eta = {t * MultiPoly::variable(vars, 1), t * MultiPoly::variable(vars, 2)};

    Matrix<Complex> zero(2, 2);
    auto pts = sample_points(7, 20, 2);
    CHECK(max_abs(residual(Generator<QuadExt>{GenFamily::Projective, q}, zero, pts)) < 1e-12);
    CHECK(exact_residual_zero(q, RatMatrix(2, 2)));

    // the same field is not a symmetry of x'' = x
    Matrix<Complex> eye = Matrix<Complex>::identity(2);
    CHECK(max_abs(residual(Generator<QuadExt>{GenFamily::Projective, q}, eye, pts)) > 0.1);
    CHECK(!exact_residual_zero(q, RatMatrix::identity(2)));
}

TEST_CASE("brackets of the standard families", "[verification]") {
    auto alg = build_algebra_exact(blocks_of({{0, 2}, {0, 2}}));

    const VectorField<QuadExt>* dilation = nullptr;
    const VectorField<QuadExt>* translation = nullptr;
    for (const auto& g : alg.generators) {
        if (g.family == GenFamily::Dilation) dilation = &g.restricted();
        if (g.family == GenFamily::TimeTranslation) translation = &g.restricted();
    }
    REQUIRE(dilation);
    REQUIRE(translation);

    // [D, T] = -T
    auto dt = lie_bracket(*dilation, *translation);
    CHECK(dt.c1.is_zero());
    CHECK(dt.c0 == QuadExt(-1));
    CHECK(dt.linear.is_zero());
    for (const auto& p : dt.drift) CHECK(p.is_zero());

    // [T, X] carries the derivative of the solution
    const auto& sol = alg.generators[0].restricted();
    auto tx = lie_bracket(*translation, sol);
    for (int b = 0; b < 4; ++b)
        CHECK(tx.drift[static_cast<size_t>(b)] == sol.drift[static_cast<size_t>(b)].derivative());

    // [H, K] is a pure linear field with the reversed matrix commutator
    const auto& h1 = alg.generators[8].restricted();
    const auto& h2 = alg.generators[9].restricted();
    REQUIRE(alg.generators[8].family == GenFamily::Commutant);
    auto hh = lie_bracket(h1, h2);
    CHECK(hh.linear == h2.linear * h1.linear - h1.linear * h2.linear);
    for (const auto& p : hh.drift) CHECK(p.is_zero());

    // solution fields commute
    auto xx = lie_bracket(sol, alg.generators[1].restricted());
    CHECK(xx.is_zero());
}

TEST_CASE("closure of the worked algebras", "[verification]") {
    CHECK(closure_check(build_algebra_exact(blocks_of({{2, 2}, {3, 2}}))).ok());
    CHECK(closure_check(build_algebra_exact(blocks_of({{0, 2}, {0, 2}}))).ok());
    for (int n = 1; n <= 5; ++n) CHECK(closure_check(build_free_algebra(n)).ok());

    // an injected non-symmetry breaks closure
    auto alg = build_algebra_numeric(example2_structure());
    CHECK(closure_check(alg).ok());
    VectorField<Complex> bad = VectorField<Complex>::zero(5);
    bad.linear(3, 2) = Complex(1, 0);
    alg.generators.push_back({GenFamily::Commutant, bad});
    auto rep = closure_check(alg);
    CHECK(!rep.ok());
}

TEST_CASE("mixed-extension algebra closes", "[verification]") {
    // eigenvalues 2 and -1: drifts live in different quadratic extensions
    auto alg = build_algebra_exact(blocks_of({{2, 2}, {-1, 1}}));
    CHECK(static_cast<long>(alg.dimension()) == 2 * 3 + alg.commutant_dim + 1);
    CHECK(closure_check(alg).ok());
    auto rep = verify_algebra(alg, 10, 5);
    CHECK(rep.pass);
}

TEST_CASE("commutant count triple", "[verification]") {
    auto c1 = cross_check_commutant(blocks_of({{2, 2}, {3, 2}}).to_rational_matrix());
    CHECK(c1.from_kernel == 4);
    CHECK(c1.from_partition == 4);
    REQUIRE(c1.from_divisors.has_value());
    CHECK(*c1.from_divisors == 4);

    RatMatrix comp(2, 2);
    comp(0, 1) = Rational(1);
    comp(1, 0) = Rational(2);
    auto c2 = cross_check_commutant(comp);
    CHECK(c2.from_kernel == 2);
    CHECK(c2.from_partition == 2);
    CHECK(!c2.from_divisors.has_value());

    auto c3 = cross_check_commutant(RatMatrix::identity(3));
    CHECK(c3.from_kernel == 9);
    CHECK(c3.from_partition == 9);
    REQUIRE(c3.from_divisors.has_value());
    CHECK(*c3.from_divisors == 9);
}

TEST_CASE("two residual code paths agree", "[verification]") {
    auto alg = build_algebra_exact(blocks_of({{2, 2}, {0, 2}}));
    auto epts = exact_sample_points(31, 6, 4);
    for (const auto& g : alg.generators)
        for (const auto& p : epts) CHECK(two_path_agree_exact(g.restricted(), alg.system_matrix, p));

    auto numeric = build_algebra_numeric(example2_structure());
    auto pts = sample_points(12, 20, 5);
    for (const auto& g : numeric.generators)
        CHECK(two_path_disagreement(g.restricted(), numeric.system_matrix, pts) < 1e-12);
}

TEST_CASE("full verification reports", "[verification]") {
    auto rep = verify_algebra(build_algebra_exact(blocks_of({{2, 2}, {3, 2}})), 20, 11);
    CHECK(rep.pass);
    CHECK(rep.closure.ok());
    CHECK(rep.counts.consistent());
    for (double r : rep.max_residuals) CHECK(r < 1e-9);

    auto nrep = verify_algebra(build_algebra_numeric(example2_structure()), 20, 11, 1e-9);
    CHECK(nrep.pass);

    // tampering is detected and indexed
    auto tampered = build_algebra_numeric(example2_structure());
    VectorField<Complex> bad = VectorField<Complex>::zero(5);
    bad.linear(3, 2) = Complex(1, 0);
    tampered.generators[4] = {GenFamily::Commutant, bad};
    auto brep = verify_algebra(tampered, 20, 11, 1e-9);
    CHECK(!brep.pass);
    REQUIRE(brep.first_failed_generator.has_value());
    CHECK(*brep.first_failed_generator == 4);
}

TEST_CASE("sampling is deterministic", "[verification]") {
    auto a = sample_points(123, 5, 3);
    auto b = sample_points(123, 5, 3);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].t == b[i].t);
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].v == b[i].v);
        for (double c : a[i].x) {
            CHECK(c >= -1.0);
            CHECK(c <= 1.0);
        }
    }
    auto c = sample_points(124, 5, 3);
    CHECK(a[0].t != c[0].t);
}
