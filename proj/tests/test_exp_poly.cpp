#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "liesym/exp_poly.hpp"
#include "liesym/fundamental.hpp"

using namespace liesym;

namespace {

using EP = ExpPoly<QuadExt>;

EP t_pow(int k) { return EP::term(QuadExt(1), k, QuadExt(0)); }

JordanStructure blocks_of(std::initializer_list<std::pair<long, int>> spec,
                          FieldTag field = FieldTag::Complex) {
    JordanStructure js;
    js.field = field;
    for (auto [eig, size] : spec)
        js.blocks.push_back({true, Rational(eig), Complex(static_cast<double>(eig), 0), size});
    js.canonicalize();
    return js;
}

}  // namespace

TEST_CASE("derivatives of monomials and exponentials", "[exp_poly]") {
    CHECK(t_pow(3).derivative() == QuadExt(3) * t_pow(2));

    QuadExt mu = QuadExt::sqrt_of(Rational(2));
    EP te = EP::term(QuadExt(1), 1, mu);  // t e^{mu t}
    EP expect = EP::term(QuadExt(1), 0, mu) + EP::term(mu, 1, mu);
    CHECK(te.derivative() == expect);

    // second derivative: (mu^2 t + 2 mu) e^{mu t}
    EP second = te.derivative().derivative();
    EP expect2 = EP::term(mu * mu, 1, mu) + EP::term(QuadExt(2) * mu, 0, mu);
    CHECK(second == expect2);
}

TEST_CASE("derivative is linear", "[exp_poly]") {
    std::mt19937_64 rng(5);
    QuadExt mu = QuadExt::sqrt_of(Rational(3));
    for (int k = 0; k < 20; ++k) {
        QuadExt a(Rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 4) + 1));
        QuadExt b(Rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 4) + 1));
        EP f = EP::term(QuadExt(2), 2, mu) + t_pow(1);
        EP g = EP::term(QuadExt(Rational(1, 2)), 1, -mu) + EP::constant(QuadExt(3));
        CHECK((a * f + b * g).derivative() == a * f.derivative() + b * g.derivative());
    }
}

TEST_CASE("trig term calculus", "[exp_poly]") {
    QuadExt w = QuadExt::sqrt_of(Rational(2));
    EP coswt = EP::trig_term(QuadExt(1), 0, QuadExt(0), w, Trig::Cos);
    EP sinwt = EP::trig_term(QuadExt(1), 0, QuadExt(0), w, Trig::Sin);
    CHECK(coswt.derivative() == -w * sinwt);
    CHECK(sinwt.derivative() == w * coswt);
    // cos(-w t) canonicalizes to cos(w t), sin flips sign
    CHECK(EP::trig_term(QuadExt(1), 0, QuadExt(0), -w, Trig::Cos) == coswt);
    CHECK(EP::trig_term(QuadExt(1), 0, QuadExt(0), -w, Trig::Sin) == -sinwt);
    // oscillation rate zero collapses
    CHECK(EP::trig_term(QuadExt(1), 2, QuadExt(0), QuadExt(0), Trig::Cos) == t_pow(2));
    CHECK(EP::trig_term(QuadExt(1), 2, QuadExt(0), QuadExt(0), Trig::Sin).is_zero());
}

TEST_CASE("resonant solver on the worked cases", "[exp_poly]") {
    // lambda = 0, f = 1 -> t^2/2
    EP g1 = solve_resonant(QuadExt(0), EP::constant(QuadExt(1)));
    CHECK(g1 == QuadExt(Rational(1, 2)) * t_pow(2));

    // lambda = 1, f = e^t -> (t/2) e^t
    EP g2 = solve_resonant(QuadExt(1), EP::term(QuadExt(1), 0, QuadExt(1)));
    CHECK(g2 == EP::term(QuadExt(Rational(1, 2)), 1, QuadExt(1)));

    // lambda = 0, f = t -> t^3/6
    EP g3 = solve_resonant(QuadExt(0), t_pow(1));
    CHECK(g3 == QuadExt(Rational(1, 6)) * t_pow(3));

    // frequency outside the block closure
    CHECK_THROWS_AS(solve_resonant(QuadExt(1), EP::term(QuadExt(1), 0, QuadExt(2))),
                    std::domain_error);
}

TEST_CASE("resonant solver verified by substitution", "[exp_poly]") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 25; ++k) {
        long lv = static_cast<long>(rng() % 9) - 4;
        QuadExt lambda{Rational(lv)};
        QuadExt mu = QuadExt::sqrt_of(Rational(lv));
        EP f;
        int parts = 1 + static_cast<int>(rng() % 3);
        for (int p = 0; p < parts; ++p) {
            QuadExt c(Rational(static_cast<long>(rng() % 9) - 4));
            if (c.is_zero()) c = QuadExt(1);
            int pw = static_cast<int>(rng() % 3);
            switch (rng() % 3) {
                case 0: f += EP::term(c, pw, QuadExt(0)); break;
                case 1: f += c * t_pow(pw) * EP::term(QuadExt(1), 0, mu); break;
                default: f += c * t_pow(pw) * EP::term(QuadExt(1), 0, -mu); break;
            }
        }
        if (f.is_zero()) continue;
        EP g = solve_resonant(lambda, f);  // throws internally if substitution fails
        CHECK((g.derivative().derivative() - lambda * g - f).is_zero());
    }
}

TEST_CASE("real resonance with trig forcing", "[exp_poly]") {
    // lambda = -1, f = cos t -> (t/2) sin t
    QuadExt one(1);
    EP f = EP::trig_term(one, 0, QuadExt(0), one, Trig::Cos);
    EP g = solve_resonant(QuadExt(-1), f);
    CHECK(g == EP::trig_term(QuadExt(Rational(1, 2)), 1, QuadExt(0), one, Trig::Sin));

    // lambda = -2 with irrational frequency sqrt(2)
    QuadExt w = QuadExt::sqrt_of(Rational(2));
    EP f2 = EP::trig_term(QuadExt(3), 1, QuadExt(0), w, Trig::Sin);
    EP g2 = solve_resonant(QuadExt(-2), f2);
    CHECK((g2.derivative().derivative() + QuadExt(2) * g2 - f2).is_zero());
}

TEST_CASE("real and imaginary split", "[exp_poly]") {
    // e^{i t} = cos t + i sin t
    QuadExt i = QuadExt::sqrt_of(Rational(-1));
    auto [re, im] = split_real_imag(EP::term(QuadExt(1), 0, i));
    CHECK(re == EP::trig_term(QuadExt(1), 0, QuadExt(0), QuadExt(1), Trig::Cos));
    CHECK(im == EP::trig_term(QuadExt(1), 0, QuadExt(0), QuadExt(1), Trig::Sin));

    // e^{sqrt(-2) t}: oscillation rate sqrt(2)
    QuadExt mu = QuadExt::sqrt_of(Rational(-2));
    QuadExt w = QuadExt::sqrt_of(Rational(2));
    auto [re2, im2] = split_real_imag(EP::term(QuadExt(1), 0, mu));
    CHECK(re2 == EP::trig_term(QuadExt(1), 0, QuadExt(0), w, Trig::Cos));
    CHECK(im2 == EP::trig_term(QuadExt(1), 0, QuadExt(0), w, Trig::Sin));

    // a complex coefficient mixes into both parts
    auto [re3, im3] = split_real_imag(EP::term(i, 0, i));  // i e^{it} = -sin t + i cos t
    CHECK(re3 == -EP::trig_term(QuadExt(1), 0, QuadExt(0), QuadExt(1), Trig::Sin));
    CHECK(im3 == EP::trig_term(QuadExt(1), 0, QuadExt(0), QuadExt(1), Trig::Cos));
}

TEST_CASE("fundamental system of a size-2 nilpotent block", "[exp_poly]") {
    auto fs = fundamental_system_exact(blocks_of({{0, 2}}));
    REQUIRE(fs.solutions.size() == 4);
    // start level 2 chains (t seed then constant seed), then level 1
    CHECK(fs.solutions[0][0] == QuadExt(Rational(1, 6)) * t_pow(3));
    CHECK(fs.solutions[0][1] == t_pow(1));
    CHECK(fs.solutions[1][0] == QuadExt(Rational(1, 2)) * t_pow(2));
    CHECK(fs.solutions[1][1] == EP::constant(QuadExt(1)));
    CHECK(fs.solutions[2][0] == t_pow(1));
    CHECK(fs.solutions[2][1].is_zero());
    CHECK(fs.solutions[3][0] == EP::constant(QuadExt(1)));
    CHECK(fs.solutions[3][1].is_zero());
    CHECK(initial_data_nonsingular(fs));
}

TEST_CASE("fundamental system of a nonzero eigenvalue block", "[exp_poly]") {
    auto fs = fundamental_system_exact(blocks_of({{2, 2}}));
    REQUIRE(fs.solutions.size() == 4);
    QuadExt mu = QuadExt::sqrt_of(Rational(2));
    // the level-2 chain seeded by e^{mu t}: ((t / 2mu) e^{mu t}, e^{mu t})
    CHECK(fs.solutions[0][1] == EP::term(QuadExt(1), 0, mu));
    CHECK(fs.solutions[0][0] == EP::term(QuadExt(1) / (QuadExt(2) * mu), 1, mu));
    CHECK(initial_data_nonsingular(fs));

    // substitution identity for the whole system
    RatMatrix j = blocks_of({{2, 2}}).to_rational_matrix();
    for (const auto& sol : fs.solutions) {
        for (int b = 0; b < 2; ++b) {
            EP r = sol[static_cast<size_t>(b)].derivative().derivative();
            for (int a = 0; a < 2; ++a)
                r -= QuadExt(j(static_cast<size_t>(b), static_cast<size_t>(a))) * sol[static_cast<size_t>(a)];
            CHECK(r.is_zero());
        }
    }
}

TEST_CASE("scalar block with unit eigenvalue", "[exp_poly]") {
    JordanStructure js = blocks_of({{1, 1}, {1, 1}});
    auto fs = fundamental_system_exact(js);
    REQUIRE(fs.solutions.size() == 4);
    CHECK(fs.solutions[0][0] == EP::term(QuadExt(1), 0, QuadExt(1)));
    CHECK(fs.solutions[1][0] == EP::term(QuadExt(1), 0, QuadExt(-1)));
}

TEST_CASE("real negative eigenvalue gives trig chains", "[exp_poly]") {
    auto js = blocks_of({{-1, 2}}, FieldTag::Real);
    auto fs = fundamental_system_exact(js);
    REQUIRE(fs.solutions.size() == 4);
    RatMatrix j = js.to_rational_matrix();
    for (const auto& sol : fs.solutions) {
        for (int b = 0; b < 2; ++b) {
            EP r = sol[static_cast<size_t>(b)].derivative().derivative();
            for (int a = 0; a < 2; ++a)
                r -= QuadExt(j(static_cast<size_t>(b), static_cast<size_t>(a))) * sol[static_cast<size_t>(a)];
            CHECK(r.is_zero());
        }
        for (const auto& comp : sol)
            for (const auto& term : comp.terms()) CHECK(term.trig != Trig::None);
    }
    CHECK(initial_data_nonsingular(fs));
}

TEST_CASE("rotation block solutions", "[exp_poly]") {
    JordanStructure js;
    js.field = FieldTag::Real;
    js.rotations.push_back({true, Rational(1), Rational(1), Complex(1, 1), 1});
    auto fs = fundamental_system_numeric(js);
    REQUIRE(fs.solutions.size() == 4);
    CHECK(initial_data_nonsingular(fs));

    Matrix<Complex> j = js.to_numeric_matrix();
    const Complex root = std::sqrt(Complex(1, -1));
    for (const auto& sol : fs.solutions) {
        // e^{±alpha t} cos/sin structure: rates are ±Re sqrt(1 - i)
        for (const auto& comp : sol)
            for (const auto& term : comp.terms()) {
                CHECK(term.trig != Trig::None);
                CHECK(std::abs(std::abs(term.rate.real()) - std::abs(root.real())) < 1e-12);
                CHECK(std::abs(std::abs(term.osc.real()) - std::abs(root.imag())) < 1e-12);
            }
        for (double t : {0.25, -0.6, 1.5}) {
            for (int b = 0; b < 2; ++b) {
                Complex lhs = sol[static_cast<size_t>(b)].derivative().derivative().eval(Complex(t, 0));
                Complex rhs = 0;
                for (int a = 0; a < 2; ++a)
                    rhs += j(static_cast<size_t>(b), static_cast<size_t>(a)) * sol[static_cast<size_t>(a)].eval(Complex(t, 0));
                CHECK(std::abs(lhs - rhs) < 1e-12);
            }
        }
    }
}

TEST_CASE("numeric product guard", "[exp_poly]") {
    EP e1 = EP::term(QuadExt(1), 0, QuadExt(1));
    CHECK_THROWS_AS(e1 * e1, std::domain_error);
    CHECK((t_pow(2) * e1).terms().size() == 1);
}
