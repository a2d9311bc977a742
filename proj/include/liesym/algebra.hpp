#pragma once

#include <stdexcept>
#include <vector>

#include "liesym/commutant.hpp"
#include "liesym/counting.hpp"
#include "liesym/fundamental.hpp"
#include "liesym/multipoly.hpp"
#include "liesym/vector_field.hpp"

namespace liesym {

struct ScalarSystemError : std::runtime_error {
    ScalarSystemError()
        : std::runtime_error("scalar matrix: the system is point-equivalent to the free one; "
                             "use the free-system algebra") {}
};

namespace detail {

template <class S>
S from_rational(const Rational& r);
template <>
inline QuadExt from_rational<QuadExt>(const Rational& r) { return QuadExt(r); }
template <>
inline Complex from_rational<Complex>(const Rational& r) { return {r.to_double(), 0.0}; }

template <class S>
Matrix<S> matrix_from_rational(const RatMatrix& m) {
    return m.template map<S>([](const Rational& x) { return from_rational<S>(x); });
}

/// Shared assembly: 2n solution fields, N commutant fields, time translation,
/// and the dilation field t d/dt - 2 gamma x . d/dx in the nilpotent case.
template <class S>
SymmetryAlgebra<S> assemble(const JordanStructure& js, FundamentalSystem<S> fs,
                            const std::vector<RatMatrix>& commutant, bool exact_mode) {
    const int n = js.n();
    SymmetryAlgebra<S> alg;
    alg.n = n;
    alg.field = js.field;
    alg.structure = js;
    alg.exact = exact_mode;
    alg.commutant_dim = static_cast<long>(commutant.size());
    alg.classification = js.nilpotent() ? Classification::Nilpotent : Classification::NonNilpotent;
    if (js.exact()) {
        alg.system_matrix = matrix_from_rational<S>(js.to_rational_matrix());
    } else {
        if constexpr (std::is_same_v<S, Complex>)
            alg.system_matrix = js.to_numeric_matrix();
        else
            throw std::logic_error("numeric structure requires the numeric mode");
    }

    for (auto& sol : fs.solutions) {
        VectorField<S> q = VectorField<S>::zero(n);
        q.drift = std::move(sol);
        alg.generators.push_back({GenFamily::Solution, std::move(q)});
    }
    for (const RatMatrix& h : commutant) {
        VectorField<S> q = VectorField<S>::zero(n);
        q.linear = matrix_from_rational<S>(h);
        alg.generators.push_back({GenFamily::Commutant, std::move(q)});
    }
    alg.generators.push_back({GenFamily::TimeTranslation, VectorField<S>::time_translation(n)});
    if (js.nilpotent()) {
        VectorField<S> q = VectorField<S>::zero(n);
        q.c1 = S(1);
        q.linear = matrix_from_rational<S>(Rational(-2) * ramp_diagonal(js));
        alg.generators.push_back({GenFamily::Dilation, std::move(q)});
    }

    DimensionReport expect = dimension_only(js);
    if (static_cast<long>(alg.generators.size()) != expect.dimension ||
        alg.commutant_dim != expect.commutant_dim)
        throw std::logic_error("assembled generator count disagrees with the dimension formula");
    return alg;
}

}  // namespace detail

/// Exact algebra for a non-scalar structure with rational eigenvalues.
inline SymmetryAlgebra<QuadExt> build_algebra_exact(JordanStructure js) {
    js.canonicalize();
    if (js.scalar()) throw ScalarSystemError();
    FundamentalSystem<QuadExt> fs = fundamental_system_exact(js);
    std::vector<RatMatrix> comm = commutant_basis(js.to_rational_matrix());
    return detail::assemble<QuadExt>(js, std::move(fs), comm, /*exact=*/true);
}

/// Numeric-mode algebra; any non-scalar structure. Commutant matrices are
/// still computed exactly (they depend only on the block pattern), only the
/// solution frequencies are floating point.
inline SymmetryAlgebra<Complex> build_algebra_numeric(JordanStructure js) {
    js.canonicalize();
    if (js.scalar()) throw ScalarSystemError();
    FundamentalSystem<Complex> fs = fundamental_system_numeric(js);
    std::vector<RatMatrix> comm = commutant_basis(js.to_placeholder_matrix());
    return detail::assemble<Complex>(js, std::move(fs), comm, /*exact=*/false);
}

/// The projective symmetry algebra of the free system, dimension (n+2)^2 - 1.
/// Generator order: d/dt; d/dx^a; t d/dt; x^a d/dt; t d/dx^a; x^a d/dx^b;
/// t x^a d/dt + x^a x^c d/dx^c; t^2 d/dt + t x^c d/dx^c.
inline SymmetryAlgebra<QuadExt> build_free_algebra(int n) {
    if (n < 1) throw std::invalid_argument("free algebra needs n >= 1");
    const size_t vars = static_cast<size_t>(n) + 1;  // (t, x^1..x^n)
    auto t = MultiPoly::variable(vars, 0);
    auto x = [&](int a) { return MultiPoly::variable(vars, static_cast<size_t>(a) + 1); };
    auto zero_field = [&]() {
        ProjectiveVectorField f;
        f.xi = MultiPoly(vars);
        f.eta.assign(static_cast<size_t>(n), MultiPoly(vars));
        return f;
    };
    std::vector<ProjectiveVectorField> gens;

    {  // d/dt
        auto f = zero_field();
        f.xi = MultiPoly::constant(vars, Rational(1));
        gens.push_back(std::move(f));
    }
    for (int a = 0; a < n; ++a) {  // d/dx^a
        auto f = zero_field();
        f.eta[static_cast<size_t>(a)] = MultiPoly::constant(vars, Rational(1));
        gens.push_back(std::move(f));
    }
    {  // t d/dt
        auto f = zero_field();
        f.xi = t;
        gens.push_back(std::move(f));
    }
    for (int a = 0; a < n; ++a) {  // x^a d/dt
        auto f = zero_field();
        f.xi = x(a);
        gens.push_back(std::move(f));
    }
    for (int a = 0; a < n; ++a) {  // t d/dx^a
        auto f = zero_field();
        f.eta[static_cast<size_t>(a)] = t;
        gens.push_back(std::move(f));
    }
    for (int a = 0; a < n; ++a)  // x^a d/dx^b
        for (int b = 0; b < n; ++b) {
            auto f = zero_field();
            f.eta[static_cast<size_t>(b)] = x(a);
            gens.push_back(std::move(f));
        }
    for (int a = 0; a < n; ++a) {  // t x^a d/dt + x^a x^c d/dx^c
        auto f = zero_field();
        f.xi = t * x(a);
        for (int c = 0; c < n; ++c) f.eta[static_cast<size_t>(c)] = x(a) * x(c);
        gens.push_back(std::move(f));
    }
    {  // t^2 d/dt + t x^c d/dx^c
        auto f = zero_field();
        f.xi = t * t;
        for (int c = 0; c < n; ++c) f.eta[static_cast<size_t>(c)] = t * x(c);
        gens.push_back(std::move(f));
    }

    SymmetryAlgebra<QuadExt> alg;
    alg.n = n;
    alg.field = FieldTag::Complex;
    alg.classification = Classification::Free;
    alg.commutant_dim = static_cast<long>(n) * n;
    alg.exact = true;
    alg.system_matrix = Matrix<QuadExt>(static_cast<size_t>(n), static_cast<size_t>(n));
    JordanStructure js;
    for (int i = 0; i < n; ++i) js.blocks.push_back(JordanBlock{true, Rational(0), Complex(0, 0), 1});
    alg.structure = js;
    for (auto& g : gens) alg.generators.push_back({GenFamily::Projective, std::move(g)});
    if (static_cast<long>(alg.generators.size()) != free_algebra_dimension(n))
        throw std::logic_error("free generator count disagrees with (n+2)^2 - 1");
    return alg;
}

/// Transport of an algebra along a constant change of dependent variables
/// y = P z: linear parts conjugate, drifts map through P, xi is untouched; the
/// result generates the symmetry algebra of the conjugated system matrix.
template <class S>
SymmetryAlgebra<S> lift_by_similarity(const SymmetryAlgebra<S>& alg, const RatMatrix& p) {
    if (static_cast<int>(p.rows()) != alg.n || !p.is_square())
        throw std::invalid_argument("similarity matrix size mismatch");
    auto p_inv_rat = inverse(p);
    if (!p_inv_rat) throw std::invalid_argument("similarity matrix must be invertible");
    Matrix<S> ps = detail::matrix_from_rational<S>(p);
    Matrix<S> ps_inv = detail::matrix_from_rational<S>(*p_inv_rat);

    SymmetryAlgebra<S> out = alg;
    out.system_matrix = ps * alg.system_matrix * ps_inv;
    for (auto& gen : out.generators) {
        if (gen.is_projective()) throw std::domain_error("similarity lift applies to restricted fields");
        auto& q = std::get<VectorField<S>>(gen.field);
        q.linear = ps * q.linear * ps_inv;
        std::vector<ExpPoly<S>> mapped(static_cast<size_t>(q.n()));
        for (int i = 0; i < q.n(); ++i) {
            ExpPoly<S> acc;
            for (int j = 0; j < q.n(); ++j) {
                const S& pij = ps(static_cast<size_t>(i), static_cast<size_t>(j));
                if (!liesym::is_zero(pij)) acc += pij * q.drift[static_cast<size_t>(j)];
            }
            mapped[static_cast<size_t>(i)] = std::move(acc);
        }
        q.drift = std::move(mapped);
    }
    return out;
}

}  // namespace liesym
