#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "liesym/algebra.hpp"
#include "liesym/commutant.hpp"
#include "liesym/counting.hpp"
#include "liesym/numeric.hpp"
#include "liesym/vector_field.hpp"

namespace liesym {

/// One jet-space sample: (t, x, v) with v standing in for dx/dt.
struct SamplePoint {
    double t = 0;
    std::vector<double> x, v;
};

namespace detail {

/// Deterministic uniform double in [-1, 1]; independent of the standard
/// library's distribution implementations.
inline double unit_double(std::mt19937_64& rng) {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1p-53) - 1.0;
}

}  // namespace detail

inline std::vector<SamplePoint> sample_points(std::uint64_t seed, int count, int n) {
    std::mt19937_64 rng(seed);
    std::vector<SamplePoint> pts(static_cast<size_t>(count));
    for (auto& p : pts) {
        p.t = detail::unit_double(rng);
        p.x.resize(static_cast<size_t>(n));
        p.v.resize(static_cast<size_t>(n));
        for (auto& c : p.x) c = detail::unit_double(rng);
        for (auto& c : p.v) c = detail::unit_double(rng);
    }
    return pts;
}

/// Rational sample for exact-mode checks; t stays symbolic there.
struct ExactSamplePoint {
    std::vector<Rational> x, v;
};

inline std::vector<ExactSamplePoint> exact_sample_points(std::uint64_t seed, int count, int n) {
    std::mt19937_64 rng(seed);
    auto small_rational = [&rng]() {
        long num = static_cast<long>(rng() % 17) - 8;
        long den = static_cast<long>(rng() % 5) + 1;
        return Rational(num, den);
    };
    std::vector<ExactSamplePoint> pts(static_cast<size_t>(count));
    for (auto& p : pts) {
        p.x.resize(static_cast<size_t>(n));
        p.v.resize(static_cast<size_t>(n));
        for (auto& c : p.x) c = small_rational();
        for (auto& c : p.v) c = small_rational();
    }
    return pts;
}

/// Second-order jet of a candidate symmetry field, evaluated with values in an
/// arbitrary commutative ring R (numbers, exp-polynomials in symbolic t, or
/// full multivariate polynomials).
template <class R>
struct JetData {
    int n = 0;
    R xi_t, xi_tt;
    std::vector<R> xi_x, xi_xt, xi_xx;           // xi_xx is n*n row-major
    std::vector<R> eta, eta_t, eta_tt;           // per component b
    std::vector<R> eta_x, eta_xt, eta_xx;        // n*n and n*n*n ([b][a][c])

    static JetData make(int n, const R& zero) {
        JetData j;
        j.n = n;
        const size_t nn = static_cast<size_t>(n);
        j.xi_t = j.xi_tt = zero;
        j.xi_x.assign(nn, zero);
        j.xi_xt.assign(nn, zero);
        j.xi_xx.assign(nn * nn, zero);
        j.eta.assign(nn, zero);
        j.eta_t.assign(nn, zero);
        j.eta_tt.assign(nn, zero);
        j.eta_x.assign(nn * nn, zero);
        j.eta_xt.assign(nn * nn, zero);
        j.eta_xx.assign(nn * nn * nn, zero);
        return j;
    }
};

/// The invariance condition assembled literally from the second prolongation:
///   eta_tt + 2 eta_xt v + eta_xx v v + eta_x (Jx)
///   - (xi_tt + 2 xi_xt v + xi_xx v v + xi_x (Jx)) v^b
///   - 2 (xi_t + xi_x v)(Jx)^b - (J eta)^b.
template <class R>
std::vector<R> invariance_residual_from_jets(const JetData<R>& jets, const std::vector<R>& v,
                                             const std::vector<R>& jx,
                                             const std::vector<std::vector<R>>& j_rows) {
    const int n = jets.n;
    const size_t nn = static_cast<size_t>(n);
    auto at2 = [nn](const std::vector<R>& m, size_t i, size_t j) -> const R& { return m[i * nn + j]; };

    R xi_group = jets.xi_tt;
    for (size_t a = 0; a < nn; ++a) {
        xi_group += (jets.xi_xt[a] * v[a]) + (jets.xi_xt[a] * v[a]);
        for (size_t c = 0; c < nn; ++c) xi_group += at2(jets.xi_xx, a, c) * v[a] * v[c];
        xi_group += jets.xi_x[a] * jx[a];
    }
    R xi_first = jets.xi_t;
    for (size_t a = 0; a < nn; ++a) xi_first += jets.xi_x[a] * v[a];

    std::vector<R> out;
    out.reserve(nn);
    for (size_t b = 0; b < nn; ++b) {
        R r = jets.eta_tt[b];
        for (size_t a = 0; a < nn; ++a) {
            r += (at2(jets.eta_xt, b, a) * v[a]) + (at2(jets.eta_xt, b, a) * v[a]);
            for (size_t c = 0; c < nn; ++c) r += jets.eta_xx[(b * nn + a) * nn + c] * v[a] * v[c];
            r += at2(jets.eta_x, b, a) * jx[a];
        }
        r -= xi_group * v[b];
        r -= (xi_first * jx[b]) + (xi_first * jx[b]);
        for (size_t a = 0; a < nn; ++a) r -= j_rows[b][a] * jets.eta[a];
        out.push_back(std::move(r));
    }
    return out;
}

namespace detail {

inline VectorField<Complex> to_numeric_field(const VectorField<QuadExt>& q) {
    VectorField<Complex> out = VectorField<Complex>::zero(q.n());
    out.c1 = q.c1.to_complex();
    out.c0 = q.c0.to_complex();
    out.linear = q.linear.map<Complex>([](const QuadExt& x) { return x.to_complex(); });
    for (int b = 0; b < q.n(); ++b) {
        for (const auto& t : q.drift[static_cast<size_t>(b)].terms())
            out.drift[static_cast<size_t>(b)] += ExpPoly<Complex>::trig_term(
                t.coeff.to_complex(), t.power, t.rate.to_complex(), t.osc.to_complex(), t.trig);
    }
    return out;
}

inline Matrix<Complex> to_numeric_matrix(const Matrix<QuadExt>& m) {
    return m.map<Complex>([](const QuadExt& x) { return x.to_complex(); });
}

inline JetData<Complex> numeric_jets(const VectorField<Complex>& q, const SamplePoint& p) {
    const int n = q.n();
    auto jets = JetData<Complex>::make(n, Complex(0, 0));
    jets.xi_t = q.c1;
    Complex t0(p.t, 0);
    for (int b = 0; b < n; ++b) {
        const auto& phi = q.drift[static_cast<size_t>(b)];
        ExpPoly<Complex> d1 = phi.derivative();
        Complex acc = phi.eval(t0);
        for (int a = 0; a < n; ++a) {
            acc += q.linear(static_cast<size_t>(b), static_cast<size_t>(a)) * Complex(p.x[static_cast<size_t>(a)], 0);
            jets.eta_x[static_cast<size_t>(b) * static_cast<size_t>(n) + static_cast<size_t>(a)] =
                q.linear(static_cast<size_t>(b), static_cast<size_t>(a));
        }
        jets.eta[static_cast<size_t>(b)] = acc;
        jets.eta_t[static_cast<size_t>(b)] = d1.eval(t0);
        jets.eta_tt[static_cast<size_t>(b)] = d1.derivative().eval(t0);
    }
    return jets;
}

inline JetData<Complex> numeric_jets(const ProjectiveVectorField& q, const SamplePoint& p) {
    const int n = q.n();
    auto jets = JetData<Complex>::make(n, Complex(0, 0));
    std::vector<Complex> pt;
    pt.emplace_back(p.t, 0);
    for (double c : p.x) pt.emplace_back(c, 0);
    auto D = [&](const MultiPoly& f, size_t var) { return f.derivative(var); };
    jets.xi_t = D(q.xi, 0).eval(pt);
    jets.xi_tt = D(D(q.xi, 0), 0).eval(pt);
    const size_t nn = static_cast<size_t>(n);
    for (size_t a = 0; a < nn; ++a) {
        jets.xi_x[a] = D(q.xi, a + 1).eval(pt);
        jets.xi_xt[a] = D(D(q.xi, a + 1), 0).eval(pt);
        for (size_t c = 0; c < nn; ++c) jets.xi_xx[a * nn + c] = D(D(q.xi, a + 1), c + 1).eval(pt);
    }
    for (size_t b = 0; b < nn; ++b) {
        const MultiPoly& e = q.eta[b];
        jets.eta[b] = e.eval(pt);
        jets.eta_t[b] = D(e, 0).eval(pt);
        jets.eta_tt[b] = D(D(e, 0), 0).eval(pt);
        for (size_t a = 0; a < nn; ++a) {
            jets.eta_x[b * nn + a] = D(e, a + 1).eval(pt);
            jets.eta_xt[b * nn + a] = D(D(e, a + 1), 0).eval(pt);
            for (size_t c = 0; c < nn; ++c)
                jets.eta_xx[(b * nn + a) * nn + c] = D(D(e, a + 1), c + 1).eval(pt);
        }
    }
    return jets;
}

}  // namespace detail

/// Full-jet numeric residual of one generator at the given samples.
template <class S>
std::vector<std::vector<Complex>> residual(const Generator<S>& gen, const Matrix<Complex>& j,
                                           const std::vector<SamplePoint>& pts) {
    const int n = static_cast<int>(j.rows());
    std::vector<std::vector<Complex>> j_rows(static_cast<size_t>(n), std::vector<Complex>(static_cast<size_t>(n)));
    for (size_t b = 0; b < j.rows(); ++b)
        for (size_t a = 0; a < j.cols(); ++a) j_rows[b][a] = j(b, a);

    std::optional<VectorField<Complex>> restricted;
    std::optional<ProjectiveVectorField> projective;
    if (gen.is_projective()) {
        projective = gen.projective();
        if (projective->n() != n) throw std::invalid_argument("generator and system sizes differ");
    } else {
        if constexpr (std::is_same_v<S, Complex>) restricted = gen.restricted();
        else restricted = detail::to_numeric_field(gen.restricted());
        if (restricted->n() != n) throw std::invalid_argument("generator and system sizes differ");
    }

    std::vector<std::vector<Complex>> out;
    for (const auto& p : pts) {
        std::vector<Complex> v, jx(static_cast<size_t>(n), Complex(0, 0));
        for (double c : p.v) v.emplace_back(c, 0);
        for (size_t b = 0; b < j.rows(); ++b)
            for (size_t a = 0; a < j.cols(); ++a) jx[b] += j(b, a) * Complex(p.x[a], 0);
        JetData<Complex> jets = projective ? detail::numeric_jets(*projective, p)
                                           : detail::numeric_jets(*restricted, p);
        out.push_back(invariance_residual_from_jets(jets, v, jx, j_rows));
    }
    return out;
}

/// Reduced-form residual (phi'' - J phi)(t) + (HJ - JH - 2 c1 J) x at the same
/// samples; restricted fields only.
inline std::vector<std::vector<Complex>> residual_reduced(const VectorField<Complex>& q,
                                                          const Matrix<Complex>& j,
                                                          const std::vector<SamplePoint>& pts) {
    const size_t n = j.rows();
    Matrix<Complex> m = q.linear * j - j * q.linear;
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) m(i, k) -= Complex(2, 0) * q.c1 * j(i, k);
    std::vector<ExpPoly<Complex>> drift_res(n);
    for (size_t b = 0; b < n; ++b) {
        drift_res[b] = q.drift[b].derivative().derivative();
        for (size_t a = 0; a < n; ++a)
            if (!is_zero(j(b, a))) drift_res[b] -= j(b, a) * q.drift[a];
    }
    std::vector<std::vector<Complex>> out;
    for (const auto& p : pts) {
        std::vector<Complex> r(n, Complex(0, 0));
        for (size_t b = 0; b < n; ++b) {
            r[b] = drift_res[b].eval(Complex(p.t, 0));
            for (size_t a = 0; a < n; ++a) r[b] += m(b, a) * Complex(p.x[a], 0);
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline double max_abs(const std::vector<std::vector<Complex>>& rows) {
    double m = 0;
    for (const auto& row : rows)
        for (const Complex& z : row) m = std::max(m, std::abs(z));
    return m;
}

/// Exact identically-zero residual test for a restricted field: the drift part
/// must solve the system and the linear part must satisfy the commutator
/// relation with the dilation correction.
inline bool exact_residual_zero(const VectorField<QuadExt>& q, const Matrix<QuadExt>& j) {
    const size_t n = j.rows();
    Matrix<QuadExt> m = q.linear * j - j * q.linear;
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) m(i, k) -= QuadExt(2) * q.c1 * j(i, k);
    if (!m.is_zero()) return false;
    for (size_t b = 0; b < n; ++b) {
        ExpPoly<QuadExt> r = q.drift[b].derivative().derivative();
        for (size_t a = 0; a < n; ++a)
            if (!is_zero(j(b, a))) r -= j(b, a) * q.drift[a];
        if (!r.is_zero()) return false;
    }
    return true;
}

/// Exact symbolic residual of a projective field: every component of the full
/// jet residual, expanded as a polynomial in (t, x, v), must vanish.
inline bool exact_residual_zero(const ProjectiveVectorField& q, const RatMatrix& j) {
    const int n = q.n();
    const size_t nn = static_cast<size_t>(n);
    const size_t vars = 1 + 2 * nn;  // (t, x, v)
    auto extend = [&](const MultiPoly& f) {
        MultiPoly out(vars);
        for (const auto& [mono, c] : f.terms()) {
            MultiPoly::Monomial m(vars, 0);
            for (size_t i = 0; i < mono.size(); ++i) m[i] = mono[i];
            out += MultiPoly::monomial(vars, std::move(m), c);
        }
        return out;
    };
    MultiPoly zero(vars);
    auto jets = JetData<MultiPoly>::make(n, zero);
    MultiPoly xi = extend(q.xi);
    jets.xi_t = xi.derivative(0);
    jets.xi_tt = jets.xi_t.derivative(0);
    for (size_t a = 0; a < nn; ++a) {
        jets.xi_x[a] = xi.derivative(a + 1);
        jets.xi_xt[a] = jets.xi_x[a].derivative(0);
        for (size_t c = 0; c < nn; ++c) jets.xi_xx[a * nn + c] = jets.xi_x[a].derivative(c + 1);
    }
    for (size_t b = 0; b < nn; ++b) {
        MultiPoly e = extend(q.eta[b]);
        jets.eta[b] = e;
        jets.eta_t[b] = e.derivative(0);
        jets.eta_tt[b] = jets.eta_t[b].derivative(0);
        for (size_t a = 0; a < nn; ++a) {
            jets.eta_x[b * nn + a] = e.derivative(a + 1);
            jets.eta_xt[b * nn + a] = jets.eta_x[b * nn + a].derivative(0);
            for (size_t c = 0; c < nn; ++c)
                jets.eta_xx[(b * nn + a) * nn + c] = jets.eta_x[b * nn + a].derivative(c + 1);
        }
    }
    std::vector<MultiPoly> v, jx;
    std::vector<std::vector<MultiPoly>> j_rows(nn, std::vector<MultiPoly>(nn, zero));
    for (size_t a = 0; a < nn; ++a) v.push_back(MultiPoly::variable(vars, 1 + nn + a));
    for (size_t b = 0; b < nn; ++b) {
        MultiPoly acc(vars);
        for (size_t a = 0; a < nn; ++a) {
            if (!j(b, a).is_zero()) acc += j(b, a) * MultiPoly::variable(vars, 1 + a);
            j_rows[b][a] = MultiPoly::constant(vars, j(b, a));
        }
        jx.push_back(std::move(acc));
    }
    for (const MultiPoly& r : invariance_residual_from_jets(jets, v, jx, j_rows))
        if (!r.is_zero()) return false;
    return true;
}

/// Exact two-path agreement at one rational sample (t symbolic): the full jet
/// assembly and the reduced formula must produce identical exp-polynomials.
inline bool two_path_agree_exact(const VectorField<QuadExt>& q, const Matrix<QuadExt>& j,
                                 const ExactSamplePoint& p) {
    const int n = q.n();
    const size_t nn = static_cast<size_t>(n);
    using EP = ExpPoly<QuadExt>;
    EP zero;

    // Full path.
    auto jets = JetData<EP>::make(n, zero);
    jets.xi_t = EP::constant(q.c1);
    std::vector<EP> v, jx;
    std::vector<std::vector<EP>> j_rows(nn, std::vector<EP>(nn, zero));
    for (size_t a = 0; a < nn; ++a) v.push_back(EP::constant(QuadExt(p.v[a])));
    for (size_t b = 0; b < nn; ++b) {
        QuadExt acc(0);
        for (size_t a = 0; a < nn; ++a) {
            acc += j(b, a) * QuadExt(p.x[a]);
            j_rows[b][a] = EP::constant(j(b, a));
        }
        jx.push_back(EP::constant(acc));
    }
    for (size_t b = 0; b < nn; ++b) {
        EP e = q.drift[b];
        QuadExt lin(0);
        for (size_t a = 0; a < nn; ++a) {
            lin += q.linear(b, a) * QuadExt(p.x[a]);
            jets.eta_x[b * nn + a] = EP::constant(q.linear(b, a));
        }
        e += EP::constant(lin);
        jets.eta[b] = e;
        jets.eta_t[b] = q.drift[b].derivative();
        jets.eta_tt[b] = q.drift[b].derivative().derivative();
    }
    std::vector<EP> full = invariance_residual_from_jets(jets, v, jx, j_rows);

    // Reduced path.
    Matrix<QuadExt> m = q.linear * j - j * q.linear;
    for (size_t i = 0; i < nn; ++i)
        for (size_t k = 0; k < nn; ++k) m(i, k) -= QuadExt(2) * q.c1 * j(i, k);
    for (size_t b = 0; b < nn; ++b) {
        EP reduced = q.drift[b].derivative().derivative();
        for (size_t a = 0; a < nn; ++a)
            if (!is_zero(j(b, a))) reduced -= j(b, a) * q.drift[a];
        QuadExt lin(0);
        for (size_t a = 0; a < nn; ++a) lin += m(b, a) * QuadExt(p.x[a]);
        reduced += EP::constant(lin);
        if (!(reduced == full[b])) return false;
    }
    return true;
}

/// Numeric two-path disagreement: max |full - reduced| over the samples.
inline double two_path_disagreement(const VectorField<Complex>& q, const Matrix<Complex>& j,
                                    const std::vector<SamplePoint>& pts) {
    Generator<Complex> g{GenFamily::Solution, q};
    auto full = residual(g, j, pts);
    auto reduced = residual_reduced(q, j, pts);
    double worst = 0;
    for (size_t i = 0; i < full.size(); ++i)
        for (size_t b = 0; b < full[i].size(); ++b)
            worst = std::max(worst, std::abs(full[i][b] - reduced[i][b]));
    return worst;
}

/// The commutant dimension by three independent routes: the kernel of the
/// commutator map, the invariant-factor degree formula, and (whenever the
/// eigenvalues resolve exactly) the pairwise elementary-divisor gcd formula.
struct CommutantCount {
    long from_kernel = 0;
    long from_partition = 0;
    std::optional<long> from_divisors;

    bool consistent() const {
        if (from_kernel != from_partition) return false;
        if (from_divisors && *from_divisors != from_kernel) return false;
        return true;
    }
};

inline CommutantCount cross_check_commutant(const RatMatrix& d) {
    CommutantCount out;
    out.from_kernel = static_cast<long>(d.rows() * d.cols()) - static_cast<long>(rank(commutator_map(d)));
    InvariantFactorData inv = smith_invariant_factors(d);
    out.from_partition = commutant_dim_from_partition(inv.degrees);

    // Divisor route: factor every invariant polynomial over the rationals; any
    // residual blocks the eigenvalue-resolved formula.
    std::vector<std::pair<int, int>> divisors;
    std::vector<Rational> seen;
    bool resolved = true;
    for (const UniPoly& f : inv.factors) {
        RootFactorization rf = factor_rational_roots(f);
        if (rf.residual.degree() > 0) {
            resolved = false;
            break;
        }
        for (const auto& [root, mult] : rf.roots) {
            int id = -1;
            for (size_t k = 0; k < seen.size(); ++k)
                if (seen[k] == root) id = static_cast<int>(k);
            if (id < 0) {
                seen.push_back(root);
                id = static_cast<int>(seen.size()) - 1;
            }
            divisors.emplace_back(id, mult);
        }
    }
    if (resolved) out.from_divisors = commutant_dim_from_divisors(divisors);
    return out;
}

inline CommutantCount cross_check_commutant(const JordanStructure& js) {
    CommutantCount out;
    RatMatrix rep = js.exact() ? js.to_rational_matrix() : js.to_placeholder_matrix();
    out.from_kernel =
        static_cast<long>(rep.rows() * rep.cols()) - static_cast<long>(rank(commutator_map(rep)));
    out.from_partition = commutant_dim_from_partition(invariant_degrees_of(js));
    // The pairwise gcd route needs exactly resolved eigenvalues; clustered
    // numeric ones do not qualify.
    if (js.exact()) out.from_divisors = commutant_dim_from_divisors(js.elementary_divisors());
    return out;
}

}  // namespace liesym
