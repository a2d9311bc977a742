#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "liesym/closure.hpp"
#include "liesym/verify.hpp"

namespace liesym {

/// Everything the verify pipeline measures for one (system, algebra) pair.
struct VerificationReport {
    bool exact_mode = true;
    double tolerance = 1e-9;
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<double> max_residuals;       // per generator, over the samples
    std::vector<bool> generator_ok;          // exact: identically zero; numeric: within tolerance
    ClosureReport closure;
    CommutantCount counts;
    std::optional<size_t> first_failed_generator;
    bool pass = false;
};

/// Exact verification: every generator must have identically zero residual;
/// the sampled values are reported for reference. The governing matrix is the
/// canonical matrix of the algebra's structure.
inline VerificationReport verify_algebra(const SymmetryAlgebra<QuadExt>& alg, int samples,
                                         std::uint64_t seed, double tol = 1e-9) {
    VerificationReport rep;
    rep.exact_mode = true;
    rep.tolerance = tol;
    rep.seed = seed;
    rep.samples = samples;

    const Matrix<QuadExt>& j = alg.system_matrix;
    Matrix<Complex> jc = detail::to_numeric_matrix(j);
    RatMatrix j_rat = j.map<Rational>([](const QuadExt& x) { return x.rational_value(); });
    auto pts = sample_points(seed, samples, alg.n);

    for (size_t i = 0; i < alg.generators.size(); ++i) {
        const auto& g = alg.generators[i];
        bool ok = g.is_projective() ? exact_residual_zero(g.projective(), j_rat)
                                    : exact_residual_zero(g.restricted(), j);
        rep.generator_ok.push_back(ok);
        rep.max_residuals.push_back(max_abs(residual(g, jc, pts)));
        if (!ok && !rep.first_failed_generator) rep.first_failed_generator = i;
    }
    rep.closure = closure_check(alg);
    rep.counts = cross_check_commutant(j_rat);
    long expected_dim = alg.classification == Classification::Free
                            ? free_algebra_dimension(alg.n)
                            : algebra_dimension(alg.n, rep.counts.from_kernel,
                                                alg.classification == Classification::Nilpotent);
    rep.pass = !rep.first_failed_generator && rep.closure.ok() && rep.counts.consistent() &&
               rep.counts.from_kernel == alg.commutant_dim &&
               static_cast<long>(alg.generators.size()) == expected_dim;
    return rep;
}

/// Numeric verification at the given tolerance.
inline VerificationReport verify_algebra(const SymmetryAlgebra<Complex>& alg, int samples,
                                         std::uint64_t seed, double tol = 1e-9) {
    VerificationReport rep;
    rep.exact_mode = false;
    rep.tolerance = tol;
    rep.seed = seed;
    rep.samples = samples;

    const Matrix<Complex>& j = alg.system_matrix;
    auto pts = sample_points(seed, samples, alg.n);
    for (size_t i = 0; i < alg.generators.size(); ++i) {
        double r = max_abs(residual(alg.generators[i], j, pts));
        rep.max_residuals.push_back(r);
        rep.generator_ok.push_back(r <= tol);
        if (r > tol && !rep.first_failed_generator) rep.first_failed_generator = i;
    }
    rep.closure = closure_check(alg, std::max(tol, 1e-8));
    rep.counts = cross_check_commutant(alg.structure);
    long expected_dim = algebra_dimension(alg.n, rep.counts.from_kernel,
                                          alg.classification == Classification::Nilpotent);
    rep.pass = !rep.first_failed_generator && rep.closure.ok() && rep.counts.consistent() &&
               rep.counts.from_kernel == alg.commutant_dim &&
               static_cast<long>(alg.generators.size()) == expected_dim;
    return rep;
}

}  // namespace liesym
