#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "liesym/matrix.hpp"
#include "liesym/structure.hpp"

namespace liesym {

/// The n^2 x n^2 matrix of H -> DH - HD acting on row-major vec(H).
inline RatMatrix commutator_map(const RatMatrix& d) {
    if (!d.is_square()) throw std::invalid_argument("commutator map of non-square matrix");
    const size_t n = d.rows();
    RatMatrix m(n * n, n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const size_t row = i * n + j;
            // (DH)_{ij} = sum_k D_{ik} H_{kj},  (HD)_{ij} = sum_k H_{ik} D_{kj}
            for (size_t k = 0; k < n; ++k) {
                m(row, k * n + j) += d(i, k);
                m(row, i * n + k) -= d(k, j);
            }
        }
    return m;
}

inline RatMatrix unflatten(const std::vector<Rational>& v, size_t n) {
    return RatMatrix(n, n, v);
}

/// Exact basis of the space of matrices commuting with D, as the kernel of the
/// commutator map; deterministic (kernel pivot order).
inline std::vector<RatMatrix> commutant_basis(const RatMatrix& d) {
    const size_t n = d.rows();
    std::vector<RatMatrix> basis;
    for (const auto& v : kernel_basis(commutator_map(d))) basis.push_back(unflatten(v, n));
    return basis;
}

/// The block-indexed ramp diag(1, 2, ..., k1, 1, 2, ..., k2, ...) matching the
/// Jordan block sizes of a nilpotent structure.
inline RatMatrix ramp_diagonal(const JordanStructure& js) {
    if (!js.nilpotent())
        throw std::domain_error("shifted commutator equation incompatible: matrix is not nilpotent");
    const size_t n = static_cast<size_t>(js.n());
    RatMatrix g(n, n);
    size_t off = 0;
    for (const auto& b : js.blocks) {
        for (int k = 0; k < b.size; ++k) g(off + k, off + k) = Rational(k + 1);
        off += static_cast<size_t>(b.size);
    }
    return g;
}

/// Particular solution kappa * ramp of J H - H J = kappa J for a nilpotent
/// Jordan structure; refuses non-nilpotent input, where the equation has no
/// solution at all.
inline RatMatrix gamma_particular(const JordanStructure& js, const Rational& kappa) {
    return kappa * ramp_diagonal(js);
}

/// A particular solution of D H - H D = kappa D, if one exists. For kappa != 0
/// consistency is equivalent to nilpotency of D; absence is a value here, not
/// an error.
inline std::optional<RatMatrix> solve_sylvester_shift(const RatMatrix& d, const Rational& kappa) {
    const size_t n = d.rows();
    std::vector<Rational> rhs(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) rhs[i * n + j] = kappa * d(i, j);
    auto x = solve_linear(commutator_map(d), rhs);
    if (!x) return std::nullopt;
    return unflatten(*x, n);
}

}  // namespace liesym
