#pragma once

#include <stdexcept>
#include <vector>

#include "liesym/exp_poly.hpp"
#include "liesym/matrix.hpp"
#include "liesym/structure.hpp"

namespace liesym {

struct ExactnessError : std::runtime_error {
    explicit ExactnessError(const std::string& what) : std::runtime_error(what) {}
};

/// 2n closed-form solutions of the reduced system for a canonical structure;
/// solutions are grouped block by block in canonical order.
template <class S>
struct FundamentalSystem {
    JordanStructure structure;
    std::vector<std::vector<ExpPoly<S>>> solutions;  // 2n vectors of length n

    int n() const { return structure.n(); }
};

/// True when every solution can be carried exactly: rational eigenvalues only
/// (negative ones split into trig form over the real field); rotation pairs
/// always go through numeric square roots.
inline bool structure_supports_exact(const JordanStructure& js) {
    return js.exact() && js.rotations.empty();
}

namespace detail {

/// Chains for one Jordan block: the last component satisfies g'' = lambda g;
/// each start level seeds that scalar equation and back-substitution fills the
/// components above it. Order: start level descending, seeds in given order.
template <class S>
std::vector<std::vector<ExpPoly<S>>> block_chains(const S& lambda, int k,
                                                  const std::vector<ExpPoly<S>>& seeds) {
    std::vector<std::vector<ExpPoly<S>>> chains;
    for (int start = k; start >= 1; --start) {
        for (const ExpPoly<S>& seed : seeds) {
            std::vector<ExpPoly<S>> phi(static_cast<size_t>(k));
            phi[static_cast<size_t>(start - 1)] = seed;
            for (int j = start - 1; j >= 1; --j)
                phi[static_cast<size_t>(j - 1)] = solve_resonant(lambda, phi[static_cast<size_t>(j)]);
            chains.push_back(std::move(phi));
        }
    }
    return chains;
}

template <class S>
std::vector<ExpPoly<S>> scalar_seeds(const S& lambda, const S& mu) {
    if (liesym::is_zero(lambda))
        return {ExpPoly<S>::term(S(1), 1, S(0)), ExpPoly<S>::constant(S(1))};
    return {ExpPoly<S>::term(S(1), 0, mu), ExpPoly<S>::term(S(1), 0, -mu)};
}

/// Scale a full-length solution so the first nonzero entry of the initial data
/// (phi(0), phi'(0)) is one.
template <class S>
void normalize_solution(std::vector<ExpPoly<S>>& phi) {
    std::vector<S> init;
    for (const auto& c : phi) init.push_back(c.value_at_zero());
    for (const auto& c : phi) init.push_back(c.derivative().value_at_zero());
    for (const S& v : init) {
        bool nonzero;
        if constexpr (std::is_same_v<S, Complex>) {
            nonzero = std::abs(v) > 1e-9;
        } else {
            nonzero = !liesym::is_zero(v);
        }
        if (nonzero) {
            S inv = S(1) / v;
            for (auto& c : phi) c = inv * c;
            return;
        }
    }
}

template <class S>
void embed_chain(std::vector<std::vector<ExpPoly<S>>>& out, const std::vector<ExpPoly<S>>& chain,
                 int offset, int n) {
    std::vector<ExpPoly<S>> full(static_cast<size_t>(n));
    for (size_t j = 0; j < chain.size(); ++j) full[static_cast<size_t>(offset) + j] = chain[j];
    normalize_solution(full);
    out.push_back(std::move(full));
}

}  // namespace detail

/// Exact fundamental system over the quadratic-extension scalar; rational
/// eigenvalues only.
inline FundamentalSystem<QuadExt> fundamental_system_exact(const JordanStructure& js) {
    if (!structure_supports_exact(js))
        throw ExactnessError("irrational or rotation eigenvalues: use the numeric mode");
    FundamentalSystem<QuadExt> fs;
    fs.structure = js;
    const int n = js.n();
    int offset = 0;
    for (const auto& b : js.blocks) {
        QuadExt lambda(b.eig);
        QuadExt mu = QuadExt::sqrt_of(b.eig);
        const bool negative = b.eig.sign() < 0;
        if (js.field == FieldTag::Real && negative) {
            // Complex chains from the +mu seed split into real and imaginary
            // parts, giving 2k real trig solutions.
            auto chains = detail::block_chains(lambda, b.size,
                                               std::vector<ExpPoly<QuadExt>>{ExpPoly<QuadExt>::term(QuadExt(1), 0, mu)});
            for (const auto& chain : chains) {
                std::vector<ExpPoly<QuadExt>> re(chain.size()), im(chain.size());
                for (size_t j = 0; j < chain.size(); ++j) {
                    auto parts = split_real_imag(chain[j]);
                    re[j] = std::move(parts.first);
                    im[j] = std::move(parts.second);
                }
                detail::embed_chain(fs.solutions, re, offset, n);
                detail::embed_chain(fs.solutions, im, offset, n);
            }
        } else {
            for (const auto& chain : detail::block_chains(lambda, b.size, detail::scalar_seeds(lambda, mu)))
                detail::embed_chain(fs.solutions, chain, offset, n);
        }
        offset += b.size;
    }
    return fs;
}

/// Numeric fundamental system; handles every structure, including rotation
/// blocks and irrational eigenvalues.
inline FundamentalSystem<Complex> fundamental_system_numeric(const JordanStructure& js) {
    FundamentalSystem<Complex> fs;
    fs.structure = js;
    const int n = js.n();
    int offset = 0;
    for (const auto& r : js.rotations) {
        // The rotation pair block is the realification of one complex Jordan
        // block with eigenvalue mu - i nu; z_j = x_{2j-1} + i x_{2j}.
        Complex mu_c = r.exact ? Complex(r.mu.to_double(), 0) : Complex(r.pair_numeric.real(), 0);
        Complex nu_c = r.exact ? Complex(r.nu.to_double(), 0) : Complex(r.pair_numeric.imag(), 0);
        Complex lambda = mu_c - Complex(0, 1) * nu_c;
        Complex root = std::sqrt(lambda);
        for (const auto& chain : detail::block_chains(lambda, r.size, detail::scalar_seeds(lambda, root))) {
            for (int variant = 0; variant < 2; ++variant) {
                std::vector<ExpPoly<Complex>> real_sol(static_cast<size_t>(2 * r.size));
                for (size_t j = 0; j < chain.size(); ++j) {
                    ExpPoly<Complex> zj = chain[j];
                    if (variant == 1) zj = Complex(0, 1) * zj;
                    auto parts = split_real_imag(zj);
                    real_sol[2 * j] = std::move(parts.first);
                    real_sol[2 * j + 1] = std::move(parts.second);
                }
                detail::embed_chain(fs.solutions, real_sol, offset, n);
            }
        }
        offset += 2 * r.size;
    }
    for (const auto& b : js.blocks) {
        Complex lambda = b.exact ? Complex(b.eig.to_double(), 0) : b.eig_numeric;
        Complex mu = std::sqrt(lambda);
        const bool split_negative =
            js.field == FieldTag::Real && std::abs(lambda.imag()) == 0.0 && lambda.real() < 0;
        if (split_negative) {
            auto chains = detail::block_chains(lambda, b.size,
                                               std::vector<ExpPoly<Complex>>{ExpPoly<Complex>::term(Complex(1), 0, mu)});
            for (const auto& chain : chains) {
                std::vector<ExpPoly<Complex>> re(chain.size()), im(chain.size());
                for (size_t j = 0; j < chain.size(); ++j) {
                    auto parts = split_real_imag(chain[j]);
                    re[j] = std::move(parts.first);
                    im[j] = std::move(parts.second);
                }
                detail::embed_chain(fs.solutions, re, offset, n);
                detail::embed_chain(fs.solutions, im, offset, n);
            }
        } else {
            for (const auto& chain : detail::block_chains(lambda, b.size, detail::scalar_seeds(lambda, mu)))
                detail::embed_chain(fs.solutions, chain, offset, n);
        }
        offset += b.size;
    }
    return fs;
}

/// Initial-data matrix: row m holds (phi^m(0), dphi^m/dt(0)).
template <class S>
Matrix<S> initial_data_matrix(const FundamentalSystem<S>& fs) {
    const size_t n = static_cast<size_t>(fs.n());
    Matrix<S> m(fs.solutions.size(), 2 * n);
    for (size_t i = 0; i < fs.solutions.size(); ++i)
        for (size_t j = 0; j < n; ++j) {
            m(i, j) = fs.solutions[i][j].value_at_zero();
            m(i, n + j) = fs.solutions[i][j].derivative().value_at_zero();
        }
    return m;
}

/// Exact nonsingularity of the initial data. Solutions vanish outside their
/// own block, so the matrix is block diagonal and each block stays inside a
/// single quadratic extension; the rank is checked block by block.
inline bool initial_data_nonsingular(const FundamentalSystem<QuadExt>& fs) {
    const size_t n = static_cast<size_t>(fs.n());
    auto ranges = fs.structure.component_ranges();
    size_t sol_index = 0;
    for (const auto& [off, len] : ranges) {
        const size_t rows = 2 * static_cast<size_t>(len);
        Matrix<QuadExt> block(rows, rows);
        for (size_t i = 0; i < rows; ++i) {
            const auto& sol = fs.solutions[sol_index + i];
            for (int j = 0; j < len; ++j) {
                block(i, static_cast<size_t>(j)) = sol[static_cast<size_t>(off + j)].value_at_zero();
                block(i, static_cast<size_t>(len + j)) =
                    sol[static_cast<size_t>(off + j)].derivative().value_at_zero();
            }
        }
        if (rank_field(block) != rows) return false;
        sol_index += rows;
    }
    return sol_index == 2 * n;
}

inline bool initial_data_nonsingular(const FundamentalSystem<Complex>& fs) {
    Eigen::MatrixXcd m = to_eigen(initial_data_matrix(fs));
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
    qr.setThreshold(1e-9);
    return qr.rank() == m.rows();
}

}  // namespace liesym
