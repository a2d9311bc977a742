#pragma once

#include <algorithm>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "liesym/matrix.hpp"
#include "liesym/numeric.hpp"
#include "liesym/polynomial.hpp"
#include "liesym/smith.hpp"

namespace liesym {

enum class FieldTag { Complex, Real };

struct NonCommutingError : std::runtime_error {
    NonCommutingError() : std::runtime_error("matrices must commute") {}
};

/// D = B - A*A, the matrix of the reduced second-order system. Inputs must be
/// square, equal-sized and commuting; anything else is refused.
inline RatMatrix reduce_system(const RatMatrix& a, const RatMatrix& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw std::invalid_argument("coefficient matrices must be square and equal-sized");
    if (a * b != b * a) throw NonCommutingError();
    return b - a * a;
}

inline bool is_nilpotent(const RatMatrix& d) {
    if (!d.is_square()) throw std::invalid_argument("nilpotency of non-square matrix");
    return d.pow(d.rows()).is_zero();
}

/// True iff D = c*E for some rational c (including the zero matrix).
inline bool is_scalar(const RatMatrix& d) {
    if (!d.is_square()) throw std::invalid_argument("scalar test of non-square matrix");
    if (d.rows() == 0) return true;
    const Rational& c = d(0, 0);
    for (size_t i = 0; i < d.rows(); ++i)
        for (size_t j = 0; j < d.cols(); ++j) {
            if (i == j ? d(i, j) != c : !d(i, j).is_zero()) return false;
        }
    return true;
}

/// One Jordan block. eig_numeric mirrors eig for exact blocks so numeric code
/// paths stay uniform.
struct JordanBlock {
    bool exact = true;
    Rational eig;
    Complex eig_numeric{};
    int size = 1;
};

/// Real-canonical block for a complex pair mu ± i*nu (nu > 0), occupying
/// 2*size components: the 2x2 rotation cell on the diagonal repeated size
/// times, with 2x2 identity cells on the superdiagonal.
struct RotationBlock {
    bool exact = true;
    Rational mu, nu;
    Complex pair_numeric{};  // mu + i*nu
    int size = 1;
};

/// Jordan data of a matrix: rotation blocks first (real field only), then
/// eigenvalue blocks. Canonical order: rotations by (mu, nu), then exact
/// eigenvalues in rational order, then numeric ones by (Re, Im); block sizes
/// descend within an eigenvalue.
struct JordanStructure {
    FieldTag field = FieldTag::Complex;
    std::vector<RotationBlock> rotations;
    std::vector<JordanBlock> blocks;

    int n() const {
        int total = 0;
        for (const auto& r : rotations) total += 2 * r.size;
        for (const auto& b : blocks) total += b.size;
        return total;
    }

    bool exact() const {
        for (const auto& r : rotations)
            if (!r.exact) return false;
        for (const auto& b : blocks)
            if (!b.exact) return false;
        return true;
    }

    bool nilpotent() const {
        if (!rotations.empty()) return false;
        for (const auto& b : blocks)
            if (!b.exact || !b.eig.is_zero()) return false;
        return true;
    }

    bool scalar() const {
        if (!rotations.empty()) return false;
        if (blocks.empty()) return false;
        for (const auto& b : blocks) {
            if (b.size != 1) return false;
            if (!b.exact || b.eig != blocks.front().eig || !blocks.front().exact) return false;
        }
        return true;
    }

    void canonicalize() {
        std::sort(rotations.begin(), rotations.end(), [](const RotationBlock& x, const RotationBlock& y) {
            if (x.exact && y.exact) {
                if (x.mu != y.mu) return x.mu < y.mu;
                if (x.nu != y.nu) return x.nu < y.nu;
            } else {
                if (x.exact != y.exact) return x.exact;
                auto px = x.pair_numeric, py = y.pair_numeric;
                if (px.real() != py.real()) return px.real() < py.real();
                if (px.imag() != py.imag()) return px.imag() < py.imag();
            }
            return x.size > y.size;
        });
        std::sort(blocks.begin(), blocks.end(), [](const JordanBlock& x, const JordanBlock& y) {
            if (x.exact != y.exact) return x.exact;
            if (x.exact) {
                if (x.eig != y.eig) return x.eig < y.eig;
            } else {
                auto px = x.eig_numeric, py = y.eig_numeric;
                if (px.real() != py.real()) return px.real() < py.real();
                if (px.imag() != py.imag()) return px.imag() < py.imag();
            }
            return x.size > y.size;
        });
    }

    /// (offset, length) per block in canonical component order, rotations
    /// first; rotation blocks have length 2*size.
    std::vector<std::pair<int, int>> component_ranges() const {
        std::vector<std::pair<int, int>> out;
        int off = 0;
        for (const auto& r : rotations) {
            out.emplace_back(off, 2 * r.size);
            off += 2 * r.size;
        }
        for (const auto& b : blocks) {
            out.emplace_back(off, b.size);
            off += b.size;
        }
        return out;
    }

    /// Elementary divisors as (eigenvalue-group id, exponent); a rotation block
    /// contributes one divisor for each member of the conjugate pair.
    std::vector<std::pair<int, int>> elementary_divisors() const {
        std::vector<std::pair<int, int>> out;
        int next_group = 0;
        std::vector<std::pair<size_t, int>> rot_groups;  // (representative index, group id)
        for (size_t i = 0; i < rotations.size(); ++i) {
            int group = -1;
            for (const auto& [rep, id] : rot_groups)
                if (rotation_eq(rotations[i], rotations[rep])) {
                    group = id;
                    break;
                }
            if (group < 0) {
                group = next_group;
                next_group += 2;  // a pair of conjugate eigenvalues
                rot_groups.emplace_back(i, group);
            }
            out.emplace_back(group, rotations[i].size);
            out.emplace_back(group + 1, rotations[i].size);
        }
        std::vector<std::pair<size_t, int>> blk_groups;
        for (size_t i = 0; i < blocks.size(); ++i) {
            int group = -1;
            for (const auto& [rep, id] : blk_groups)
                if (block_eq(blocks[i], blocks[rep])) {
                    group = id;
                    break;
                }
            if (group < 0) {
                group = next_group++;
                blk_groups.emplace_back(i, group);
            }
            out.emplace_back(group, blocks[i].size);
        }
        return out;
    }

    /// Canonical matrix over the rationals; requires all eigenvalue data exact.
    RatMatrix to_rational_matrix() const {
        if (!exact()) throw std::domain_error("structure has numeric eigenvalues; no exact matrix");
        const size_t dim = static_cast<size_t>(n());
        RatMatrix m(dim, dim);
        size_t off = 0;
        for (const auto& r : rotations) {
            for (int k = 0; k < r.size; ++k) {
                size_t p = off + 2 * static_cast<size_t>(k);
                m(p, p) = r.mu;
                m(p, p + 1) = r.nu;
                m(p + 1, p) = -r.nu;
                m(p + 1, p + 1) = r.mu;
                if (k + 1 < r.size) {
                    m(p, p + 2) = Rational(1);
                    m(p + 1, p + 3) = Rational(1);
                }
            }
            off += 2 * static_cast<size_t>(r.size);
        }
        for (const auto& b : blocks) {
            for (int k = 0; k < b.size; ++k) {
                m(off + k, off + k) = b.eig;
                if (k + 1 < b.size) m(off + k, off + k + 1) = Rational(1);
            }
            off += static_cast<size_t>(b.size);
        }
        return m;
    }

    Matrix<Complex> to_numeric_matrix() const {
        const size_t dim = static_cast<size_t>(n());
        Matrix<Complex> m(dim, dim);
        size_t off = 0;
        for (const auto& r : rotations) {
            Complex mu = r.exact ? Complex(r.mu.to_double(), 0) : Complex(r.pair_numeric.real(), 0);
            Complex nu = r.exact ? Complex(r.nu.to_double(), 0) : Complex(r.pair_numeric.imag(), 0);
            for (int k = 0; k < r.size; ++k) {
                size_t p = off + 2 * static_cast<size_t>(k);
                m(p, p) = mu;
                m(p, p + 1) = nu;
                m(p + 1, p) = -nu;
                m(p + 1, p + 1) = mu;
                if (k + 1 < r.size) {
                    m(p, p + 2) = Complex(1, 0);
                    m(p + 1, p + 3) = Complex(1, 0);
                }
            }
            off += 2 * static_cast<size_t>(r.size);
        }
        for (const auto& b : blocks) {
            Complex eig = b.exact ? Complex(b.eig.to_double(), 0) : b.eig_numeric;
            for (int k = 0; k < b.size; ++k) {
                m(off + k, off + k) = eig;
                if (k + 1 < b.size) m(off + k, off + k + 1) = Complex(1, 0);
            }
            off += static_cast<size_t>(b.size);
        }
        return m;
    }

    /// Same block layout with distinct stand-in eigenvalues: group g becomes
    /// the rational eigenvalue g (rotation groups the pair (g, 1)). Matrices
    /// commuting with the stand-in agree with those commuting with the original
    /// since the commutant depends only on the equality pattern and sizes.
    RatMatrix to_placeholder_matrix() const {
        JordanStructure ph = *this;
        int next_group = 0;
        std::vector<RotationBlock> seen_rot;
        for (auto& r : ph.rotations) {
            RotationBlock orig = r;
            int group = -1;
            for (size_t j = 0; j < seen_rot.size(); ++j)
                if (rotation_eq(orig, seen_rot[j])) group = static_cast<int>(j);
            if (group < 0) {
                seen_rot.push_back(orig);
                group = static_cast<int>(seen_rot.size()) - 1;
            }
            r.exact = true;
            r.mu = Rational(group);
            r.nu = Rational(1);
        }
        next_group = static_cast<int>(seen_rot.size());
        std::vector<JordanBlock> seen_blk;
        std::vector<int> blk_ids;
        for (auto& b : ph.blocks) {
            JordanBlock orig = b;
            int group = -1;
            for (size_t j = 0; j < seen_blk.size(); ++j)
                if (block_eq(orig, seen_blk[j])) group = blk_ids[j];
            if (group < 0) {
                seen_blk.push_back(orig);
                blk_ids.push_back(next_group);
                group = next_group++;
            }
            b.exact = true;
            b.eig = Rational(group);
        }
        return ph.to_rational_matrix();
    }

    static bool block_eq(const JordanBlock& x, const JordanBlock& y) {
        if (x.exact != y.exact) return false;
        if (x.exact) return x.eig == y.eig;
        return x.eig_numeric == y.eig_numeric;  // cluster representatives compare exactly
    }
    static bool rotation_eq(const RotationBlock& x, const RotationBlock& y) {
        if (x.exact != y.exact) return false;
        if (x.exact) return x.mu == y.mu && x.nu == y.nu;
        return x.pair_numeric == y.pair_numeric;
    }
};

namespace detail {

/// Block sizes for one eigenvalue from the rank sequence of (D - eig*E)^k:
/// the count of blocks of size >= k is rank^(k-1) - rank^k.
inline std::vector<int> block_sizes_from_ranks(const std::vector<size_t>& ranks) {
    std::vector<int> ge_counts;  // ge_counts[k-1] = #blocks of size >= k
    for (size_t k = 1; k < ranks.size(); ++k)
        ge_counts.push_back(static_cast<int>(ranks[k - 1] - ranks[k]));
    std::vector<int> sizes;
    for (size_t k = 0; k < ge_counts.size(); ++k) {
        int exactly = ge_counts[k] - (k + 1 < ge_counts.size() ? ge_counts[k + 1] : 0);
        for (int c = 0; c < exactly; ++c) sizes.push_back(static_cast<int>(k) + 1);
    }
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

}  // namespace detail

/// Jordan data recovered from rank sequences. Rational eigenvalues are exact;
/// leftover irrational/complex ones are located numerically (companion-matrix
/// eigenvalues, clustered at the given relative tolerance) and flagged as such.
/// Over the real field, numeric conjugate pairs merge into rotation blocks.
inline JordanStructure jordan_structure(const RatMatrix& d, FieldTag field,
                                        double cluster_tol = 1e-9) {
    if (!d.is_square()) throw std::invalid_argument("jordan structure of non-square matrix");
    const size_t n = d.rows();
    JordanStructure js;
    js.field = field;

    UniPoly chi = characteristic_polynomial(d);
    RootFactorization fac = factor_rational_roots(chi);

    for (const auto& [eig, mult] : fac.roots) {
        RatMatrix shifted = d;
        for (size_t i = 0; i < n; ++i) shifted(i, i) -= eig;
        std::vector<size_t> ranks{n};
        RatMatrix power = RatMatrix::identity(n);
        while (static_cast<int>(n - ranks.back()) < mult && ranks.size() <= n) {
            power = power * shifted;
            ranks.push_back(rank(power));
        }
        if (static_cast<int>(n - ranks.back()) != mult)
            throw std::runtime_error("rank sequence inconsistent with eigenvalue multiplicity");
        for (int size : detail::block_sizes_from_ranks(ranks)) {
            JordanBlock b;
            b.eig = eig;
            b.eig_numeric = Complex(eig.to_double(), 0);
            b.size = size;
            js.blocks.push_back(b);
        }
    }

    if (fac.residual.degree() > 0) {
        auto clusters = cluster_roots(companion_roots(fac.residual), cluster_tol);
        Matrix<Complex> dc = d.map<Complex>([](const Rational& x) { return Complex(x.to_double(), 0); });
        std::vector<std::pair<Complex, std::vector<int>>> numeric_blocks;
        for (const auto& [center, mult] : clusters) {
            Matrix<Complex> shifted = dc;
            for (size_t i = 0; i < n; ++i) shifted(i, i) -= center;
            std::vector<size_t> ranks{n};
            Matrix<Complex> power = Matrix<Complex>::identity(n);
            while (static_cast<int>(n - ranks.back()) < mult && ranks.size() <= n) {
                power = power * shifted;
                ranks.push_back(numeric_rank(power, cluster_tol));
            }
            numeric_blocks.emplace_back(center, detail::block_sizes_from_ranks(ranks));
        }
        const double scale_tol = 1e-7;
        if (field == FieldTag::Real) {
            std::vector<bool> used(numeric_blocks.size(), false);
            for (size_t i = 0; i < numeric_blocks.size(); ++i) {
                if (used[i]) continue;
                const auto& [z, sizes] = numeric_blocks[i];
                if (std::abs(z.imag()) <= scale_tol) {
                    used[i] = true;
                    for (int s : sizes) {
                        JordanBlock b;
                        b.exact = false;
                        b.eig_numeric = Complex(z.real(), 0);
                        b.size = s;
                        js.blocks.push_back(b);
                    }
                    continue;
                }
                size_t partner = numeric_blocks.size();
                for (size_t j = i + 1; j < numeric_blocks.size(); ++j) {
                    if (used[j]) continue;
                    if (std::abs(numeric_blocks[j].first - std::conj(z)) <= scale_tol &&
                        numeric_blocks[j].second == sizes) {
                        partner = j;
                        break;
                    }
                }
                if (partner == numeric_blocks.size())
                    throw std::runtime_error("inconsistent conjugate structure");
                used[i] = used[partner] = true;
                Complex canonical(z.real(), std::abs(z.imag()));
                for (int s : sizes) {
                    RotationBlock r;
                    r.exact = false;
                    r.pair_numeric = canonical;
                    r.size = s;
                    js.rotations.push_back(r);
                }
            }
        } else {
            for (const auto& [z, sizes] : numeric_blocks)
                for (int s : sizes) {
                    JordanBlock b;
                    b.exact = false;
                    b.eig_numeric = z;
                    b.size = s;
                    js.blocks.push_back(b);
                }
        }
    }

    js.canonicalize();
    if (js.n() != static_cast<int>(n)) throw std::runtime_error("jordan block sizes do not sum to n");
    return js;
}

/// System input: coefficient pair (A, B), a reduced matrix D, or Jordan data
/// directly. The forcing term enters only as a flag; it never changes the
/// symmetry structure of the reduced system.
struct SystemSpec {
    int n = 0;
    FieldTag field = FieldTag::Complex;
    bool has_forcing = false;
    std::optional<RatMatrix> coeff_a, coeff_b;
    std::optional<RatMatrix> matrix_d;
    std::optional<JordanStructure> jordan;

    static SystemSpec from_matrices(RatMatrix a, RatMatrix b, FieldTag field,
                                    bool has_forcing = false) {
        SystemSpec s;
        s.n = static_cast<int>(a.rows());
        s.field = field;
        s.has_forcing = has_forcing;
        s.matrix_d = reduce_system(a, b);
        s.coeff_a = std::move(a);
        s.coeff_b = std::move(b);
        s.validate();
        return s;
    }
    static SystemSpec from_reduced(RatMatrix d, FieldTag field) {
        SystemSpec s;
        s.n = static_cast<int>(d.rows());
        s.field = field;
        if (!d.is_square()) throw std::invalid_argument("D must be square");
        s.matrix_d = std::move(d);
        s.validate();
        return s;
    }
    static SystemSpec from_structure(JordanStructure js) {
        SystemSpec s;
        s.n = js.n();
        s.field = js.field;
        js.canonicalize();
        s.jordan = std::move(js);
        s.validate();
        return s;
    }

    void validate() const {
        if (n < 2) throw std::invalid_argument("system size must be at least 2");
    }

    const RatMatrix& reduced_matrix() const {
        if (!matrix_d) throw std::logic_error("no reduced matrix available");
        return *matrix_d;
    }

    JordanStructure structure(double cluster_tol = 1e-9) const {
        if (jordan) return *jordan;
        return jordan_structure(*matrix_d, field, cluster_tol);
    }
};

}  // namespace liesym
