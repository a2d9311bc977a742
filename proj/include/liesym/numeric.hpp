#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>
#include <vector>

#include "liesym/matrix.hpp"
#include "liesym/polynomial.hpp"

namespace liesym {

using Complex = std::complex<double>;

inline Eigen::MatrixXcd to_eigen(const Matrix<Complex>& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return out;
}

/// Roots of a nonconstant polynomial as eigenvalues of its companion matrix.
inline std::vector<Complex> companion_roots(const UniPoly& p) {
    const int n = p.degree();
    if (n <= 0) return {};
    UniPoly m = p.monic();
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -m.coeff(i).to_double();
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    std::vector<Complex> roots(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) roots[static_cast<size_t>(i)] = es.eigenvalues()(i);
    return roots;
}

/// Groups numerically close roots; each cluster is reported with its center
/// (the mean) and multiplicity.
inline std::vector<std::pair<Complex, int>> cluster_roots(std::vector<Complex> roots,
                                                          double rel_tol = 1e-9) {
    std::vector<std::pair<Complex, int>> clusters;
    double scale = 1.0;
    for (Complex r : roots) scale = std::max(scale, std::abs(r));
    const double tol = rel_tol * scale * 100;  // generous: multiple roots blur as n-th roots of eps
    for (Complex r : roots) {
        bool placed = false;
        for (auto& [center, count] : clusters) {
            if (std::abs(r - center) <= std::max(tol, 1e-7 * scale)) {
                center = (center * static_cast<double>(count) + r) / static_cast<double>(count + 1);
                ++count;
                placed = true;
                break;
            }
        }
        if (!placed) clusters.emplace_back(r, 1);
    }
    std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) {
        if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
        return a.first.imag() < b.first.imag();
    });
    return clusters;
}

/// Numeric rank by column-pivoted QR with a relative threshold.
inline size_t numeric_rank(const Matrix<Complex>& m, double rel_tol = 1e-9) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(to_eigen(m));
    qr.setThreshold(rel_tol);
    return static_cast<size_t>(qr.rank());
}

/// Least-squares solve of A x = b; returns (x, residual norm).
inline std::pair<Eigen::VectorXcd, double> least_squares(const Eigen::MatrixXcd& a,
                                                         const Eigen::VectorXcd& b) {
    Eigen::VectorXcd x = a.completeOrthogonalDecomposition().solve(b);
    double res = (a * x - b).norm();
    return {x, res};
}

}  // namespace liesym
