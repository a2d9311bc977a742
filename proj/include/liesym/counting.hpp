#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "liesym/smith.hpp"
#include "liesym/structure.hpp"

namespace liesym {

/// Commutant dimension from the invariant-factor degree partition
/// n1 >= ... >= nq:  N = n1 + 3*n2 + ... + (2q-1)*nq.
inline long commutant_dim_from_partition(const std::vector<int>& degrees) {
    long total = 0;
    for (size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] <= 0 || (i > 0 && degrees[i] > degrees[i - 1]))
            throw std::invalid_argument("degrees must be a descending positive partition");
        total += static_cast<long>(2 * i + 1) * degrees[i];
    }
    return total;
}

/// Commutant dimension from elementary divisors (eigenvalue-group, exponent):
/// N = sum over pairs of gcd degrees, i.e. min(k_i, k_j) for equal eigenvalues
/// and 0 otherwise.
inline long commutant_dim_from_divisors(const std::vector<std::pair<int, int>>& divisors) {
    long total = 0;
    for (const auto& [gi, ki] : divisors)
        for (const auto& [gj, kj] : divisors)
            if (gi == gj) total += std::min(ki, kj);
    return total;
}

enum class Classification { Free, Nilpotent, NonNilpotent };

inline const char* classification_name(Classification c) {
    switch (c) {
        case Classification::Free: return "free";
        case Classification::Nilpotent: return "nilpotent";
        case Classification::NonNilpotent: return "non-nilpotent";
    }
    return "?";
}

/// Dimension of the symmetry algebra of the free system, (n+2)^2 - 1.
inline long free_algebra_dimension(int n) { return static_cast<long>(n + 2) * (n + 2) - 1; }

/// Dimension for a non-scalar system: 2n + N + 1, plus one more in the
/// nilpotent case.
inline long algebra_dimension(int n, long commutant_dim, bool nilpotent) {
    return 2L * n + commutant_dim + 1 + (nilpotent ? 1 : 0);
}

struct DimensionReport {
    long dimension = 0;
    Classification classification = Classification::NonNilpotent;
    long commutant_dim = 0;
    std::vector<int> partition;  // invariant-factor degrees
};

/// Dimension, classification and N without building any generators; exact for
/// every rational matrix, irrational eigenvalues included, since everything is
/// read off the invariant-factor degrees.
inline DimensionReport dimension_only(const RatMatrix& d) {
    DimensionReport r;
    InvariantFactorData inv = smith_invariant_factors(d);
    r.partition = inv.degrees;
    r.commutant_dim = commutant_dim_from_partition(inv.degrees);
    const int n = static_cast<int>(d.rows());
    if (is_scalar(d)) {
        r.classification = Classification::Free;
        r.dimension = free_algebra_dimension(n);
    } else if (is_nilpotent(d)) {
        r.classification = Classification::Nilpotent;
        r.dimension = algebra_dimension(n, r.commutant_dim, true);
    } else {
        r.classification = Classification::NonNilpotent;
        r.dimension = algebra_dimension(n, r.commutant_dim, false);
    }
    return r;
}

/// Invariant-factor degrees read off Jordan data: the alpha-th factor collects
/// the alpha-th largest exponent of each eigenvalue group.
inline std::vector<int> invariant_degrees_of(const JordanStructure& js) {
    auto divisors = js.elementary_divisors();
    // group id -> exponents, descending
    std::vector<std::vector<int>> per_group;
    for (const auto& [g, k] : divisors) {
        if (g >= static_cast<int>(per_group.size())) per_group.resize(static_cast<size_t>(g) + 1);
        per_group[static_cast<size_t>(g)].push_back(k);
    }
    size_t q = 0;
    for (auto& exps : per_group) {
        std::sort(exps.rbegin(), exps.rend());
        q = std::max(q, exps.size());
    }
    std::vector<int> degrees(q, 0);
    for (const auto& exps : per_group)
        for (size_t a = 0; a < exps.size(); ++a) degrees[a] += exps[a];
    return degrees;
}

inline DimensionReport dimension_only(const JordanStructure& js) {
    DimensionReport r;
    std::vector<int> degrees = invariant_degrees_of(js);
    r.partition = degrees;
    r.commutant_dim = commutant_dim_from_partition(degrees);
    const int n = js.n();
    if (js.scalar()) {
        r.classification = Classification::Free;
        r.dimension = free_algebra_dimension(n);
    } else if (js.nilpotent()) {
        r.classification = Classification::Nilpotent;
        r.dimension = algebra_dimension(n, r.commutant_dim, true);
    } else {
        r.classification = Classification::NonNilpotent;
        r.dimension = algebra_dimension(n, r.commutant_dim, false);
    }
    return r;
}

inline std::vector<std::vector<int>> partitions_of(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int max_part) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

/// Attainable symmetry-algebra dimensions over non-scalar n x n matrices,
/// enumerated over invariant-factor partitions. Every partition is realized by
/// a single-eigenvalue Jordan matrix (nonzero eigenvalue for the non-nilpotent
/// value, zero for the nilpotent one); the all-ones partition is excluded as it
/// forces a scalar matrix.
inline std::set<long> realizable_dimensions(int n) {
    if (n < 2 || n > 8) throw std::invalid_argument("enumeration supported for 2 <= n <= 8");
    std::set<long> dims;
    for (const auto& part : partitions_of(n)) {
        if (static_cast<int>(part.size()) == n) continue;  // scalar
        long cd = commutant_dim_from_partition(part);
        dims.insert(algebra_dimension(n, cd, false));
        dims.insert(algebra_dimension(n, cd, true));
    }
    return dims;
}

}  // namespace liesym
