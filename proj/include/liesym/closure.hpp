#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liesym/numeric.hpp"
#include "liesym/vector_field.hpp"

namespace liesym {

struct ClosureReport {
    bool independent = false;
    bool closed = false;
    std::optional<std::pair<size_t, size_t>> failed_pair;
    std::string detail;

    bool ok() const { return independent && closed; }
};

namespace closure_detail {

/// Coordinates of a restricted field: the constant block (c1, c0, vec H) and
/// the drift block keyed by (component, power, rate, osc, trig). Drift keys
/// split into sectors by the quadratic extension their frequency data lives
/// in; generators built by this library touch exactly one sector each.
struct DriftKey {
    int comp, power;
    QuadExt rate, osc;
    int trig;

    bool operator<(const DriftKey& o) const {
        if (comp != o.comp) return comp < o.comp;
        if (power != o.power) return power < o.power;
        if (!(rate == o.rate)) return rate < o.rate;
        if (!(osc == o.osc)) return osc < o.osc;
        return trig < o.trig;
    }
    bool operator==(const DriftKey& o) const {
        return comp == o.comp && power == o.power && rate == o.rate && osc == o.osc && trig == o.trig;
    }

    mpz_class sector() const {
        if (rate.radicand() != 0) return rate.radicand();
        return osc.radicand();
    }
};

struct ExactCoords {
    QuadExt c1, c0;
    std::vector<QuadExt> h;                 // n*n, row-major
    std::map<DriftKey, QuadExt> drift;

    bool const_part_zero() const {
        if (!c1.is_zero() || !c0.is_zero()) return false;
        for (const auto& v : h)
            if (!v.is_zero()) return false;
        return true;
    }
};

inline ExactCoords coords_of(const VectorField<QuadExt>& q) {
    ExactCoords c;
    c.c1 = q.c1;
    c.c0 = q.c0;
    c.h = q.linear.entries();
    for (int b = 0; b < q.n(); ++b)
        for (const auto& t : q.drift[static_cast<size_t>(b)].terms())
            c.drift[DriftKey{b, t.power, t.rate, t.osc, static_cast<int>(t.trig)}] = t.coeff;
    return c;
}

/// Row-reduced span with recorded pivots, for repeated membership tests.
struct ReducedSpan {
    std::vector<std::vector<QuadExt>> rows;
    std::vector<size_t> pivots;
    size_t rank() const { return rows.size(); }

    void build(std::vector<std::vector<QuadExt>> input) {
        for (auto& row : input) {
            reduce(row);
            size_t p = first_nonzero(row);
            if (p == row.size()) continue;
            QuadExt inv = QuadExt(1) / row[p];
            for (auto& v : row) v = inv * v;
            for (size_t r = 0; r < rows.size(); ++r) {
                if (rows[r][p].is_zero()) continue;
                QuadExt f = rows[r][p];
                for (size_t k = 0; k < row.size(); ++k) rows[r][k] -= f * row[k];
            }
            rows.push_back(std::move(row));
            pivots.push_back(p);
        }
    }

    void reduce(std::vector<QuadExt>& v) const {
        for (size_t r = 0; r < rows.size(); ++r) {
            const QuadExt& f = v[pivots[r]];
            if (f.is_zero()) continue;
            QuadExt scale = f;
            for (size_t k = 0; k < v.size(); ++k) v[k] -= scale * rows[r][k];
        }
    }

    bool contains(std::vector<QuadExt> v) const {
        reduce(v);
        return first_nonzero(v) == v.size();
    }

    static size_t first_nonzero(const std::vector<QuadExt>& v) {
        for (size_t k = 0; k < v.size(); ++k)
            if (!v[k].is_zero()) return k;
        return v.size();
    }
};

}  // namespace closure_detail

/// Exact Lie-closure and independence check of a restricted-field algebra.
/// The coordinate space splits into the constant block (c1, c0, vec H) and
/// per-extension drift sectors; generator supports are disjoint across the
/// split, so membership solves run per block over a single exact field.
inline ClosureReport closure_check(const SymmetryAlgebra<QuadExt>& alg);

namespace closure_detail {

inline ClosureReport closure_restricted(const SymmetryAlgebra<QuadExt>& alg) {
    ClosureReport rep;
    const size_t n2 = static_cast<size_t>(alg.n) * static_cast<size_t>(alg.n);

    std::vector<ExactCoords> coords;
    coords.reserve(alg.generators.size());
    for (const auto& g : alg.generators) coords.push_back(coords_of(g.restricted()));

    // Sector layout of drift keys.
    std::map<mpz_class, std::vector<DriftKey>> sector_keys;
    for (const auto& c : coords)
        for (const auto& [k, v] : c.drift) sector_keys[k.sector()].push_back(k);
    for (auto& [d, keys] : sector_keys) {
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    }

    // Generators must sit in one block each (drift in one sector, or constant
    // block only); that is how every algebra here is built.
    auto drift_sector = [](const ExactCoords& c) -> std::optional<mpz_class> {
        std::optional<mpz_class> s;
        for (const auto& [k, v] : c.drift) {
            mpz_class ks = k.sector();
            if (s && *s != ks) throw std::domain_error("generator drift spans two extensions");
            s = ks;
        }
        return s;
    };
    for (const auto& c : coords)
        if (!c.drift.empty() && !c.const_part_zero())
            throw std::domain_error("generator mixes drift and linear coordinates");

    auto drift_vector = [&](const ExactCoords& c, const std::vector<DriftKey>& keys) {
        std::vector<QuadExt> v(keys.size(), QuadExt(0));
        for (const auto& [k, val] : c.drift) {
            auto it = std::lower_bound(keys.begin(), keys.end(), k);
            if (it == keys.end() || !(*it == k)) return std::optional<std::vector<QuadExt>>();
            v[static_cast<size_t>(it - keys.begin())] = val;
        }
        return std::optional<std::vector<QuadExt>>(std::move(v));
    };

    // Reduced spans: one per drift sector plus the constant block.
    std::map<mpz_class, ReducedSpan> spans;
    std::map<mpz_class, size_t> sector_counts;
    ReducedSpan const_span;
    size_t const_count = 0;
    {
        std::map<mpz_class, std::vector<std::vector<QuadExt>>> sector_rows;
        std::vector<std::vector<QuadExt>> const_rows;
        for (const auto& c : coords) {
            if (!c.drift.empty()) {
                mpz_class s = *drift_sector(c);
                auto v = drift_vector(c, sector_keys[s]);
                sector_rows[s].push_back(std::move(*v));
                ++sector_counts[s];
            } else {
                std::vector<QuadExt> row(n2 + 2, QuadExt(0));
                row[0] = c.c1;
                row[1] = c.c0;
                for (size_t k = 0; k < n2; ++k) row[2 + k] = c.h[k];
                const_rows.push_back(std::move(row));
                ++const_count;
            }
        }
        for (auto& [s, rows] : sector_rows) spans[s].build(std::move(rows));
        const_span.build(std::move(const_rows));
    }

    rep.independent = const_span.rank() == const_count;
    for (const auto& [s, span] : spans)
        if (span.rank() != sector_counts[s]) rep.independent = false;
    if (!rep.independent) {
        rep.detail = "generators are linearly dependent";
        return rep;
    }

    rep.closed = true;
    for (size_t i = 0; i < alg.generators.size() && rep.closed; ++i) {
        for (size_t j = i + 1; j < alg.generators.size() && rep.closed; ++j) {
            VectorField<QuadExt> br =
                lie_bracket(alg.generators[i].restricted(), alg.generators[j].restricted());
            ExactCoords c = coords_of(br);
            bool ok = true;
            if (!c.c1.is_zero()) ok = false;  // no generator family reaches c1 besides dilation itself
            if (ok && !(c.c0.is_zero() && std::all_of(c.h.begin(), c.h.end(),
                                                      [](const QuadExt& v) { return v.is_zero(); }))) {
                std::vector<QuadExt> row(n2 + 2, QuadExt(0));
                row[0] = c.c1;
                row[1] = c.c0;
                for (size_t k = 0; k < n2; ++k) row[2 + k] = c.h[k];
                ok = const_span.contains(std::move(row));
            }
            if (ok && !c.drift.empty()) {
                // Split the drift by sector and test each part in its own span.
                std::map<mpz_class, ExactCoords> parts;
                for (const auto& [k, v] : c.drift) parts[k.sector()].drift[k] = v;
                for (const auto& [s, part] : parts) {
                    auto it = spans.find(s);
                    auto v = it == spans.end() ? std::nullopt : drift_vector(part, sector_keys[s]);
                    if (!v || !it->second.contains(std::move(*v))) {
                        ok = false;
                        break;
                    }
                }
            }
            if (!ok) {
                rep.closed = false;
                rep.failed_pair = {i, j};
                rep.detail = "bracket escapes the generator span";
            }
        }
    }
    return rep;
}

/// Projective (free-system) closure: coordinates are monomial coefficients of
/// xi and each eta component; everything is rational.
inline ClosureReport closure_projective(const SymmetryAlgebra<QuadExt>& alg) {
    ClosureReport rep;
    using Key = std::pair<int, MultiPoly::Monomial>;  // slot: -1 = xi, b >= 0 = eta^b
    auto coords_of = [&](const ProjectiveVectorField& f) {
        std::map<Key, Rational> c;
        for (const auto& [m, v] : f.xi.terms()) c[{-1, m}] = v;
        for (int b = 0; b < f.n(); ++b)
            for (const auto& [m, v] : f.eta[static_cast<size_t>(b)].terms()) c[{b, m}] = v;
        return c;
    };

    std::vector<std::map<Key, Rational>> coords;
    std::vector<Key> keys;
    for (const auto& g : alg.generators) {
        coords.push_back(coords_of(g.projective()));
        for (const auto& [k, v] : coords.back()) keys.push_back(k);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    auto vec_of = [&](const std::map<Key, Rational>& c) {
        std::vector<QuadExt> v(keys.size(), QuadExt(0));
        for (const auto& [k, val] : c) {
            auto it = std::lower_bound(keys.begin(), keys.end(), k);
            if (it == keys.end() || *it != k) return std::optional<std::vector<QuadExt>>();
            v[static_cast<size_t>(it - keys.begin())] = QuadExt(val);
        }
        return std::optional<std::vector<QuadExt>>(std::move(v));
    };

    closure_detail::ReducedSpan span;
    {
        std::vector<std::vector<QuadExt>> rows;
        for (const auto& c : coords) rows.push_back(*vec_of(c));
        span.build(std::move(rows));
    }
    rep.independent = span.rank() == alg.generators.size();
    if (!rep.independent) {
        rep.detail = "generators are linearly dependent";
        return rep;
    }

    rep.closed = true;
    for (size_t i = 0; i < alg.generators.size() && rep.closed; ++i)
        for (size_t j = i + 1; j < alg.generators.size() && rep.closed; ++j) {
            ProjectiveVectorField br =
                lie_bracket(alg.generators[i].projective(), alg.generators[j].projective());
            auto v = vec_of(coords_of(br));
            if (!v || !span.contains(std::move(*v))) {
                rep.closed = false;
                rep.failed_pair = {i, j};
                rep.detail = "bracket escapes the generator span";
            }
        }
    return rep;
}

}  // namespace closure_detail

inline ClosureReport closure_check(const SymmetryAlgebra<QuadExt>& alg) {
    bool any_proj = false, all_proj = true;
    for (const auto& g : alg.generators) {
        if (g.is_projective()) any_proj = true;
        else all_proj = false;
    }
    if (any_proj && !all_proj) throw std::domain_error("mixed generator representations");
    return any_proj ? closure_detail::closure_projective(alg)
                    : closure_detail::closure_restricted(alg);
}

/// Numeric closure: joint least-squares membership over all coordinates, with
/// approximate drift-key matching.
inline ClosureReport closure_check(const SymmetryAlgebra<Complex>& alg, double tol = 1e-8) {
    ClosureReport rep;
    struct NKey {
        int comp, power, trig;
        Complex rate, osc;
    };
    std::vector<NKey> keys;
    auto key_index = [&](const NKey& k, bool insert) -> std::optional<size_t> {
        for (size_t i = 0; i < keys.size(); ++i) {
            const NKey& o = keys[i];
            if (o.comp == k.comp && o.power == k.power && o.trig == k.trig &&
                std::abs(o.rate - k.rate) <= 1e-9 * std::max(1.0, std::abs(o.rate)) &&
                std::abs(o.osc - k.osc) <= 1e-9 * std::max(1.0, std::abs(o.osc)))
                return i;
        }
        if (!insert) return std::nullopt;
        keys.push_back(k);
        return keys.size() - 1;
    };

    const size_t n2 = static_cast<size_t>(alg.n) * static_cast<size_t>(alg.n);
    auto coords_of = [&](const VectorField<Complex>& q, bool insert) -> std::optional<std::map<size_t, Complex>> {
        std::map<size_t, Complex> c;  // index space: 0 = c1, 1 = c0, 2.. = H, then drift keys
        if (!is_zero(q.c1)) c[0] = q.c1;
        if (!is_zero(q.c0)) c[1] = q.c0;
        for (size_t k = 0; k < n2; ++k)
            if (!is_zero(q.linear.entries()[k])) c[2 + k] = q.linear.entries()[k];
        for (int b = 0; b < q.n(); ++b)
            for (const auto& t : q.drift[static_cast<size_t>(b)].terms()) {
                auto idx = key_index(NKey{b, t.power, static_cast<int>(t.trig), t.rate, t.osc}, insert);
                if (!idx) return std::nullopt;
                c[2 + n2 + *idx] += t.coeff;
            }
        return c;
    };

    std::vector<std::map<size_t, Complex>> gen_coords;
    for (const auto& g : alg.generators) gen_coords.push_back(*coords_of(g.restricted(), true));

    const size_t dim = 2 + n2 + keys.size();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(gen_coords.size()));
    for (size_t g = 0; g < gen_coords.size(); ++g)
        for (const auto& [idx, val] : gen_coords[g]) a(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(g)) = val;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
    qr.setThreshold(1e-9);
    rep.independent = static_cast<size_t>(qr.rank()) == gen_coords.size();
    if (!rep.independent) {
        rep.detail = "generators are numerically dependent";
        return rep;
    }

    auto cod = a.completeOrthogonalDecomposition();
    rep.closed = true;
    for (size_t i = 0; i < alg.generators.size() && rep.closed; ++i)
        for (size_t j = i + 1; j < alg.generators.size() && rep.closed; ++j) {
            VectorField<Complex> br =
                lie_bracket(alg.generators[i].restricted(), alg.generators[j].restricted());
            auto c = coords_of(br, false);
            bool ok = c.has_value();
            if (ok) {
                Eigen::VectorXcd b = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
                double scale = 1.0;
                for (const auto& [idx, val] : *c) {
                    b(static_cast<Eigen::Index>(idx)) = val;
                    scale = std::max(scale, std::abs(val));
                }
                Eigen::VectorXcd x = cod.solve(b);
                ok = (a * x - b).norm() <= tol * scale;
            }
            if (!ok) {
                rep.closed = false;
                rep.failed_pair = {i, j};
                rep.detail = "bracket escapes the generator span";
            }
        }
    return rep;
}

/// Numeric span membership of a single candidate field against an algebra's
/// generators (least squares).
inline bool in_span_numeric(const SymmetryAlgebra<Complex>& alg, const VectorField<Complex>& q,
                            double tol = 1e-8) {
    SymmetryAlgebra<Complex> extended = alg;
    extended.generators.push_back({GenFamily::Solution, q});
    // q is in the span iff adding it does not raise the rank.
    struct NKey {
        int comp, power, trig;
        Complex rate, osc;
    };
    std::vector<NKey> keys;
    auto key_index = [&](const NKey& k) -> size_t {
        for (size_t i = 0; i < keys.size(); ++i) {
            const NKey& o = keys[i];
            if (o.comp == k.comp && o.power == k.power && o.trig == k.trig &&
                std::abs(o.rate - k.rate) <= 1e-9 * std::max(1.0, std::abs(o.rate)) &&
                std::abs(o.osc - k.osc) <= 1e-9 * std::max(1.0, std::abs(o.osc)))
                return i;
        }
        keys.push_back(k);
        return keys.size() - 1;
    };
    const size_t n2 = static_cast<size_t>(alg.n) * static_cast<size_t>(alg.n);
    auto coords_of = [&](const VectorField<Complex>& f) {
        std::map<size_t, Complex> c;
        if (!is_zero(f.c1)) c[0] = f.c1;
        if (!is_zero(f.c0)) c[1] = f.c0;
        for (size_t k = 0; k < n2; ++k)
            if (!is_zero(f.linear.entries()[k])) c[2 + k] = f.linear.entries()[k];
        for (int b = 0; b < f.n(); ++b)
            for (const auto& t : f.drift[static_cast<size_t>(b)].terms())
                c[2 + n2 + key_index(NKey{b, t.power, static_cast<int>(t.trig), t.rate, t.osc})] += t.coeff;
        return c;
    };
    std::vector<std::map<size_t, Complex>> cols;
    for (const auto& g : alg.generators) cols.push_back(coords_of(g.restricted()));
    auto target = coords_of(q);

    const size_t dim = 2 + n2 + keys.size();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(cols.size()));
    for (size_t g = 0; g < cols.size(); ++g)
        for (const auto& [idx, val] : cols[g]) a(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(g)) = val;
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    double scale = 1.0;
    for (const auto& [idx, val] : target) {
        b(static_cast<Eigen::Index>(idx)) = val;
        scale = std::max(scale, std::abs(val));
    }
    auto [x, res] = least_squares(a, b);
    return res <= tol * scale;
}

}  // namespace liesym
