#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "liesym/counting.hpp"
#include "liesym/exp_poly.hpp"
#include "liesym/matrix.hpp"
#include "liesym/multipoly.hpp"
#include "liesym/structure.hpp"

namespace liesym {

/// Restricted point-symmetry field of a linear system:
///   Q = (c1 t + c0) d/dt + (H x + phi(t)) . d/dx.
/// Drift components are exp-polynomials; the linear part is constant.
template <class S>
struct VectorField {
    S c1{}, c0{};
    Matrix<S> linear;                // n x n
    std::vector<ExpPoly<S>> drift;   // length n

    int n() const { return static_cast<int>(drift.size()); }

    static VectorField zero(int n) {
        VectorField q;
        q.linear = Matrix<S>(static_cast<size_t>(n), static_cast<size_t>(n));
        q.drift.resize(static_cast<size_t>(n));
        return q;
    }
    static VectorField time_translation(int n) {
        VectorField q = zero(n);
        q.c0 = S(1);
        return q;
    }

    bool is_zero() const {
        if (!liesym::is_zero(c1) || !liesym::is_zero(c0) || !linear.is_zero()) return false;
        for (const auto& p : drift)
            if (!p.is_zero()) return false;
        return true;
    }
};

/// Generator of the free system's projective algebra: xi and each eta^b are
/// polynomials in (t, x^1, ..., x^n) of total degree at most two.
struct ProjectiveVectorField {
    MultiPoly xi;                  // over nvars = n + 1 (t first)
    std::vector<MultiPoly> eta;    // length n

    int n() const { return static_cast<int>(eta.size()); }
};

/// Lie bracket of two restricted fields; the family is closed under it.
template <class S>
VectorField<S> lie_bracket(const VectorField<S>& q1, const VectorField<S>& q2) {
    if (q1.n() != q2.n()) throw std::invalid_argument("bracket of fields of different sizes");
    VectorField<S> out = VectorField<S>::zero(q1.n());
    // xi part: Q1(xi2) - Q2(xi1) with xi affine in t collapses to a constant.
    out.c1 = S(0);
    out.c0 = q2.c1 * q1.c0 - q1.c1 * q2.c0;
    // eta part: linear piece is the reversed commutator, drift transports both ways.
    out.linear = q2.linear * q1.linear - q1.linear * q2.linear;
    ExpPoly<S> xi1 = ExpPoly<S>::term(q1.c1, 1, S(0)) + ExpPoly<S>::constant(q1.c0);
    ExpPoly<S> xi2 = ExpPoly<S>::term(q2.c1, 1, S(0)) + ExpPoly<S>::constant(q2.c0);
    for (int b = 0; b < q1.n(); ++b) {
        ExpPoly<S> d = xi1 * q2.drift[static_cast<size_t>(b)].derivative() -
                       xi2 * q1.drift[static_cast<size_t>(b)].derivative();
        for (int a = 0; a < q1.n(); ++a) {
            const S& h2 = q2.linear(static_cast<size_t>(b), static_cast<size_t>(a));
            if (!liesym::is_zero(h2)) d += h2 * q1.drift[static_cast<size_t>(a)];
            const S& h1 = q1.linear(static_cast<size_t>(b), static_cast<size_t>(a));
            if (!liesym::is_zero(h1)) d -= h1 * q2.drift[static_cast<size_t>(a)];
        }
        out.drift[static_cast<size_t>(b)] = std::move(d);
    }
    return out;
}

/// Bracket of projective fields (general point-symmetry bracket on polynomial
/// coefficients).
inline ProjectiveVectorField lie_bracket(const ProjectiveVectorField& q1,
                                         const ProjectiveVectorField& q2) {
    if (q1.n() != q2.n()) throw std::invalid_argument("bracket of fields of different sizes");
    const int n = q1.n();
    auto apply = [&](const ProjectiveVectorField& q, const MultiPoly& f) {
        MultiPoly out = q.xi * f.derivative(0);
        for (int a = 0; a < n; ++a) out += q.eta[static_cast<size_t>(a)] * f.derivative(static_cast<size_t>(a) + 1);
        return out;
    };
    ProjectiveVectorField out;
    out.xi = apply(q1, q2.xi) - apply(q2, q1.xi);
    out.eta.resize(static_cast<size_t>(n));
    for (int b = 0; b < n; ++b)
        out.eta[static_cast<size_t>(b)] =
            apply(q1, q2.eta[static_cast<size_t>(b)]) - apply(q2, q1.eta[static_cast<size_t>(b)]);
    return out;
}

enum class GenFamily { Solution, Commutant, TimeTranslation, Dilation, Projective };

inline const char* family_name(GenFamily f) {
    switch (f) {
        case GenFamily::Solution: return "solution";
        case GenFamily::Commutant: return "commutant";
        case GenFamily::TimeTranslation: return "time_translation";
        case GenFamily::Dilation: return "dilation";
        case GenFamily::Projective: return "projective";
    }
    return "?";
}

template <class S>
struct Generator {
    GenFamily family = GenFamily::Solution;
    std::variant<VectorField<S>, ProjectiveVectorField> field;

    const VectorField<S>& restricted() const { return std::get<VectorField<S>>(field); }
    const ProjectiveVectorField& projective() const { return std::get<ProjectiveVectorField>(field); }
    bool is_projective() const { return std::holds_alternative<ProjectiveVectorField>(field); }
};

/// The assembled maximal Lie invariance algebra of one system.
template <class S>
struct SymmetryAlgebra {
    int n = 0;
    FieldTag field = FieldTag::Complex;
    Classification classification = Classification::NonNilpotent;
    long commutant_dim = 0;
    bool exact = true;
    JordanStructure structure;       // canonical data of the governing matrix
    Matrix<S> system_matrix;         // the matrix the generators belong to
    std::vector<Generator<S>> generators;

    size_t dimension() const { return generators.size(); }
};

}  // namespace liesym
