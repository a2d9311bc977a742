#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "liesym/algebra.hpp"
#include "liesym/structure.hpp"

namespace liesym {

using nlohmann::json;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct VerifyMismatchError : std::runtime_error {
    explicit VerifyMismatchError(const std::string& what) : std::runtime_error(what) {}
};

namespace io_detail {

inline Rational rational_from_json(const json& v, const std::string& where) {
    try {
        if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
        if (v.is_string()) return Rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected an integer or a rational string \"p/q\"");
}

inline RatMatrix matrix_from_json(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) throw ParseError(where + ": expected a non-empty array of rows");
    const size_t rows = v.size();
    const size_t cols = v[0].is_array() ? v[0].size() : 0;
    if (cols == 0) throw ParseError(where + ": rows must be non-empty arrays");
    RatMatrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (!v[i].is_array() || v[i].size() != cols)
            throw ParseError(where + ": ragged rows");
        for (size_t j = 0; j < cols; ++j)
            m(i, j) = rational_from_json(v[i][j], where);
    }
    return m;
}

inline json rational_to_json(const Rational& r) { return r.str(); }

inline json matrix_to_json(const RatMatrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace io_detail

/// Parses a system document: n, exactly one of {A and B, D, jordan_blocks},
/// optional field (real | complex) and has_forcing.
inline SystemSpec parse_system(const json& doc) {
    if (!doc.is_object()) throw ParseError("system file: top level must be an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw ParseError("system file: missing integer field \"n\"");
    const int n = doc["n"].get<int>();
    if (n < 2) throw ParseError("system file: n must be at least 2");

    FieldTag field = FieldTag::Complex;
    if (doc.contains("field")) {
        std::string f = doc["field"].get<std::string>();
        if (f == "real") field = FieldTag::Real;
        else if (f == "complex") field = FieldTag::Complex;
        else throw ParseError("system file: field must be \"real\" or \"complex\"");
    }
    bool has_forcing = doc.value("has_forcing", false);

    const int forms = (doc.contains("A") || doc.contains("B") ? 1 : 0) +
                      (doc.contains("D") ? 1 : 0) + (doc.contains("jordan_blocks") ? 1 : 0);
    if (forms != 1)
        throw ParseError("system file: give exactly one of (A and B), D, or jordan_blocks");

    if (doc.contains("A") || doc.contains("B")) {
        if (!doc.contains("A") || !doc.contains("B"))
            throw ParseError("system file: A and B must both be present");
        RatMatrix a = io_detail::matrix_from_json(doc["A"], "A");
        RatMatrix b = io_detail::matrix_from_json(doc["B"], "B");
        if (static_cast<int>(a.rows()) != n || static_cast<int>(b.rows()) != n ||
            a.rows() != a.cols() || b.rows() != b.cols())
            throw ParseError("system file: A and B must be n x n");
        SystemSpec s = SystemSpec::from_matrices(std::move(a), std::move(b), field, has_forcing);
        return s;
    }
    if (doc.contains("D")) {
        RatMatrix d = io_detail::matrix_from_json(doc["D"], "D");
        if (static_cast<int>(d.rows()) != n || d.rows() != d.cols())
            throw ParseError("system file: D must be n x n");
        SystemSpec s = SystemSpec::from_reduced(std::move(d), field);
        s.has_forcing = has_forcing;
        return s;
    }

    JordanStructure js;
    js.field = field;
    for (const json& blk : doc["jordan_blocks"]) {
        if (!blk.is_object() || !blk.contains("eig") || !blk.contains("size"))
            throw ParseError("jordan_blocks: each entry needs \"eig\" and \"size\"");
        int size = blk["size"].get<int>();
        if (size < 1) throw ParseError("jordan_blocks: size must be positive");
        const json& eig = blk["eig"];
        if (eig.is_object()) {
            if (field != FieldTag::Real)
                throw ParseError("jordan_blocks: rotation blocks require field = real");
            RotationBlock r;
            r.mu = io_detail::rational_from_json(eig.at("mu"), "jordan_blocks.eig.mu");
            r.nu = io_detail::rational_from_json(eig.at("nu"), "jordan_blocks.eig.nu");
            if (r.nu.is_zero()) throw ParseError("jordan_blocks: rotation block needs nu != 0");
            if (r.nu.sign() < 0) r.nu = -r.nu;  // mu ± i nu: the pair is symmetric
            r.pair_numeric = Complex(r.mu.to_double(), r.nu.to_double());
            r.size = size;
            js.rotations.push_back(std::move(r));
        } else {
            JordanBlock b;
            b.eig = io_detail::rational_from_json(eig, "jordan_blocks.eig");
            b.eig_numeric = Complex(b.eig.to_double(), 0);
            b.size = size;
            js.blocks.push_back(std::move(b));
        }
    }
    if (js.n() != n) throw ParseError("jordan_blocks: sizes sum to " + std::to_string(js.n()) +
                                      ", expected n = " + std::to_string(n));
    return SystemSpec::from_structure(std::move(js));
}

inline SystemSpec load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open system file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("system file is not valid JSON: ") + e.what());
    }
    return parse_system(doc);
}

// ---- algebra document -------------------------------------------------------

namespace io_detail {

inline json scalar_to_json(const QuadExt& x) {
    if (x.is_rational()) return x.rational_value().str();
    json o;
    o["a"] = x.rational_part().str();
    o["b"] = x.radical_part().str();
    o["d"] = x.radicand().get_str();
    return o;
}
inline json scalar_to_json(const Complex& x) {
    json o;
    o["re"] = x.real();
    o["im"] = x.imag();
    return o;
}

inline QuadExt quadext_from_json(const json& v, const std::string& where) {
    if (v.is_string() || v.is_number_integer()) return QuadExt(rational_from_json(v, where));
    if (v.is_object() && v.contains("a")) {
        Rational a = rational_from_json(v.at("a"), where);
        Rational b = rational_from_json(v.at("b"), where);
        mpz_class d(v.at("d").get<std::string>());
        return QuadExt(std::move(a), std::move(b), std::move(d));
    }
    throw ParseError(where + ": expected a rational or {a, b, d}");
}
inline Complex complex_from_json(const json& v, const std::string& where) {
    if (v.is_object() && v.contains("re")) return {v.at("re").get<double>(), v.at("im").get<double>()};
    if (v.is_number()) return {v.get<double>(), 0.0};
    throw ParseError(where + ": expected {re, im}");
}

template <class S>
S scalar_from_json(const json& v, const std::string& where);
template <>
inline QuadExt scalar_from_json<QuadExt>(const json& v, const std::string& where) {
    return quadext_from_json(v, where);
}
template <>
inline Complex scalar_from_json<Complex>(const json& v, const std::string& where) {
    return complex_from_json(v, where);
}

template <class S>
json exp_poly_to_json(const ExpPoly<S>& p) {
    json terms = json::array();
    for (const auto& t : p.terms()) {
        json o;
        o["coef"] = scalar_to_json(t.coeff);
        o["power"] = t.power;
        if (t.trig == Trig::None) {
            o["freq"] = scalar_to_json(t.rate);
        } else {
            json f;
            f["exp"] = scalar_to_json(t.rate);
            f["osc"] = scalar_to_json(t.osc);
            f["trig"] = t.trig == Trig::Cos ? "cos" : "sin";
            o["freq"] = std::move(f);
        }
        terms.push_back(std::move(o));
    }
    return terms;
}

template <class S>
ExpPoly<S> exp_poly_from_json(const json& v, const std::string& where) {
    ExpPoly<S> p;
    if (!v.is_array()) throw ParseError(where + ": expected a term array");
    for (const json& o : v) {
        S coeff = scalar_from_json<S>(o.at("coef"), where + ".coef");
        int power = o.at("power").get<int>();
        const json& f = o.at("freq");
        if (f.is_object() && f.contains("trig")) {
            S rate = scalar_from_json<S>(f.at("exp"), where + ".freq.exp");
            S osc = scalar_from_json<S>(f.at("osc"), where + ".freq.osc");
            Trig trig = f.at("trig").get<std::string>() == "cos" ? Trig::Cos : Trig::Sin;
            p += ExpPoly<S>::trig_term(std::move(coeff), power, std::move(rate), std::move(osc), trig);
        } else {
            S rate = scalar_from_json<S>(f, where + ".freq");
            p += ExpPoly<S>::term(std::move(coeff), power, std::move(rate));
        }
    }
    return p;
}

inline json multipoly_to_json(const MultiPoly& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json o;
        o["coef"] = c.str();
        o["powers"] = m;
        terms.push_back(std::move(o));
    }
    return terms;
}

inline MultiPoly multipoly_from_json(const json& v, size_t nvars, const std::string& where) {
    MultiPoly p(nvars);
    for (const json& o : v) {
        Rational c = rational_from_json(o.at("coef"), where);
        auto powers = o.at("powers").get<std::vector<int>>();
        if (powers.size() != nvars) throw ParseError(where + ": wrong monomial arity");
        p += MultiPoly::monomial(nvars, std::move(powers), std::move(c));
    }
    return p;
}

template <class S>
json generator_to_json(const Generator<S>& g) {
    json o;
    o["family"] = family_name(g.family);
    if (g.is_projective()) {
        const auto& f = g.projective();
        o["xi"] = multipoly_to_json(f.xi);
        json etas = json::array();
        for (const auto& e : f.eta) etas.push_back(multipoly_to_json(e));
        o["eta"] = std::move(etas);
    } else {
        const auto& q = g.restricted();
        o["c1"] = scalar_to_json(q.c1);
        o["c0"] = scalar_to_json(q.c0);
        json h = json::array();
        for (size_t i = 0; i < q.linear.rows(); ++i) {
            json row = json::array();
            for (size_t j = 0; j < q.linear.cols(); ++j) row.push_back(scalar_to_json(q.linear(i, j)));
            h.push_back(std::move(row));
        }
        o["H"] = std::move(h);
        json phis = json::array();
        for (const auto& p : q.drift) phis.push_back(exp_poly_to_json(p));
        o["phi"] = std::move(phis);
    }
    return o;
}

inline GenFamily family_from_name(const std::string& s) {
    if (s == "solution") return GenFamily::Solution;
    if (s == "commutant") return GenFamily::Commutant;
    if (s == "time_translation") return GenFamily::TimeTranslation;
    if (s == "dilation") return GenFamily::Dilation;
    if (s == "projective") return GenFamily::Projective;
    throw ParseError("unknown generator family: " + s);
}

template <class S>
Generator<S> generator_from_json(const json& o, int n) {
    Generator<S> g;
    g.family = family_from_name(o.at("family").get<std::string>());
    if (g.family == GenFamily::Projective) {
        ProjectiveVectorField f;
        const size_t vars = static_cast<size_t>(n) + 1;
        f.xi = multipoly_from_json(o.at("xi"), vars, "generator.xi");
        for (const json& e : o.at("eta")) f.eta.push_back(multipoly_from_json(e, vars, "generator.eta"));
        if (f.n() != n) throw ParseError("generator.eta: wrong component count");
        g.field = std::move(f);
    } else {
        VectorField<S> q = VectorField<S>::zero(n);
        q.c1 = scalar_from_json<S>(o.at("c1"), "generator.c1");
        q.c0 = scalar_from_json<S>(o.at("c0"), "generator.c0");
        const json& h = o.at("H");
        if (!h.is_array() || static_cast<int>(h.size()) != n)
            throw ParseError("generator.H: expected an n x n array");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                q.linear(static_cast<size_t>(i), static_cast<size_t>(j)) =
                    scalar_from_json<S>(h[static_cast<size_t>(i)].at(static_cast<size_t>(j)), "generator.H");
        const json& phis = o.at("phi");
        if (static_cast<int>(phis.size()) != n) throw ParseError("generator.phi: wrong component count");
        for (int b = 0; b < n; ++b)
            q.drift[static_cast<size_t>(b)] =
                exp_poly_from_json<S>(phis[static_cast<size_t>(b)], "generator.phi");
        g.field = std::move(q);
    }
    return g;
}

}  // namespace io_detail

/// A saved algebra: either representation, plus the metadata the verifier
/// checks against.
struct AlgebraDocument {
    bool exact = true;
    int n = 0;
    FieldTag field = FieldTag::Complex;
    Classification classification = Classification::NonNilpotent;
    long commutant_dim = 0;
    std::vector<Generator<QuadExt>> exact_generators;
    std::vector<Generator<Complex>> numeric_generators;

    size_t dimension() const {
        return exact ? exact_generators.size() : numeric_generators.size();
    }
};

template <class S>
json algebra_to_json(const SymmetryAlgebra<S>& alg) {
    json doc;
    doc["n"] = alg.n;
    doc["field"] = alg.field == FieldTag::Real ? "real" : "complex";
    doc["mode"] = alg.exact ? "exact" : "numeric";
    doc["classification"] = classification_name(alg.classification);
    doc["N"] = alg.commutant_dim;
    doc["dimension"] = alg.dimension();
    json gens = json::array();
    for (const auto& g : alg.generators) gens.push_back(io_detail::generator_to_json(g));
    doc["generators"] = std::move(gens);
    return doc;
}

inline AlgebraDocument algebra_from_json(const json& doc) {
    AlgebraDocument out;
    try {
        out.n = doc.at("n").get<int>();
        out.exact = doc.at("mode").get<std::string>() == "exact";
        out.field = doc.at("field").get<std::string>() == "real" ? FieldTag::Real : FieldTag::Complex;
        std::string cls = doc.at("classification").get<std::string>();
        out.classification = cls == "free" ? Classification::Free
                             : cls == "nilpotent" ? Classification::Nilpotent
                                                  : Classification::NonNilpotent;
        out.commutant_dim = doc.at("N").get<long>();
        const json& gens = doc.at("generators");
        if (doc.at("dimension").get<size_t>() != gens.size())
            throw ParseError("algebra file: dimension does not match the generator count");
        for (const json& g : gens) {
            if (out.exact)
                out.exact_generators.push_back(io_detail::generator_from_json<QuadExt>(g, out.n));
            else
                out.numeric_generators.push_back(io_detail::generator_from_json<Complex>(g, out.n));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("algebra file: ") + e.what());
    }
    return out;
}

template <class S>
void save_algebra(const SymmetryAlgebra<S>& alg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write algebra file: " + path);
    out << algebra_to_json(alg).dump(1) << "\n";
}

inline AlgebraDocument load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open algebra file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("algebra file is not valid JSON: ") + e.what());
    }
    return algebra_from_json(doc);
}

}  // namespace liesym
