#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include "liesym/liesym.hpp"

namespace {

using namespace liesym;

bool log_debug() {
    const char* v = std::getenv("LIESYM_LOG");
    return v && std::string(v) == "debug";
}

void print_partition(const std::vector<int>& parts) {
    std::cout << "partition:";
    for (int p : parts) std::cout << " " << p;
    std::cout << "\n";
}

JordanStructure resolve_structure(const SystemSpec& spec) {
    JordanStructure js = spec.structure();
    if (log_debug()) {
        std::cerr << "[liesym] resolved structure: " << js.rotations.size() << " rotation block(s), "
                  << js.blocks.size() << " Jordan block(s), exact=" << js.exact() << "\n";
    }
    return js;
}

int cmd_dim(const std::string& input, const std::string& field_override) {
    SystemSpec spec = load_system(input);
    if (field_override == "real") spec.field = FieldTag::Real;
    if (field_override == "complex") spec.field = FieldTag::Complex;
    if (spec.jordan) spec.jordan->field = spec.field;

    DimensionReport rep = spec.jordan ? dimension_only(*spec.jordan)
                                      : dimension_only(spec.reduced_matrix());
    std::cout << "n: " << spec.n << "\n";
    std::cout << "field: " << (spec.field == FieldTag::Real ? "real" : "complex") << "\n";
    print_partition(rep.partition);
    std::cout << "N: " << rep.commutant_dim << "\n";
    std::cout << "classification: " << classification_name(rep.classification) << "\n";
    std::cout << "dim: " << rep.dimension << "\n";
    return 0;
}

template <class S>
void print_algebra_summary(const SymmetryAlgebra<S>& alg) {
    std::cout << "n: " << alg.n << "\n";
    std::cout << "field: " << (alg.field == FieldTag::Real ? "real" : "complex") << "\n";
    std::cout << "mode: " << (alg.exact ? "exact" : "numeric") << "\n";
    std::cout << "classification: " << classification_name(alg.classification) << "\n";
    std::cout << "N: " << alg.commutant_dim << "\n";
    std::cout << "dim: " << alg.dimension() << "\n";
    size_t per_family[5] = {0, 0, 0, 0, 0};
    for (const auto& g : alg.generators) ++per_family[static_cast<size_t>(g.family)];
    std::cout << "families: solution=" << per_family[0] << " commutant=" << per_family[1]
              << " time_translation=" << per_family[2] << " dilation=" << per_family[3]
              << " projective=" << per_family[4] << "\n";
}

int cmd_algebra(const std::string& input, const std::string& output, const std::string& mode,
                const std::string& field_override) {
    SystemSpec spec = load_system(input);
    if (field_override == "real") spec.field = FieldTag::Real;
    if (field_override == "complex") spec.field = FieldTag::Complex;
    if (spec.jordan) spec.jordan->field = spec.field;
    JordanStructure js = resolve_structure(spec);

    if (js.scalar()) {
        // Point-equivalent to the free system; the algebra is the projective one.
        SymmetryAlgebra<QuadExt> alg = build_free_algebra(spec.n);
        alg.field = spec.field;
        if (!output.empty()) save_algebra(alg, output);
        print_algebra_summary(alg);
        return 0;
    }
    if (mode == "exact") {
        SymmetryAlgebra<QuadExt> alg = build_algebra_exact(js);
        if (!output.empty()) save_algebra(alg, output);
        print_algebra_summary(alg);
        return 0;
    }
    SymmetryAlgebra<Complex> alg = build_algebra_numeric(js);
    if (!output.empty()) save_algebra(alg, output);
    print_algebra_summary(alg);
    return 0;
}

void print_report(const VerificationReport& rep, const std::vector<std::string>& families) {
    std::cout << "residuals (" << (rep.exact_mode ? "exact" : "numeric") << " mode, " << rep.samples
              << " samples, seed " << rep.seed << ", tol " << rep.tolerance << "):\n";
    for (size_t i = 0; i < rep.max_residuals.size(); ++i) {
        std::cout << "  [" << std::setw(2) << i << "] " << std::setw(16) << std::left << families[i]
                  << std::right << " max|residual| = " << std::scientific << std::setprecision(3)
                  << rep.max_residuals[i] << std::defaultfloat
                  << (rep.generator_ok[i] ? "" : "  <-- FAIL") << "\n";
    }
    std::cout << "closure: " << (rep.closure.ok() ? "pass" : std::string("FAIL (") + rep.closure.detail + ")");
    if (rep.closure.failed_pair)
        std::cout << " at pair (" << rep.closure.failed_pair->first << ", "
                  << rep.closure.failed_pair->second << ")";
    std::cout << "\n";
    std::cout << "commutant dimension: kernel=" << rep.counts.from_kernel
              << " partition=" << rep.counts.from_partition << " divisors=";
    if (rep.counts.from_divisors) std::cout << *rep.counts.from_divisors;
    else std::cout << "(unresolved)";
    std::cout << "\n";
    std::cout << "result: " << (rep.pass ? "PASS" : "FAIL") << "\n";
}

int cmd_verify(const std::string& system_path, const std::string& algebra_path, int samples,
               std::uint64_t seed, double tol) {
    SystemSpec spec = load_system(system_path);
    AlgebraDocument doc = load_algebra(algebra_path);
    if (doc.n != spec.n)
        throw VerifyMismatchError("system has n = " + std::to_string(spec.n) + ", algebra has n = " +
                                  std::to_string(doc.n));
    JordanStructure js = resolve_structure(spec);
    if (doc.classification != Classification::Free) {
        if (js.scalar())
            throw VerifyMismatchError("scalar system paired with a non-free algebra file");
        bool nil_claim = doc.classification == Classification::Nilpotent;
        if (nil_claim != js.nilpotent())
            throw VerifyMismatchError("algebra classification disagrees with the system");
    }

    std::vector<std::string> families;
    VerificationReport rep;
    if (doc.classification == Classification::Free) {
        if (!js.scalar())
            throw VerifyMismatchError("free-system algebra against a non-scalar system");
        // The scalar system is point-equivalent to x'' = 0; verify against that
        // representative.
        SymmetryAlgebra<QuadExt> alg = build_free_algebra(spec.n);
        alg.generators = std::move(doc.exact_generators);
        alg.commutant_dim = doc.commutant_dim;
        if (alg.generators.empty()) throw VerifyMismatchError("free algebra must be stored exactly");
        for (const auto& g : alg.generators) families.push_back(family_name(g.family));
        rep = verify_algebra(alg, samples, seed, tol);
    } else if (doc.exact) {
        if (!structure_supports_exact(js))
            throw VerifyMismatchError("exact algebra against a system with irrational eigenvalues");
        SymmetryAlgebra<QuadExt> alg;
        alg.n = spec.n;
        alg.field = spec.field;
        alg.classification = doc.classification;
        alg.commutant_dim = doc.commutant_dim;
        alg.exact = true;
        alg.structure = js;
        alg.system_matrix = js.to_rational_matrix().map<QuadExt>([](const Rational& x) { return QuadExt(x); });
        alg.generators = std::move(doc.exact_generators);
        for (const auto& g : alg.generators) families.push_back(family_name(g.family));
        rep = verify_algebra(alg, samples, seed, tol);
    } else {
        SymmetryAlgebra<Complex> alg;
        alg.n = spec.n;
        alg.field = spec.field;
        alg.classification = doc.classification;
        alg.commutant_dim = doc.commutant_dim;
        alg.exact = false;
        alg.structure = js;
        alg.system_matrix = js.to_numeric_matrix();
        alg.generators = std::move(doc.numeric_generators);
        for (const auto& g : alg.generators) families.push_back(family_name(g.family));
        rep = verify_algebra(alg, samples, seed, tol);
    }
    print_report(rep, families);
    if (!rep.pass) {
        if (rep.first_failed_generator)
            std::cout << "first failing generator: index " << *rep.first_failed_generator << "\n";
        return 4;
    }
    return 0;
}

int cmd_scan(int n) {
    std::set<long> dims = realizable_dimensions(n);
    const long lo = 3L * n + 1, hi = static_cast<long>(n) * n + 4;
    std::cout << "n: " << n << "\n";
    std::cout << "interval: [" << lo << ", " << hi << "]\n";
    std::cout << "attained:";
    for (long d : dims) std::cout << " " << d;
    std::cout << "\n";
    std::cout << "missing:";
    bool any = false;
    for (long d = lo; d <= hi; ++d)
        if (!dims.count(d)) {
            std::cout << " " << d;
            any = true;
        }
    if (!any) std::cout << " (none)";
    std::cout << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lie point symmetries of linear second-order ODE systems with constant coefficients"};
    app.require_subcommand(1);

    std::string input, output, algebra_path, mode = "exact", field_override;
    int samples = 20, scan_n = 0;
    std::uint64_t seed = 20240101;
    double tol = 1e-9;

    CLI::App* dim = app.add_subcommand("dim", "dimension, classification and N without generators");
    dim->add_option("--input", input, "system file (JSON)")->required();
    dim->add_option("--field", field_override, "override the field tag (real | complex)");

    CLI::App* algebra = app.add_subcommand("algebra", "build the full generator basis");
    algebra->add_option("--input", input, "system file (JSON)")->required();
    algebra->add_option("--output", output, "algebra file to write");
    algebra->add_option("--mode", mode, "exact | numeric (default exact)");
    algebra->add_option("--field", field_override, "override the field tag (real | complex)");

    CLI::App* verify = app.add_subcommand("verify", "check an algebra file against a system file");
    verify->add_option("--input", input, "system file (JSON)")->required();
    verify->add_option("--algebra", algebra_path, "algebra file (JSON)")->required();
    verify->add_option("--samples", samples, "sample count (default 20)");
    verify->add_option("--seed", seed, "sampling seed");
    verify->add_option("--tol", tol, "residual tolerance (default 1e-9)");

    CLI::App* scan = app.add_subcommand("scan", "attainable algebra dimensions for one n");
    scan->add_option("--n", scan_n, "system size, 2..8")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (dim->parsed()) return cmd_dim(input, field_override);
        if (algebra->parsed()) {
            if (mode != "exact" && mode != "numeric")
                throw liesym::ParseError("--mode must be exact or numeric");
            return cmd_algebra(input, output, mode, field_override);
        }
        if (verify->parsed()) return cmd_verify(input, algebra_path, samples, seed, tol);
        if (scan->parsed()) return cmd_scan(scan_n);
    } catch (const liesym::NonCommutingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const liesym::ExactnessError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "hint: rerun with --mode numeric\n";
        return 3;
    } catch (const liesym::VerifyMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const liesym::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
