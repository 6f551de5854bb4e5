// arctic: command-line interface for domain-wall six-vertex model arctic
// curves and the exact finite-lattice tools behind them.
//
// Subcommands: curve, sweep, finite-n, enumerate, validate.
// Exit codes: 0 success, 1 validation failure, 2 usage/parameter error,
// 3 numeric failure.

#include <clocale>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dwsv/curve.hpp"
#include "dwsv/finite_n.hpp"
#include "dwsv/io.hpp"
#include "dwsv/validate.hpp"

namespace {

using namespace dwsv;

struct OutputTarget {
    std::ofstream file;
    std::ostream& stream(const std::string& path) {
        if (path.empty()) return std::cout;
        file.open(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        return file;
    }
};

CurveOutput compute_curve(double delta, double t, long bits, int n_points, bool first_only) {
    PrecisionContext ctx(bits);
    mpfr_prec_t P = ctx.prec();
    Real d(delta, P), tt(t, P);
    SpectralParams p = spectral_from_phase(PhasePoint{d, tt});
    GridSpec grid{n_points, true};
    if (first_only) {
        CurvePortion por = curve_portion(p, grid, ctx);
        Real cx = por.contact_x, cy = por.contact_y;
        return CurveOutput{d, tt, p, {std::move(por)}, cx, cy};
    }
    FullCurve fc = full_curve(p, grid, ctx);
    return CurveOutput{d,
                       tt,
                       p,
                       {fc.portions.begin(), fc.portions.end()},
                       fc.contact_bottom_x,
                       fc.contact_left_y};
}

void emit(std::ostream& os, const std::vector<CurveOutput>& curves, const std::string& format,
          bool sweep) {
    if (format == "svg") {
        write_svg(os, curves);
    } else if (format == "json") {
        if (sweep)
            write_sweep_json(os, curves);
        else
            write_curve_json(os, curves.front());
    } else {
        if (sweep)
            write_sweep_csv(os, curves);
        else
            write_curve_csv(os, curves.front());
    }
}

void note_escalations(const char* what, const PartitionValue& z, long requested_bits) {
    if (z.escalations > 0 || z.bits_used > requested_bits + 64)
        std::cerr << "note: " << what << " N=" << z.n << ": " << z.escalations
                  << " precision escalation(s), determinant stabilized at " << z.bits_used
                  << " bits (requested " << requested_bits << ")\n";
}

int run_finite_n(int n, double delta, double t, double xi_frac, long bits) {
    PrecisionContext ctx(bits);
    mpfr_prec_t P = ctx.prec();
    SpectralParams p = spectral_from_phase(PhasePoint{Real(delta, P), Real(t, P)});
    Weights w = weights_from_spectral(p);

    PartitionValue z = partition_hankel(n, p, ctx);
    note_escalations("hankel", z, bits);
    Real z_norm = z.value / pow_si(w.c, static_cast<long>(n) * n);
    std::cout << "regime = " << regime_name(p.regime()) << "\n"
              << "lambda = " << format_real(p.lambda()) << "\n"
              << "eta    = " << format_real(p.eta()) << "\n"
              << "a, b, c = " << format_real(w.a) << ", " << format_real(w.b) << ", "
              << format_real(w.c) << "\n"
              << "Z_" << n << " = " << format_real(z.value) << "\n"
              << "Z_" << n << " / c^(N^2) = " << format_real(z_norm) << "\n";

    if (n <= kEnumerationCap) {
        BoundaryDistribution H = boundary_distribution(n, p);
        for (int r = 1; r <= n; ++r)
            std::cout << "H_" << n << "^(" << r << ") = " << format_real(H.probs[r - 1]) << "\n";
    } else {
        std::cout << "H_N^(r): n above enumeration cap " << kEnumerationCap << ", skipped\n";
    }

    if (xi_frac > 0.0) {
        Real xi = xi_max(p) * Real(xi_frac, P);
        std::cout << "xi = " << format_real(xi) << "\n"
                  << "gamma(xi) = " << format_real(gamma_map(xi, p)) << "\n"
                  << "h_" << n << "(gamma(xi)) = " << format_real(h_generating(n, p, xi, ctx))
                  << "\n"
                  << "(1/N) d/dxi log h_" << n << " = "
                  << format_real(finite_log_deriv(n, p, xi, ctx)) << "\n";
    }
    return 0;
}

int run_enumerate(int n, double delta, double t) {
    mpfr_prec_t P = 256;
    SpectralParams p = spectral_from_phase(PhasePoint{Real(delta, P), Real(t, P)});
    Weights w = weights_from_spectral(p);
    InhomogeneousSpec spec;
    for (int i = 0; i < n; ++i) {
        spec.lambdas.push_back(p.lambda());
        spec.nus.emplace_back(0L, P);
    }
    PartitionValue z = enumerate_partition(spec, p);
    std::cout << "regime = " << regime_name(p.regime()) << "\n"
              << "Z_" << n << " = " << format_real(z.value) << "\n"
              << "Z_" << n << " / c^(N^2) = "
              << format_real(z.value / pow_si(w.c, static_cast<long>(n) * n)) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");

    long precision_bits = 256;
    if (const char* env = std::getenv("ARCTIC_PRECISION_BITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 64) precision_bits = v;
    }

    CLI::App app{"arctic curves of the domain-wall six-vertex model"};
    app.require_subcommand(1);

    double delta = -2.0, t = 1.0, xi_frac = 0.0;
    int n_points = 256, n = 4;
    std::string output_path, format = "csv", portion = "all";
    std::vector<double> deltas;
    std::vector<std::string> only;

    auto* curve = app.add_subcommand("curve", "compute the arctic curve for one (Delta, t)");
    curve->add_option("--delta", delta, "anisotropy Delta (< 1, != -1)")->required();
    curve->add_option("--t", t, "weight ratio b/a (> 0)");
    curve->add_option("--n-points", n_points, "grid points per portion")->check(CLI::Range(2, 100000));
    curve->add_option("--precision-bits", precision_bits, "working precision in bits (>= 64)");
    curve->add_option("--portion", portion, "first|all")
        ->check(CLI::IsMember({"first", "all"}));
    curve->add_option("--output,-o", output_path, "output file (default stdout)");
    curve->add_option("--format", format, "csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));

    auto* sweep = app.add_subcommand("sweep", "one curve per Delta, shared t");
    sweep->add_option("--deltas", deltas, "list of Delta values")->required()->expected(-1);
    sweep->add_option("--t", t, "weight ratio b/a");
    sweep->add_option("--n-points", n_points, "grid points per portion");
    sweep->add_option("--precision-bits", precision_bits, "working precision in bits");
    sweep->add_option("--portion", portion, "first|all")->check(CLI::IsMember({"first", "all"}));
    sweep->add_option("--output,-o", output_path, "output file (default stdout)");
    sweep->add_option("--format", format, "csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));

    auto* fin = app.add_subcommand("finite-n", "exact finite-N quantities");
    fin->add_option("--n", n, "lattice size N")->required()->check(CLI::Range(1, 64));
    fin->add_option("--delta", delta, "anisotropy Delta")->required();
    fin->add_option("--t", t, "weight ratio b/a");
    fin->add_option("--xi", xi_frac, "evaluate h_N at xi = frac * xi_max, frac in (0,1)")
        ->check(CLI::Range(0.0, 0.999999));
    fin->add_option("--precision-bits", precision_bits, "working precision in bits");

    auto* enu = app.add_subcommand("enumerate", "brute-force enumeration oracle");
    enu->add_option("--n", n, "lattice size N (<= enumeration cap)")->required();
    enu->add_option("--delta", delta, "anisotropy Delta")->required();
    enu->add_option("--t", t, "weight ratio b/a");

    auto* val = app.add_subcommand("validate", "run the acceptance checks P1..P8");
    val->add_option("--only", only, "run only the named checks (e.g. --only P4)");
    val->add_option("--precision-bits", precision_bits, "working precision in bits");
    val->add_option("--output,-o", output_path, "JSON report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // usage errors map to exit code 2
    }

    try {
        if (precision_bits < 64) {
            std::cerr << "error: precision must be at least 64 bits\n";
            return 2;
        }
        OutputTarget out;
        if (curve->parsed()) {
            std::vector<CurveOutput> cs;
            cs.push_back(compute_curve(delta, t, precision_bits, n_points, portion == "first"));
            emit(out.stream(output_path), cs, format, false);
            return 0;
        }
        if (sweep->parsed()) {
            if (deltas.empty()) {
                std::cerr << "error: empty delta list\n";
                return 2;
            }
            std::vector<CurveOutput> cs;
            for (double d : deltas)
                cs.push_back(compute_curve(d, t, precision_bits, n_points, portion == "first"));
            emit(out.stream(output_path), cs, format, true);
            return 0;
        }
        if (fin->parsed()) return run_finite_n(n, delta, t, xi_frac, precision_bits);
        if (enu->parsed()) return run_enumerate(n, delta, t);
        if (val->parsed()) {
            std::vector<CheckResult> results =
                run_acceptance_checks(only, precision_bits, &std::cerr);
            write_report_json(out.stream(output_path), results);
            for (const CheckResult& r : results)
                std::cerr << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ": " << r.detail
                          << "\n";
            for (const CheckResult& r : results)
                if (!r.passed) return 1;
            return 0;
        }
    } catch (const ParameterDomainError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
