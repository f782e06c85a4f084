#include "uhrfrac/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "uhrfrac/errors.hpp"
#include "uhrfrac/frac_integral.hpp"
#include "uhrfrac/mittag_leffler.hpp"
#include "uhrfrac/problem.hpp"
#include "uhrfrac/solver.hpp"
#include "uhrfrac/stability.hpp"

namespace uhrfrac::cli {

namespace {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Fixed-notation value with `sig` significant digits.
std::string significant_fixed(double v, int sig) {
    if (!std::isfinite(v)) {
        return format_real(v);
    }
    int decimals = sig - 1;
    if (v != 0.0) {
        const int magnitude =
            static_cast<int>(std::floor(std::log10(std::abs(v))));
        decimals = std::max(0, sig - 1 - magnitude);
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

struct CommonOptions {
    std::string scenario;
    std::string config_path;
    int n = 64;
    double grading = 0.0;  // 0 = automatic (2 when gamma < 1, else uniform)
    double tol = 1e-10;
    int max_iter = 200;
    double x0 = 0.0;
    bool x0_given = false;
    std::string memory_anchor;  // "", "t", or "s_i"
    std::string out_dir = ".";
};

struct Target {
    LoadedProblem loaded;
    std::string id;
    std::optional<ScenarioReference> reference;
};

Target load_target(const CommonOptions& opt) {
    if (opt.scenario.empty() == opt.config_path.empty()) {
        throw ConfigError("give exactly one of --scenario or --config");
    }
    Target target = [&] {
        if (!opt.scenario.empty()) {
            return Target{builtin_scenario(opt.scenario), opt.scenario,
                          scenario_reference(opt.scenario)};
        }
        std::ifstream in(opt.config_path);
        if (!in) {
            throw ConfigError("cannot read config file '" + opt.config_path + "'");
        }
        std::ostringstream text;
        text << in.rdbuf();
        return Target{load_problem(text.str()), opt.config_path, std::nullopt};
    }();
    if (opt.x0_given) {
        target.loaded.problem.x0 = opt.x0;
    }
    if (!opt.memory_anchor.empty()) {
        target.loaded.problem.memory_anchor =
            opt.memory_anchor == "t" ? MemoryAnchor::AtT : MemoryAnchor::AtSi;
    }
    return target;
}

std::shared_ptr<const Mesh> mesh_for(const Target& target,
                                     const CommonOptions& opt) {
    const ImpulsiveProblem& p = target.loaded.problem;
    double grading = opt.grading;
    if (grading <= 0.0) {
        grading = p.order.gamma < 1.0 ? 2.0 : 1.0;
    }
    return std::make_shared<const Mesh>(
        Mesh::build(p.partition, p.total_time, opt.n, grading));
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        throw ConfigError("cannot write '" + path.string() + "'");
    }
}

std::filesystem::path prepare_out_dir(const CommonOptions& opt) {
    const std::filesystem::path dir(opt.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

void describe_target(RunReport& report, const Target& target,
                     const CommonOptions& opt, double grading_used) {
    report.add("problem", target.id);
    report.add_real("alpha", target.loaded.problem.order.alpha);
    report.add_real("beta", target.loaded.problem.order.beta);
    report.add_real("gamma", target.loaded.problem.order.gamma);
    report.add("psi", target.loaded.problem.psi.name());
    report.add_real("x0", target.loaded.problem.x0);
    report.add_int("n_per_interval", opt.n);
    report.add_real("grading", grading_used);
}

void add_certificate(RunReport& report, const Target& target,
                     const StabilityCertificate& cert) {
    report.add_real("phi_formula", cert.phi_constant);
    if (target.reference) {
        report.add("phi_reference",
                   target.reference->phi_text + " (= " +
                       format_real(target.reference->phi_value) + ")");
        report.add("reference_note",
                   "the published value differs from direct evaluation of the "
                   "contraction-constant formula; the formula value is the "
                   "operative one");
    }
    report.add("contraction", cert.contraction_ok ? "satisfied (phi < 1)"
                                                  : "FAILED (phi >= 1)");
    if (cert.envelope_coeff) {
        report.add_real("envelope_coeff", *cert.envelope_coeff);
        if (target.reference) {
            report.add("envelope_reference", target.reference->envelope_text);
        }
    }
}

int emit(const RunReport& report, const std::filesystem::path& out_dir,
         int code) {
    write_file(out_dir / "report.txt", report.to_text());
    std::cout << report.to_text();
    return code;
}

std::string solution_csv(const GridFunction& y, const PsiFunction& psi) {
    std::string csv = "t,y0\n";
    for (std::size_t i = 0; i < y.size(); ++i) {
        csv += format_real(y.mesh().nodes()[i]);
        csv += ',';
        csv += format_real(y.raw(psi, i));
        csv += '\n';
    }
    return csv;
}

int cmd_solve(const CommonOptions& opt) {
    const Target target = load_target(opt);
    const auto mesh = mesh_for(target, opt);
    const auto out_dir = prepare_out_dir(opt);
    const ImpulsiveProblem& p = target.loaded.problem;

    const SolveResult result = picard_solve(p, mesh, opt.tol, opt.max_iter);
    write_file(out_dir / "solution.csv", solution_csv(result.solution, p.psi));

    RunReport report;
    report.add("command", "solve");
    describe_target(report, target, opt, mesh->grading());
    report.add_real("tol", opt.tol);
    report.add_int("iterations", result.iterations);
    report.add_real("final_diff",
                    result.diff_history.empty() ? 0.0
                                                : result.diff_history.back());
    report.add("converged", result.converged ? "yes" : "no");
    report.add("solution_csv", (out_dir / "solution.csv").string());
    return emit(report, out_dir, result.converged ? kOk : kNoConvergence);
}

int cmd_certify(const CommonOptions& opt) {
    const Target target = load_target(opt);
    const auto out_dir = prepare_out_dir(opt);
    const LoadedProblem& loaded = target.loaded;
    const StabilityCertificate cert =
        make_certificate(loaded.hypotheses, loaded.problem.order,
                         loaded.problem.psi, loaded.problem.total_time);

    RunReport report;
    report.add("command", "certify");
    report.add("problem", target.id);
    report.add_real("alpha", loaded.problem.order.alpha);
    report.add_real("gamma", loaded.problem.order.gamma);
    add_certificate(report, target, cert);
    return emit(report, out_dir, cert.contraction_ok ? kOk : kContractionFailure);
}

int cmd_verify(const CommonOptions& opt, double epsilon) {
    const Target target = load_target(opt);
    const auto mesh = mesh_for(target, opt);
    const auto out_dir = prepare_out_dir(opt);
    const ImpulsiveProblem& p = target.loaded.problem;
    const HypothesisData& h = target.loaded.hypotheses;

    RunReport report;
    report.add("command", "verify");
    describe_target(report, target, opt, mesh->grading());
    report.add_real("epsilon", epsilon);

    const StabilityCertificate cert =
        make_certificate(h, p.order, p.psi, p.total_time);
    add_certificate(report, target, cert);
    if (!cert.contraction_ok) {
        return emit(report, out_dir, kContractionFailure);
    }

    const SolveResult solve = picard_solve(p, mesh, opt.tol, opt.max_iter);
    report.add_int("iterations", solve.iterations);
    report.add("converged", solve.converged ? "yes" : "no");
    if (!solve.converged) {
        return emit(report, out_dir, kNoConvergence);
    }

    const double h6 = verify_h6(p.psi, p.order.alpha, h.phi, mesh);
    report.add_real("h6_observed_sup", h6);
    report.add_real("h6_declared_c_phi", h.phi_comparison);

    // Perturbed trajectory y = y0 + epsilon * (phi + delta).
    const GridFunction& y0 = solve.solution;
    GridFunction y = y0;
    EvalContext ctx;
    ctx.psi = &p.psi;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ctx.t = mesh->nodes()[i];
        const double bump = epsilon * (h.phi.evaluate(ctx) + h.delta);
        if (y.head_weighted(i)) {
            if (i > 0) {
                y[i] += y.head_factor(p.psi, i) * bump;
            }
            // the weighted representative of the bump vanishes at t = 0
        } else {
            y[i] += bump;
        }
    }

    const ResidualReport residual = residual_check(p, h, y);
    auto residual_field = [&](const char* name,
                              const std::optional<double>& v) {
        if (v) {
            report.add_real(name, *v);
        }
    };
    residual_field("residual_initial_max", residual.initial_max);
    residual_field("residual_impulse_max", residual.impulse_max);
    residual_field("residual_post_max", residual.post_max);
    report.add("residual_premise",
               residual.satisfied ? "satisfied" : "NOT satisfied");

    const EnvelopeCheck envelope =
        verify_envelope(y, y0, cert, h.phi, p.psi);
    report.add("envelope", envelope.ok ? "satisfied" : "VIOLATED");
    report.add_real("envelope_max_violation", envelope.max_violation);

    std::string csv = "t,y,y0,envelope\n";
    const double coeff = *cert.envelope_coeff;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ctx.t = mesh->nodes()[i];
        const double bound = coeff * (h.phi.evaluate(ctx) + h.delta);
        csv += format_real(ctx.t);
        csv += ',';
        csv += format_real(y.raw(p.psi, i));
        csv += ',';
        csv += format_real(y0.raw(p.psi, i));
        csv += ',';
        csv += format_real(bound);
        csv += '\n';
    }
    write_file(out_dir / "verify.csv", csv);
    report.add("verify_csv", (out_dir / "verify.csv").string());

    const int code =
        (residual.satisfied && envelope.ok) ? kOk : kResidualFailure;
    return emit(report, out_dir, code);
}

int cmd_ml(double alpha, double t, double tol) {
    const double value = mittag_leffler(alpha, t, tol);
    std::cout << significant_fixed(value, 12) << "\n";
    return kOk;
}

}  // namespace

void RunReport::add(std::string key, std::string value) {
    fields_.emplace_back(std::move(key), std::move(value));
}

void RunReport::add_real(std::string key, double value) {
    add(std::move(key), format_real(value));
}

void RunReport::add_int(std::string key, long value) {
    add(std::move(key), std::to_string(value));
}

std::string RunReport::to_text() const {
    std::string out;
    for (const auto& [key, value] : fields_) {
        out += key;
        out += ": ";
        out += value;
        out += '\n';
    }
    return out;
}

std::string RunReport::to_csv() const {
    auto escape = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) {
            return s;
        }
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') {
                quoted += '"';
            }
            quoted += c;
        }
        quoted += '"';
        return quoted;
    };
    std::string header, row;
    for (const auto& [key, value] : fields_) {
        if (!header.empty()) {
            header += ',';
            row += ',';
        }
        header += escape(key);
        row += escape(value);
    }
    return header + "\n" + row + "\n";
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("uhrfrac");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(argv_storage.size());
    for (std::string& s : argv_storage) {
        argv.push_back(s.data());
    }
    return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, char** argv) {
    CLI::App app{"Solver and stability certifier for non-instantaneous "
                 "impulsive fractional integrodifferential equations"};
    app.require_subcommand(1);

    CommonOptions opt;
    double epsilon = 1e-3;
    double ml_alpha = 1.0, ml_t = 0.0, ml_tol = 1e-12;

    auto add_common = [&](CLI::App* cmd, bool solver_flags) {
        cmd->add_option("--scenario", opt.scenario,
                        "built-in scenario name (example-rl, example-integer)");
        cmd->add_option("--config", opt.config_path, "problem config file");
        cmd->add_option("--out", opt.out_dir, "output directory")
            ->capture_default_str();
        if (solver_flags) {
            cmd->add_option("--n", opt.n, "mesh nodes per interval")
                ->capture_default_str();
            cmd->add_option("--grading", opt.grading,
                            "mesh grading exponent (default: 2 when gamma < 1, "
                            "uniform otherwise)");
            cmd->add_option("--tol", opt.tol, "Picard stopping tolerance")
                ->capture_default_str();
            cmd->add_option("--max-iter", opt.max_iter, "Picard iteration cap")
                ->capture_default_str();
            cmd->add_option("--x0", opt.x0, "override the initial datum");
            cmd->add_option("--memory-anchor", opt.memory_anchor,
                            "kernel anchor of the post-impulse memory term")
                ->check(CLI::IsMember({"t", "s_i"}));
        }
    };

    CLI::App* solve = app.add_subcommand("solve", "compute the mild solution");
    add_common(solve, true);
    CLI::App* certify =
        app.add_subcommand("certify", "evaluate the contraction constant and "
                                      "stability envelope");
    add_common(certify, false);
    CLI::App* verify = app.add_subcommand(
        "verify", "solve, perturb, and check the stability envelope");
    add_common(verify, true);
    verify->add_option("--epsilon", epsilon,
                       "perturbation scale for y = y0 + eps*(phi + delta)")
        ->capture_default_str();

    CLI::App* ml = app.add_subcommand("ml", "evaluate the Mittag-Leffler function");
    ml->add_option("alpha", ml_alpha, "order in (0, 1]")->required();
    ml->add_option("t", ml_t, "argument, t >= 0")->required();
    ml->add_option("--tol", ml_tol, "series tail bound")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        if (app.got_subcommand(solve)) {
            opt.x0_given = solve->count("--x0") > 0;
            return cmd_solve(opt);
        }
        if (app.got_subcommand(certify)) {
            return cmd_certify(opt);
        }
        if (app.got_subcommand(verify)) {
            opt.x0_given = verify->count("--x0") > 0;
            return cmd_verify(opt, epsilon);
        }
        if (app.got_subcommand(ml)) {
            return cmd_ml(ml_alpha, ml_t, ml_tol);
        }
    } catch (const ContractionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kContractionFailure;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace uhrfrac::cli
