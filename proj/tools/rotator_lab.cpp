// rotator-lab: command-line experiments on the relativistic-rotator family.
//
// Exit codes: 0 success / verdict as expected, 1 check failure,
// 2 usage or config error, 3 degenerate-Hessian halt.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotator/chart.hpp"
#include "rotator/dynamics.hpp"
#include "rotator/errors.hpp"
#include "rotator/exact.hpp"
#include "rotator/hessian.hpp"
#include "rotator/io.hpp"
#include "rotator/minkowski.hpp"
#include "rotator/profiles.hpp"

namespace {

using namespace rotator;

struct Config {
    std::string profile = "fundamental";
    double m = 1.0;
    double ell = 1.0;
    std::uint64_t seed = 42;
    double tol_residual = 1e-9;
    double tol_conservation = 1e-7;
    double tol_degeneracy = 1e-8;
    double tol_ode = 1e-8;
    double T = 10.0;
    double dt = 1e-3;
    int n_states = 100;
    int n_grid = 201;
    int sample_stride = 1;
    std::string out = "out";
    std::string state_file;
    // indeterminism phase pair
    double omega = 1.0;
    double eps = 0.2;
    double nu = 1.5;
    double delta_min = 0.05; // in units of ell
    // degeneracy ODE
    double Q0 = 1.0;
    double Qend = 10.0;
    int steps = 10000;
    double f0 = std::nan("");
    double f0p = std::nan("");
    bool serial = false;

    void validate() const {
        if (!(m > 0) || !(ell > 0)) throw ConfigError("m and ell must be positive");
        if (!(tol_residual > 0) || !(tol_conservation > 0) || !(tol_degeneracy > 0) ||
            !(tol_ode > 0))
            throw ConfigError("tolerances must be positive");
        if (!(dt > 0) || !(T > 0) || !(dt < T)) throw ConfigError("need 0 < dt < T");
        if (n_states < 1) throw ConfigError("n_states must be >= 1");
        if (n_grid < 2) throw ConfigError("n_grid must be >= 2");
        if (sample_stride < 1) throw ConfigError("sample_stride must be >= 1");
    }

    std::vector<std::pair<std::string, std::string>> resolved(const std::string& cmd) const;
};

std::string fmt(double x) { return format_double(x); }

std::vector<std::pair<std::string, std::string>> Config::resolved(const std::string& cmd) const {
    std::vector<std::pair<std::string, std::string>> kv = {
        {"profile", profile},
        {"m", fmt(m)},
        {"ell", fmt(ell)},
        {"seed", std::to_string(seed)},
        {"out", out},
    };
    if (cmd == "casimir") {
        kv.push_back({"n_states", std::to_string(n_states)});
    } else if (cmd == "hessian") {
        kv.push_back({"n_states", std::to_string(n_states)});
        kv.push_back({"tol_degeneracy", fmt(tol_degeneracy)});
        kv.push_back({"serial", serial ? "true" : "false"});
    } else if (cmd == "integrate") {
        kv.push_back({"T", fmt(T)});
        kv.push_back({"dt", fmt(dt)});
        kv.push_back({"sample_stride", std::to_string(sample_stride)});
        kv.push_back({"tol_conservation", fmt(tol_conservation)});
        if (!state_file.empty()) kv.push_back({"state_file", state_file});
    } else if (cmd == "indeterminism") {
        kv.push_back({"T", fmt(T)});
        kv.push_back({"n_grid", std::to_string(n_grid)});
        kv.push_back({"omega", fmt(omega)});
        kv.push_back({"eps", fmt(eps)});
        kv.push_back({"nu", fmt(nu)});
        kv.push_back({"tol_residual", fmt(tol_residual)});
        kv.push_back({"delta_min", fmt(delta_min)});
    } else if (cmd == "ode-f") {
        kv.push_back({"Q0", fmt(Q0)});
        kv.push_back({"Qend", fmt(Qend)});
        kv.push_back({"steps", std::to_string(steps)});
        kv.push_back({"f0", fmt(f0)});
        kv.push_back({"f0p", fmt(f0p)});
        kv.push_back({"tol_ode", fmt(tol_ode)});
    }
    return kv;
}

void load_config_file(const std::string& path, Config& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config JSON: ") + e.what());
    }
    const auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("profile", cfg.profile);
    get("m", cfg.m);
    get("ell", cfg.ell);
    get("seed", cfg.seed);
    get("tol_residual", cfg.tol_residual);
    get("tol_conservation", cfg.tol_conservation);
    get("tol_degeneracy", cfg.tol_degeneracy);
    get("tol_ode", cfg.tol_ode);
    get("T", cfg.T);
    get("dt", cfg.dt);
    get("n_states", cfg.n_states);
    get("n_grid", cfg.n_grid);
    get("sample_stride", cfg.sample_stride);
    get("out", cfg.out);
    get("state_file", cfg.state_file);
    get("omega", cfg.omega);
    get("eps", cfg.eps);
    get("nu", cfg.nu);
    get("delta_min", cfg.delta_min);
    get("Q0", cfg.Q0);
    get("Qend", cfg.Qend);
    get("steps", cfg.steps);
    get("f0", cfg.f0);
    get("f0p", cfg.f0p);
    get("serial", cfg.serial);
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::filesystem::path prepare_out(const Config& cfg) {
    std::filesystem::path dir(cfg.out);
    std::filesystem::create_directories(dir);
    return dir;
}

// ---------------------------------------------------------------- casimir

int cmd_casimir(const Config& cfg) {
    Timer timer;
    const RotatorProfile profile = RotatorProfile::parse(cfg.profile);
    const auto dir = prepare_out(cfg);

    const double lo = std::max(1e-2, profile.domain_lo() * 1.05 + 1e-12);
    const double hi = std::min(1e2, profile.domain_hi() * 0.9);
    const int n = cfg.n_states;

    const double pp_ref = cfg.m * cfg.m;
    const double ww_ref = -0.25 * std::pow(cfg.m, 4) * cfg.ell * cfg.ell;
    double max_pp_dev = 0.0, max_ww_dev = 0.0;

    CsvWriter csv((dir / "casimir.csv").string(), {"Q", "PP", "WW"});
    for (int i = 0; i < n; ++i) {
        const double Q = lo * std::exp(std::log(hi / lo) * i / (n - 1));
        const double PP = casimir_mass_sq(profile, Q, cfg.m);
        const double WW = casimir_spin_sq(profile, Q, cfg.m, cfg.ell);
        csv.row({Q, PP, WW});
        max_pp_dev = std::max(max_pp_dev, std::abs(PP - pp_ref) / pp_ref);
        max_ww_dev = std::max(max_ww_dev, std::abs(WW - ww_ref) / std::abs(ww_ref));
    }

    constexpr double kConstTol = 1e-10;
    const bool fundamental_property = max_pp_dev < kConstTol && max_ww_dev < kConstTol;
    std::cout << "casimir: profile=" << profile.name() << " Q in [" << fmt(lo) << ", " << fmt(hi)
              << "] max|PP/m^2-1|=" << fmt(max_pp_dev)
              << " max|WW/(-m^4 ell^2/4)-1|=" << fmt(max_ww_dev) << "\n";
    std::cout << (fundamental_property ? "verdict: fundamental: PP and WW constant"
                                       : "verdict: not fundamental")
              << "\n";
    write_sidecar((dir / "casimir.meta.json").string(), "casimir", cfg.resolved("casimir"),
                  timer.seconds());
    return 0;
}

// ---------------------------------------------------------------- hessian

int cmd_hessian(const Config& cfg) {
    Timer timer;
    const RotatorProfile profile = RotatorProfile::parse(cfg.profile);
    const auto dir = prepare_out(cfg);

    const ScanReport report = degeneracy_scan(profile, cfg.n_states, cfg.seed, !cfg.serial);
    write_scan_csv((dir / "hessian_scan.csv").string(), report);

    std::string verdict = "MIXED";
    if (report.max_sigma_ratio < cfg.tol_degeneracy) verdict = "DEGENERATE";
    else if (report.min_sigma_ratio >= cfg.tol_degeneracy) verdict = "REGULAR";

    std::cout << "hessian: profile=" << profile.name() << " n_states=" << cfg.n_states
              << " max_rel_det=" << fmt(report.max_rel_det)
              << " min_rel_det=" << fmt(report.min_rel_det)
              << " sigma_ratio=[" << fmt(report.min_sigma_ratio) << ", "
              << fmt(report.max_sigma_ratio) << "]\n";
    std::cout << "verdict: " << verdict << "\n";
    write_sidecar((dir / "hessian_scan.meta.json").string(), "hessian",
                  cfg.resolved("hessian"), timer.seconds());

    const std::string expected = profile.is_degenerate_family() ? "DEGENERATE" : "REGULAR";
    return verdict == expected ? 0 : 1;
}

// -------------------------------------------------------------- integrate

int cmd_integrate(const Config& cfg) {
    Timer timer;
    const RotatorProfile profile = RotatorProfile::parse(cfg.profile);
    const auto dir = prepare_out(cfg);

    ChartState initial;
    if (!cfg.state_file.empty()) {
        initial = chart_state_from_file(cfg.state_file);
    } else {
        // equatorial default: reflection symmetry keeps theta = pi/2
        initial.theta = M_PI / 2;
        initial.phi_sph = 0.0;
        initial.V = {0.2, 0.1, 0.0};
        initial.theta_dot = 0.0;
        initial.phi_sph_dot = 0.9;
    }

    IntegrateOptions opts;
    opts.sample_stride = cfg.sample_stride;
    const Trajectory traj = integrate(profile, initial, cfg.T, cfg.dt, cfg.m, cfg.ell, opts);

    write_trajectory_csv((dir / "trajectory.csv").string(), traj);
    std::cout << "integrate: profile=" << profile.name() << " T=" << fmt(cfg.T)
              << " dt=" << fmt(cfg.dt) << " samples=" << traj.samples.size() << "\n";
    std::cout << "drift: p=" << fmt(traj.max_p_drift) << " M=" << fmt(traj.max_M_drift)
              << " Q=" << fmt(traj.max_Q_drift) << " (tolerance " << fmt(cfg.tol_conservation)
              << ")\n";
    write_sidecar((dir / "trajectory.meta.json").string(), "integrate",
                  cfg.resolved("integrate"), timer.seconds());

    const bool ok = traj.max_p_drift < cfg.tol_conservation &&
                    traj.max_M_drift < cfg.tol_conservation &&
                    traj.max_Q_drift < cfg.tol_conservation;
    if (!ok) std::cout << "verdict: CONSERVATION DRIFT EXCEEDED\n";
    else std::cout << "verdict: conserved within tolerance\n";
    return ok ? 0 : 1;
}

// ----------------------------------------------------------- indeterminism

int cmd_indeterminism(const Config& cfg) {
    Timer timer;
    const RotatorProfile profile = RotatorProfile::parse(cfg.profile);
    const auto dir = prepare_out(cfg);

    const SolutionFrame frame = build_solution_frame(cfg.m, cfg.ell, cfg.seed);
    const PhaseProfile phase1 = PhaseProfile::linear(cfg.omega);
    const PhaseProfile phase2 = PhaseProfile::modulated(cfg.omega, cfg.eps, cfg.nu);

    const IndeterminismReport report =
        indeterminism_pair(profile, frame, phase1, phase2, cfg.T, cfg.n_grid);
    write_indeterminism_csv((dir / "indeterminism.csv").string(), report);

    std::cout << "indeterminism: profile=" << profile.name() << " jet_mismatch="
              << fmt(report.jet_mismatch) << " residual1=" << fmt(report.max_res1)
              << " residual2=" << fmt(report.max_res2)
              << " max_divergence=" << fmt(report.max_delta) << " (threshold "
              << fmt(cfg.delta_min * cfg.ell) << ")\n";
    write_sidecar((dir / "indeterminism.meta.json").string(), "indeterminism",
                  cfg.resolved("indeterminism"), timer.seconds());

    const bool both_solve =
        report.max_res1 < cfg.tol_residual && report.max_res2 < cfg.tol_residual;
    const bool diverges = report.max_delta > cfg.delta_min * cfg.ell;
    if (both_solve && diverges) {
        std::cout << "verdict: NON-UNIQUE CAUCHY DATA REPRODUCED\n";
        return 0;
    }
    if (!both_solve)
        std::cout << "verdict: at least one curve is not a solution at this tolerance\n";
    else
        std::cout << "verdict: no divergence beyond threshold\n";
    return 1;
}

// ------------------------------------------------------------------ ode-f

int cmd_ode_f(const Config& cfg) {
    Timer timer;
    const auto dir = prepare_out(cfg);

    double f0 = cfg.f0, f0p = cfg.f0p;
    if (std::isnan(f0) || std::isnan(f0p)) {
        const RotatorProfile profile = RotatorProfile::parse(cfg.profile);
        const ProfileDerivs d = profile.eval(cfg.Q0);
        if (std::isnan(f0)) f0 = d.f;
        if (std::isnan(f0p)) f0p = d.fp;
    }
    if (f0p == 0.0) throw ConfigError("f0' = 0: the degeneracy condition is singular there");
    if (!(cfg.Q0 > 0) || !(cfg.Qend > cfg.Q0) || cfg.steps < 1)
        throw ConfigError("need Q0 > 0, Qend > Q0, steps >= 1");

    const auto table = solve_degeneracy_ode(cfg.Q0, f0, f0p, cfg.Qend, cfg.steps);
    const auto [c1, c2] = fit_degenerate_family(cfg.Q0, f0, f0p);

    double max_err = 0.0;
    CsvWriter csv((dir / "ode_f.csv").string(), {"Q", "f_numeric", "f_closed", "error"});
    for (const OdeSample& s : table) {
        const double f_closed = c1 * std::sqrt(1.0 + c2 * std::sqrt(s.Q));
        const double err = std::abs(s.f - f_closed) / f_closed;
        csv.row({s.Q, s.f, f_closed, err});
        max_err = std::max(max_err, err);
    }

    std::cout << "ode-f: Q0=" << fmt(cfg.Q0) << " Qend=" << fmt(cfg.Qend)
              << " steps=" << cfg.steps << " fitted c1=" << fmt(c1) << " c2=" << fmt(c2)
              << " max_rel_error=" << fmt(max_err) << "\n";
    write_sidecar((dir / "ode_f.meta.json").string(), "ode-f", cfg.resolved("ode-f"),
                  timer.seconds());
    return max_err < cfg.tol_ode ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotator-lab: numerical experiments on relativistic rotators"};
    app.require_subcommand(1);

    Config cfg;
    std::string config_path;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file; flags override its fields");
        sub->add_option("--profile", cfg.profile,
                        "fundamental|partner|affine:a|deformed:eps|custom:c1:c2");
        sub->add_option("--m", cfg.m, "mass parameter");
        sub->add_option("--ell", cfg.ell, "length parameter");
        sub->add_option("--seed", cfg.seed, "root RNG seed");
        sub->add_option("--out", cfg.out, "output directory");
        sub->add_option("--tol_residual", cfg.tol_residual);
        sub->add_option("--tol_conservation", cfg.tol_conservation);
        sub->add_option("--tol_degeneracy", cfg.tol_degeneracy);
        sub->add_option("--tol_ode", cfg.tol_ode);
        sub->add_option("--T", cfg.T, "time span, units of ell");
        sub->add_option("--dt", cfg.dt, "integration step, units of ell");
        sub->add_option("--n_states", cfg.n_states, "number of sampled states / table rows");
        sub->add_option("--n_grid", cfg.n_grid, "residual grid points");
        sub->add_option("--sample_stride", cfg.sample_stride, "store every n-th step");
        sub->add_option("--state_file", cfg.state_file, "initial chart state (JSON)");
        sub->add_option("--omega", cfg.omega, "base angular speed of the phase pair");
        sub->add_option("--eps", cfg.eps, "phase modulation amplitude");
        sub->add_option("--nu", cfg.nu, "phase modulation frequency");
        sub->add_option("--delta_min", cfg.delta_min, "divergence threshold, units of ell");
        sub->add_option("--Q0", cfg.Q0);
        sub->add_option("--Qend", cfg.Qend);
        sub->add_option("--steps", cfg.steps);
        sub->add_option("--f0", cfg.f0);
        sub->add_option("--f0p", cfg.f0p);
        sub->add_flag("--serial", cfg.serial, "force serial scan kernels");
    };

    CLI::App* casimir = app.add_subcommand("casimir", "Casimir invariants across Q");
    CLI::App* hessian = app.add_subcommand("hessian", "velocity-Hessian degeneracy scan");
    CLI::App* integrate = app.add_subcommand("integrate", "integrate the equations of motion");
    CLI::App* indet = app.add_subcommand("indeterminism",
                                         "two solutions from identical initial data");
    CLI::App* odef = app.add_subcommand("ode-f", "degeneracy condition as an ODE for f(Q)");
    for (CLI::App* sub : {casimir, hessian, integrate, indet, odef}) add_common(sub);

    // pre-scan for --config so file values load before flag overrides
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                load_config_file(argv[i + 1], cfg);
            } catch (const ConfigError& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return 2;
            }
            break;
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.validate();
        if (casimir->parsed()) return cmd_casimir(cfg);
        if (hessian->parsed()) return cmd_hessian(cfg);
        if (integrate->parsed()) return cmd_integrate(cfg);
        if (indet->parsed()) return cmd_indeterminism(cfg);
        if (odef->parsed()) return cmd_ode_f(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const JetMismatch& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateHessian& e) {
        std::cerr << "degenerate Hessian: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
