#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "seqtest/assumptions.hpp"
#include "seqtest/equilibrium.hpp"
#include "seqtest/infinite_horizon.hpp"
#include "seqtest/io.hpp"
#include "seqtest/timechange.hpp"

namespace fs = std::filesystem;
using namespace seqtest;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAssumption = 2;
constexpr int kExitNoConvergence = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Config JSON file")->required();
    cmd->add_option("--out", args.out_dir, "Output directory");
    cmd->add_option("--set", args.overrides, "Override a config key, e.g. signal.lambda1=-0.5");
    cmd->add_option("--seed", args.seed, "Override mc.seed");
    cmd->add_flag("--quiet", args.quiet, "Suppress progress output");
}

ProblemConfig load_with_overrides(const CommonArgs& args) {
    std::ifstream in(args.config_path);
    if (!in) throw ConfigError("config: cannot open '" + args.config_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    for (const auto& ov : args.overrides) text = apply_override(text, ov);
    ProblemConfig cfg = parse_config_json(text);
    if (args.seed) cfg.mc.seed = *args.seed;
    return cfg;
}

void info(const CommonArgs& args, const std::string& msg) {
    if (!args.quiet) std::cout << msg << '\n';
}

int report_assumptions(const ProblemConfig& cfg, bool print_json) {
    const AssumptionReport rep = check_assumptions(cfg.loss, cfg.signal, cfg.cost);
    if (print_json) {
        std::cout << to_json_string(rep) << '\n';
    } else {
        for (const auto& v : rep.violations) std::cerr << "warning: " << v << '\n';
    }
    return rep.ok() ? kExitOk : kExitAssumption;
}

VolatilityCurve initial_eta(const ProblemConfig& cfg) {
    const Mollifier phi(cfg.mollifier_width);
    const auto mu = StoppedMeasurePair::uniform(cfg.horizon, cfg.grid.n_time);
    return induced_volatility(cfg.signal, mu, phi, cfg.horizon, cfg.grid.n_time);
}

int run_check(const CommonArgs& args) {
    const ProblemConfig cfg = load_with_overrides(args);
    return report_assumptions(cfg, true);
}

int run_solve_agent(const CommonArgs& args) {
    const ProblemConfig cfg = load_with_overrides(args);
    const int warn = report_assumptions(cfg, false);
    const VolatilityCurve eta = initial_eta(cfg);
    ValueSurface surface = solve_value(eta, cfg.loss, cfg.cost, cfg.grid.n_space, cfg.grid.n_time);
    const BoundaryPair bounds = extract_boundaries(surface);
    fs::create_directories(args.out_dir);
    write_surface_csv((fs::path(args.out_dir) / "surface.csv").string(), surface);
    write_boundaries_csv((fs::path(args.out_dir) / "boundaries.csv").string(), bounds);
    write_value_slice_csv((fs::path(args.out_dir) / "value_t0.csv").string(), surface, 0);
    info(args, "wrote surface.csv, boundaries.csv, value_t0.csv to " + args.out_dir);
    return warn;
}

int run_solve_infinite(const CommonArgs& args) {
    const ProblemConfig cfg = load_with_overrides(args);
    const int warn = report_assumptions(cfg, false);
    nlohmann::json j;
    for (const double e : {cfg.signal.min_volatility(), cfg.signal.max_volatility()}) {
        const InfiniteHorizonSolution sol = solve_infinite_horizon(e, cfg.loss, cfg.cost);
        nlohmann::json entry;
        entry["eta"] = e;
        entry["interior"] = sol.interior;
        entry["lower"] = sol.lower;
        entry["upper"] = sol.upper;
        entry["fit_residual"] = sol.fit_residual;
        j["solutions"].push_back(entry);
    }
    fs::create_directories(args.out_dir);
    std::ofstream out(fs::path(args.out_dir) / "infinite.json");
    out << j.dump(2) << '\n';
    info(args, "wrote infinite.json to " + args.out_dir);
    return warn;
}

void write_equilibrium_outputs(const std::string& dir, const ProblemConfig& cfg,
                               const EquilibriumResult& res) {
    fs::create_directories(dir);
    write_result_json((fs::path(dir) / "result.json").string(), cfg, res);
    write_boundaries_csv((fs::path(dir) / "boundaries.csv").string(), res.bounds);
    write_cdfs_csv((fs::path(dir) / "cdfs.csv").string(), res.measure);
    write_value_slice_csv((fs::path(dir) / "value_t0.csv").string(), res.surface, 0);
}

int run_equilibrium(const CommonArgs& args) {
    const ProblemConfig cfg = load_with_overrides(args);
    const int warn = report_assumptions(cfg, false);
    const EquilibriumResult res = solve_equilibrium(cfg);
    write_equilibrium_outputs(args.out_dir, cfg, res);
    std::ostringstream msg;
    msg << (res.converged ? "converged" : "did not converge") << " after " << res.iterations
        << " iteration(s); final distance "
        << (res.distances.empty() ? 0.0 : res.distances.back());
    info(args, msg.str());
    if (!res.converged) return kExitNoConvergence;
    return warn;
}

int run_sweep(const CommonArgs& args, const std::string& param, const std::string& values_csv) {
    nlohmann::json manifest;
    manifest["param"] = param;
    std::stringstream ss(values_csv);
    std::string value;
    int rc = kExitOk;
    while (std::getline(ss, value, ',')) {
        CommonArgs sub = args;
        sub.overrides.push_back(param + "=" + value);
        const ProblemConfig cfg = load_with_overrides(sub);
        const AssumptionReport rep = check_assumptions(cfg.loss, cfg.signal, cfg.cost);
        for (const auto& v : rep.violations) {
            std::cerr << "warning (" << param << "=" << value << "): " << v << '\n';
        }
        std::string key = param.substr(param.find_last_of('.') + 1) + "_" + value;
        const std::string dir = (fs::path(args.out_dir) / key).string();
        const EquilibriumResult res = solve_equilibrium(cfg);
        write_equilibrium_outputs(dir, cfg, res);
        nlohmann::json entry;
        entry["value"] = value;
        entry["dir"] = key;
        entry["converged"] = res.converged;
        entry["iterations"] = res.iterations;
        manifest["runs"].push_back(entry);
        info(args, key + ": " + (res.converged ? "converged" : "no convergence"));
        if (!res.converged) rc = kExitNoConvergence;
        if (rc == kExitOk && !rep.ok()) rc = kExitAssumption;
    }
    fs::create_directories(args.out_dir);
    std::ofstream out(fs::path(args.out_dir) / "manifest.json");
    out << manifest.dump(2) << '\n';
    return rc;
}

int run_cross_check(const CommonArgs& args) {
    const ProblemConfig cfg = load_with_overrides(args);
    const VolatilityCurve eta = initial_eta(cfg);
    const ValueSurface direct =
        solve_value(eta, cfg.loss, cfg.cost, cfg.grid.n_space, cfg.grid.n_time);
    const ValueSurface changed =
        solve_value_timechanged(eta, cfg.loss, cfg.cost, cfg.grid.n_space, cfg.grid.n_time);

    double sup = 0.0;
    const double t_hi = cfg.horizon - 0.1;
    for (std::size_t k = 0; k < direct.times.size(); ++k) {
        if (direct.times[k] > t_hi) break;
        for (std::size_t i = 0; i < direct.probs.size(); ++i) {
            const double p = direct.probs[i];
            if (p < 0.05 || p > 0.95) continue;
            sup = std::max(sup, std::abs(direct.value(static_cast<int>(k), static_cast<int>(i)) -
                                         changed.value(static_cast<int>(k), static_cast<int>(i))));
        }
    }
    nlohmann::json j;
    j["sup_distance"] = sup;
    j["window"] = {{"t_max", t_hi}, {"p_min", 0.05}, {"p_max", 0.95}};
    fs::create_directories(args.out_dir);
    std::ofstream out(fs::path(args.out_dir) / "cross_check.json");
    out << j.dump(2) << '\n';
    info(args, "sup distance on comparison window: " + format_full(sup));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("MFG_SEQTEST_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }

    CLI::App app{"Mean-field sequential-testing solver"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string sweep_param = "signal.lambda1";
    std::string sweep_values;

    CLI::App* check = app.add_subcommand("check", "Validate config and report assumption checks");
    add_common(check, args);
    CLI::App* agent = app.add_subcommand(
        "solve-agent", "Solve the single-agent problem for the initial population measure");
    add_common(agent, args);
    CLI::App* infinite =
        app.add_subcommand("solve-infinite", "Stationary boundaries for the volatility envelope");
    add_common(infinite, args);
    CLI::App* equilibrium =
        app.add_subcommand("equilibrium", "Damped fixed-point iteration to an equilibrium");
    add_common(equilibrium, args);
    CLI::App* sweep = app.add_subcommand("sweep", "Run equilibria over a list of parameter values");
    add_common(sweep, args);
    sweep->add_option("--param", sweep_param, "Dotted config key to sweep");
    sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
    CLI::App* cross =
        app.add_subcommand("cross-check", "Compare the direct and clock-changed solvers");
    add_common(cross, args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_check(args);
        if (agent->parsed()) return run_solve_agent(args);
        if (infinite->parsed()) return run_solve_infinite(args);
        if (equilibrium->parsed()) return run_equilibrium(args);
        if (sweep->parsed()) return run_sweep(args, sweep_param, sweep_values);
        if (cross->parsed()) return run_cross_check(args);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}
