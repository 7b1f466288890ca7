// zipflab command-line front end.
//
// Subcommands:
//   simulate  run a whole-economy Monte Carlo and dump sizes/flows/lifespans
//   solve     stationary density of the configured diffusion
//   estimate  tail-index fits of a one-column sizes CSV
//   sweep     repeat simulate+theory over a list of values of one parameter
//
// Exit codes: 0 ok, 2 config/input error, 3 runtime failure,
// 4 no stationary regime exists for the requested solve.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "zipflab/analytics.hpp"
#include "zipflab/config_json.hpp"
#include "zipflab/csv.hpp"
#include "zipflab/errors.hpp"
#include "zipflab/simulate.hpp"
#include "zipflab/tailfit.hpp"

namespace {

using nlohmann::json;
using namespace zipflab;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitNoStationary = 4;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> replicas;
    std::optional<double> dt;
    bool quiet = false;
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts, bool needs_config) {
    auto* cfg = cmd->add_option("--config", opts.config_path, "experiment config (JSON)");
    if (needs_config) cfg->required();
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "override the config seed");
    cmd->add_option("--replicas", opts.replicas, "override the replica count");
    cmd->add_option("--dt", opts.dt, "override the time step");
    cmd->add_flag("--quiet", opts.quiet, "suppress progress output");
}

void apply_overrides(const CommonOpts& opts, EconomyConfig& config) {
    if (opts.seed) config.seed = *opts.seed;
    if (opts.replicas) config.replicas = *opts.replicas;
    if (opts.dt) config.dt = *opts.dt;
}

LoadedConfig load_checked(const CommonOpts& opts) {
    LoadedConfig loaded = load_config_file(opts.config_path);
    apply_overrides(opts, loaded.config);
    const auto violations = validate(loaded.config);
    if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "config error: " << v << "\n";
        throw ConfigError("config failed validation");
    }
    return loaded;
}

std::string out_path(const CommonOpts& opts, const std::string& name) {
    std::filesystem::create_directories(opts.out_dir);
    return (std::filesystem::path(opts.out_dir) / name).string();
}

void write_json(const std::string& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << doc.dump(2) << "\n";
}

// theoretical tail exponent from the asymptotic (a, sigma, h, d)
// characterization; nullopt when the diffusion has no proportional
// asymptote or no stationary tail exists
std::optional<double> theory_exponent(const LoadedConfig& loaded) {
    if (!loaded.has_asymptotic) return std::nullopt;
    try {
        return tail_exponent(loaded.asym_a, loaded.asym_sigma, loaded.hazard_h,
                             loaded.birth_d);
    } catch (const NoStationaryTail&) {
        return std::nullopt;
    }
}

json fit_to_json(const TailFit& fit) {
    return json{{"method", fit.method == TailFit::Method::Hill ? "hill" : "rank_size"},
                {"m_hat", fit.m_hat},
                {"stderr", fit.stderr_},
                {"k", fit.k},
                {"threshold", fit.threshold},
                {"ks_distance", fit.ks_distance},
                {"r_squared", fit.r_squared}};
}

int cmd_simulate(const CommonOpts& opts) {
    const LoadedConfig loaded = load_checked(opts);
    const EconomyConfig& config = loaded.config;

    const SimulationResult result = run(config);
    const Population& pop = result.final_population;

    std::vector<double> final_sizes;
    final_sizes.reserve(pop.firms.size());
    for (const auto& f : pop.firms) final_sizes.push_back(f.size);
    io::write_sizes_csv(out_path(opts, "sizes_final.csv"), final_sizes);
    io::write_flows_csv(out_path(opts, "flows.csv"), result.flow_series);
    io::write_lifespans_csv(out_path(opts, "lifespans.csv"), result.lifespans);
    if (config.ma.active())
        io::write_ma_events_csv(out_path(opts, "ma_events.csv"), result.ma_events);

    json summary;
    summary["config"] = loaded.raw;
    summary["seed"] = config.seed;
    summary["dt"] = config.dt;
    summary["replicas"] = config.replicas;
    summary["final"] = {{"live", pop.live_count()},
                        {"born", pop.born_count},
                        {"absorbed", pop.absorbed_count},
                        {"sudden_deaths", pop.sudden_death_count},
                        {"merged", pop.merged_count},
                        {"spinoffs", pop.spinoff_count},
                        {"total_value", pop.total_value}};
    const auto steady = steady_state_detect(result.flow_series);
    summary["steady_state_time"] = steady ? json(*steady) : json(nullptr);
    if (const auto m = theory_exponent(loaded)) summary["m_theory"] = *m;

    // tail fits over the sizes pooled from the late (second-half) snapshots
    const auto pooled = pooled_sizes(result, config.horizon / 2.0);
    summary["pooled_sample_size"] = pooled.size();
    try {
        summary["hill"] = fit_to_json(hill(pooled, default_k(pooled.size())));
        summary["rank_size"] = fit_to_json(rank_size(pooled, default_k(pooled.size())));
    } catch (const DegenerateSample& e) {
        summary["hill"] = nullptr;
        summary["rank_size"] = nullptr;
        if (!opts.quiet) std::cerr << "tail fit skipped: " << e.what() << "\n";
    }
    write_json(out_path(opts, "summary.json"), summary);

    if (!opts.quiet)
        std::cout << "simulate: " << pop.live_count() << " live firms at t=" << config.horizon
                  << ", outputs in " << opts.out_dir << "\n";
    return kExitOk;
}

int cmd_solve(const CommonOpts& opts) {
    const LoadedConfig loaded = load_checked(opts);

    // a GBM-like spec must admit a stationary tail before solving
    std::optional<double> m_theory;
    if (loaded.has_asymptotic) {
        try {
            m_theory = tail_exponent(loaded.asym_a, loaded.asym_sigma, loaded.hazard_h,
                                     loaded.birth_d);
        } catch (const NoStationaryTail& e) {
            std::cerr << "no stationary regime: " << e.what() << "\n"
                      << "balance requires a < 0 or h + d > 0 "
                      << "(here a=" << loaded.asym_a << ", h=" << loaded.hazard_h
                      << ", d=" << loaded.birth_d << ")\n";
            return kExitNoStationary;
        }
    }

    DensitySolution sol;
    try {
        sol = solve_stationary(loaded.config.diffusion, loaded.config.birth,
                               loaded.config.exit, loaded.grid, loaded.birth_d);
    } catch (const NoStationaryRegime& e) {
        std::cerr << "no stationary regime: " << e.what() << "\n";
        return kExitNoStationary;
    }

    io::write_density_csv(out_path(opts, "density.csv"), sol);
    json theory;
    theory["config"] = loaded.raw;
    theory["tail_exponent"] = m_theory ? json(*m_theory) : json(sol.fitted_tail);
    theory["fitted_tail"] = sol.fitted_tail;
    theory["fit_r_squared"] = sol.fit_r_squared;
    theory["normalization"] = sol.normalization;
    theory["flux_residual"] = sol.flux_residual;
    const double s_max = sol.grid.back();
    theory["fit_window"] = {{"s_lo", loaded.grid.fit_lo * s_max},
                            {"s_hi", loaded.grid.fit_hi * s_max}};
    write_json(out_path(opts, "theory.json"), theory);

    if (!opts.quiet)
        std::cout << "solve: tail exponent " << theory["tail_exponent"].dump()
                  << " (fitted " << sol.fitted_tail << "), outputs in " << opts.out_dir << "\n";
    return kExitOk;
}

int cmd_estimate(const std::string& sizes_path, const CommonOpts& opts,
                 std::optional<std::size_t> k_opt) {
    std::vector<double> sizes;
    try {
        sizes = io::read_sizes_csv(sizes_path);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());  // missing or malformed input file
    }
    const std::size_t k = k_opt.value_or(default_k(sizes.size()));
    const auto hill_fit = hill(sizes, k);
    const auto rs_fit = rank_size(sizes, k);

    json out;
    out["input"] = sizes_path;
    out["n"] = sizes.size();
    out["k"] = k;
    out["hill"] = fit_to_json(hill_fit);
    out["rank_size"] = fit_to_json(rs_fit);
    // k-sweep for stability plots: Hill estimate at a ladder of k values
    json ksweep = json::array();
    for (std::size_t kk = 2; kk < sizes.size(); kk = kk * 3 / 2 + 1) {
        try {
            const auto f = hill(sizes, kk);
            ksweep.push_back({{"k", kk}, {"m_hat", f.m_hat}, {"stderr", f.stderr_}});
        } catch (const DegenerateSample&) {
            break;
        }
    }
    out["hill_k_sweep"] = ksweep;
    write_json(out_path(opts, "tailfit.json"), out);
    io::write_ccdf_csv(out_path(opts, "ccdf.csv"), ccdf(sizes));

    if (!opts.quiet)
        std::cout << "estimate: hill m_hat=" << hill_fit.m_hat << " (k=" << k
                  << "), rank-size m_hat=" << rs_fit.m_hat << "\n";
    return kExitOk;
}

int cmd_sweep(const CommonOpts& opts) {
    std::ifstream in(opts.config_path);
    if (!in) throw ConfigError("cannot open scenario file: " + opts.config_path);
    json scenario;
    try {
        in >> scenario;
    } catch (const json::parse_error& e) {
        throw ConfigError("scenario file is not valid JSON: " + std::string(e.what()));
    }
    if (!scenario.is_object() || !scenario.contains("config") || !scenario.contains("sweep"))
        throw ConfigError("scenario file needs \"config\" and \"sweep\" blocks");
    const json& sweep = scenario["sweep"];
    if (!sweep.contains("param") || !sweep.contains("values"))
        throw ConfigError("sweep block needs \"param\" (JSON pointer) and \"values\"");
    const std::string param = sweep["param"].get<std::string>();
    const std::vector<double> values = sweep["values"].get<std::vector<double>>();
    if (values.empty()) throw ConfigError("sweep.values is empty");

    std::ofstream out(out_path(opts, "sweep.csv"), std::ios::binary);
    out << "param,value,m_theory,m_hill,m_ranksize,live_count\n";
    for (double value : values) {
        json doc = scenario["config"];
        try {
            doc.at(json::json_pointer(param)) = value;
        } catch (const json::exception&) {
            throw ConfigError("sweep.param does not resolve to a numeric field: " + param);
        }
        LoadedConfig loaded = config_from_json(doc);
        apply_overrides(opts, loaded.config);
        const auto violations = validate(loaded.config);
        if (!violations.empty())
            throw ConfigError("sweep value " + io::format_double(value) +
                              " yields an invalid config: " + violations.front());

        const auto m_theory = theory_exponent(loaded);
        const SimulationResult result = run(loaded.config);
        const auto pooled = pooled_sizes(result, loaded.config.horizon / 2.0);

        std::string m_hill = "DegenerateSample", m_rs = "DegenerateSample";
        try {
            m_hill = io::format_double(hill(pooled, default_k(pooled.size())).m_hat);
            m_rs = io::format_double(rank_size(pooled, default_k(pooled.size())).m_hat);
        } catch (const DegenerateSample&) {
        }
        out << param << ',' << io::format_double(value) << ','
            << (m_theory ? io::format_double(*m_theory) : "NoStationaryTail") << ','
            << m_hill << ',' << m_rs << ',' << result.final_population.live_count() << "\n";
        if (!opts.quiet)
            std::cout << "sweep " << param << "=" << value << " done ("
                      << result.final_population.live_count() << " live)\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"firm-size distribution laboratory: proportional-growth "
                 "economies, stationary densities and tail estimation"};
    app.require_subcommand(1);

    CommonOpts sim_opts, solve_opts, est_opts, sweep_opts;
    std::string sizes_path;
    std::optional<std::size_t> est_k;

    auto* sim = app.add_subcommand("simulate", "run a whole-economy Monte Carlo");
    add_common_flags(sim, sim_opts, true);
    auto* solve = app.add_subcommand("solve", "stationary density and tail theory");
    add_common_flags(solve, solve_opts, true);
    auto* est = app.add_subcommand("estimate", "tail fits of a sizes CSV");
    est->add_option("sizes", sizes_path, "one-column sizes CSV")->required();
    est->add_option("--k", est_k, "order statistics to use (default n^0.6 capped at n/10)");
    add_common_flags(est, est_opts, false);
    auto* sweep = app.add_subcommand("sweep", "one-parameter scenario sweep");
    add_common_flags(sweep, sweep_opts, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim_opts);
        if (solve->parsed()) return cmd_solve(solve_opts);
        if (est->parsed()) return cmd_estimate(sizes_path, est_opts, est_k);
        if (sweep->parsed()) return cmd_sweep(sweep_opts);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DegenerateSample& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
