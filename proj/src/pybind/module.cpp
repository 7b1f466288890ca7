#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>
#include <vector>

#include "zipflab/analytics.hpp"
#include "zipflab/config_json.hpp"
#include "zipflab/errors.hpp"
#include "zipflab/exits.hpp"
#include "zipflab/gbm.hpp"
#include "zipflab/simulate.hpp"
#include "zipflab/tailfit.hpp"

namespace py = pybind11;
using namespace zipflab;

namespace {

py::dict fit_to_dict(const TailFit& fit) {
    py::dict d;
    d["method"] = fit.method == TailFit::Method::Hill ? "hill" : "rank_size";
    d["m_hat"] = fit.m_hat;
    d["stderr"] = fit.stderr_;
    d["k"] = fit.k;
    d["threshold"] = fit.threshold;
    d["ks_distance"] = fit.ks_distance;
    d["r_squared"] = fit.r_squared;
    return d;
}

py::dict density_to_dict(const DensitySolution& sol) {
    py::dict d;
    d["s"] = sol.grid;
    d["f"] = sol.density;
    d["tail_exponent"] = sol.tail_exponent;
    d["normalization"] = sol.normalization;
    d["fitted_tail"] = sol.fitted_tail;
    d["fit_r_squared"] = sol.fit_r_squared;
    d["flux_residual"] = sol.flux_residual;
    return d;
}

LoadedConfig parse_config(const std::string& config_json) {
    return config_from_json(nlohmann::json::parse(config_json));
}

}  // namespace

PYBIND11_MODULE(_zipflab, m) {
    m.doc() = "Proportional-growth firm-size laboratory: diffusions, "
              "stationary densities and tail estimation";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DegenerateSample>(m, "DegenerateSample", PyExc_ValueError);
    py::register_exception<NoStationaryTail>(m, "NoStationaryTail", PyExc_ArithmeticError);
    py::register_exception<NoStationaryRegime>(m, "NoStationaryRegime", PyExc_ArithmeticError);

    // ---- growth diffusion closed forms ----
    m.def(
        "gbm_step",
        [](double s, double mu, double sigma, double dt, double z) {
            return gbm_step(s, GibratParams{mu, sigma}, dt, z);
        },
        py::arg("s"), py::arg("mu"), py::arg("sigma"), py::arg("dt"), py::arg("z"),
        "One exact log-space GBM update");
    m.def(
        "lognormal_pdf",
        [](double s, double t, double s0, double mu, double sigma) {
            return lognormal_pdf(s, t, s0, GibratParams{mu, sigma});
        },
        py::arg("s"), py::arg("t"), py::arg("s0"), py::arg("mu"), py::arg("sigma"));
    m.def(
        "lognormal_cdf",
        [](double s, double t, double s0, double mu, double sigma) {
            return lognormal_cdf(s, t, s0, GibratParams{mu, sigma});
        },
        py::arg("s"), py::arg("t"), py::arg("s0"), py::arg("mu"), py::arg("sigma"));
    m.def(
        "quantile_curve",
        [](double q, double t, double s0, double mu, double sigma) {
            return quantile_curve(q, t, s0, GibratParams{mu, sigma});
        },
        py::arg("q"), py::arg("t"), py::arg("s0"), py::arg("mu"), py::arg("sigma"));
    m.def(
        "max_ccdf_decaying",
        [](double s, double s0, double mu, double sigma) {
            return max_ccdf_decaying(s, s0, GibratParams{mu, sigma});
        },
        py::arg("s"), py::arg("s0"), py::arg("mu"), py::arg("sigma"),
        "P{all-time max of a decaying GBM exceeds s}");

    // ---- exit-process closed forms ----
    m.def("first_passage_pdf", &first_passage_pdf, py::arg("delta"), py::arg("a"),
          py::arg("sigma"), py::arg("t"));
    m.def("first_passage_cdf", &first_passage_cdf, py::arg("delta"), py::arg("a"),
          py::arg("sigma"), py::arg("t"));
    m.def("hitting_probability", &hitting_probability, py::arg("delta"), py::arg("a"),
          py::arg("sigma"));
    m.def("mean_lifespan", &mean_lifespan, py::arg("delta"), py::arg("a"), py::arg("sigma"));

    // ---- stationary analytics ----
    m.def("tail_exponent", &tail_exponent, py::arg("a"), py::arg("sigma"), py::arg("h") = 0.0,
          py::arg("d") = 0.0);
    m.def(
        "gbm_steady_density",
        [](double mu, double sigma, double nu0, double s0, double s_min, double h,
           std::size_t n, double s_max) {
            return density_to_dict(
                gbm_steady_density(GibratParams{mu, sigma}, nu0, s0, s_min, h, n, s_max));
        },
        py::arg("mu"), py::arg("sigma"), py::arg("nu0"), py::arg("s0"), py::arg("s_min"),
        py::arg("h") = 0.0, py::arg("n") = 1024, py::arg("s_max") = 0.0);
    m.def(
        "solve_stationary",
        [](const std::string& config_json) {
            const LoadedConfig loaded = parse_config(config_json);
            return density_to_dict(solve_stationary(loaded.config.diffusion,
                                                    loaded.config.birth, loaded.config.exit,
                                                    loaded.grid, loaded.birth_d));
        },
        py::arg("config_json"),
        "Stationary density of the economy described by a config JSON string");

    // ---- tail estimation ----
    m.def(
        "hill",
        [](const std::vector<double>& sample, std::size_t k) {
            return fit_to_dict(hill(sample, k == 0 ? default_k(sample.size()) : k));
        },
        py::arg("sample"), py::arg("k") = 0);
    m.def(
        "rank_size",
        [](const std::vector<double>& sample, std::size_t k) {
            return fit_to_dict(rank_size(sample, k == 0 ? default_k(sample.size()) : k));
        },
        py::arg("sample"), py::arg("k") = 0);
    m.def("default_k", &default_k, py::arg("n"));
    m.def("ccdf", &ccdf, py::arg("sample"));

    // ---- whole-economy simulation ----
    m.def(
        "run",
        [](const std::string& config_json) {
            const LoadedConfig loaded = parse_config(config_json);
            const auto violations = validate(loaded.config);
            if (!violations.empty()) throw ConfigError(violations.front());
            const SimulationResult result = run(loaded.config);
            const Population& pop = result.final_population;
            py::dict d;
            std::vector<double> sizes;
            sizes.reserve(pop.firms.size());
            for (const auto& f : pop.firms) sizes.push_back(f.size);
            d["final_sizes"] = sizes;
            d["live"] = pop.live_count();
            d["born"] = pop.born_count;
            d["absorbed"] = pop.absorbed_count;
            d["sudden_deaths"] = pop.sudden_death_count;
            d["merged"] = pop.merged_count;
            d["spinoffs"] = pop.spinoff_count;
            d["total_value"] = pop.total_value;
            std::vector<double> times, live;
            for (const auto& fp : result.flow_series) {
                times.push_back(fp.t);
                live.push_back(static_cast<double>(fp.live));
            }
            d["flow_t"] = times;
            d["flow_live"] = live;
            std::vector<double> durations;
            durations.reserve(result.lifespans.size());
            for (const auto& r : result.lifespans) durations.push_back(r.duration);
            d["lifespans"] = durations;
            d["pooled_late_sizes"] = pooled_sizes(result, loaded.config.horizon / 2.0);
            return d;
        },
        py::arg("config_json"),
        "Simulate the economy described by a config JSON string");
}
