#include "zipflab/config_json.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>

#include "zipflab/errors.hpp"

namespace zipflab {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& context,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(context + " must be a JSON object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!ok.count(key)) throw ConfigError("unknown key \"" + key + "\" in " + context);
    }
}

double get_num(const json& obj, const std::string& context, const char* key) {
    if (!obj.contains(key))
        throw ConfigError(context + " is missing required key \"" + key + "\"");
    if (!obj[key].is_number()) throw ConfigError(context + "." + key + " must be a number");
    return obj[key].get<double>();
}

double get_num_or(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    return obj[key].get<double>();
}

std::string get_kind(const json& obj, const std::string& context) {
    if (!obj.contains("kind") || !obj["kind"].is_string())
        throw ConfigError(context + " requires a string \"kind\"");
    return obj["kind"].get<std::string>();
}

EntrySizeLaw parse_entry(const json& obj) {
    const std::string kind = get_kind(obj, "birth.entry");
    EntrySizeLaw law;
    if (kind == "point") {
        check_keys(obj, "birth.entry", {"kind", "s0"});
        law.kind = EntrySizeLaw::Kind::PointMass;
        law.s0 = get_num(obj, "birth.entry", "s0");
    } else if (kind == "lognormal") {
        check_keys(obj, "birth.entry", {"kind", "s0", "log_sd"});
        law.kind = EntrySizeLaw::Kind::LogNormal;
        law.s0 = get_num(obj, "birth.entry", "s0");
        law.log_sd = get_num(obj, "birth.entry", "log_sd");
    } else {
        throw ConfigError("birth.entry.kind must be \"point\" or \"lognormal\"");
    }
    return law;
}

}  // namespace

LoadedConfig config_from_json(const json& doc) {
    check_keys(doc, "config",
               {"diffusion", "birth", "exit", "ma", "horizon", "dt", "seed", "replicas",
                "initial_firms", "initial_size", "snapshot_times", "grid"});
    LoadedConfig out;
    out.raw = doc;
    EconomyConfig& c = out.config;

    // ---- diffusion ----
    if (!doc.contains("diffusion")) throw ConfigError("config is missing \"diffusion\"");
    {
        const json& dj = doc["diffusion"];
        const std::string kind = get_kind(dj, "diffusion");
        out.diffusion_kind = kind;
        if (kind == "gbm") {
            check_keys(dj, "diffusion", {"kind", "mu", "sigma"});
            GibratParams p{get_num(dj, "diffusion", "mu"), get_num(dj, "diffusion", "sigma")};
            c.diffusion = DiffusionSpec::make_gbm(p);
            out.has_asymptotic = true;
            out.asym_a = p.log_drift();
            out.asym_sigma = p.sigma;
        } else if (kind == "constant_volatility") {
            check_keys(dj, "diffusion", {"kind", "drift", "vol"});
            c.diffusion = DiffusionSpec::make_constant_volatility(
                get_num(dj, "diffusion", "drift"), get_num(dj, "diffusion", "vol"));
        } else if (kind == "semi_gbm") {
            check_keys(dj, "diffusion", {"kind", "mu", "sigma", "crossover"});
            const double sigma = get_num(dj, "diffusion", "sigma");
            c.diffusion = DiffusionSpec::make_semi_gbm(get_num(dj, "diffusion", "mu"), sigma,
                                                       get_num(dj, "diffusion", "crossover"));
            // bounded drift + asymptotically proportional volatility
            out.has_asymptotic = true;
            out.asym_a = -0.5 * sigma * sigma;
            out.asym_sigma = sigma;
        } else {
            throw ConfigError("diffusion.kind must be one of gbm, constant_volatility, semi_gbm");
        }
    }

    // ---- birth ----
    if (!doc.contains("birth")) throw ConfigError("config is missing \"birth\"");
    {
        const json& bj = doc["birth"];
        const std::string kind = get_kind(bj, "birth");
        if (kind == "constant") {
            check_keys(bj, "birth", {"kind", "nu0", "entry"});
            c.birth.kind = BirthLaw::Kind::Constant;
            c.birth.nu0 = get_num(bj, "birth", "nu0");
        } else if (kind == "exponential") {
            check_keys(bj, "birth", {"kind", "nu0", "d", "entry"});
            c.birth.kind = BirthLaw::Kind::Exponential;
            c.birth.nu0 = get_num(bj, "birth", "nu0");
            c.birth.d = get_num(bj, "birth", "d");
            out.birth_d = c.birth.d;
        } else if (kind == "coupled") {
            check_keys(bj, "birth", {"kind", "kappa", "entry"});
            c.birth.kind = BirthLaw::Kind::Coupled;
            c.birth.kappa = get_num(bj, "birth", "kappa");
        } else {
            throw ConfigError("birth.kind must be one of constant, exponential, coupled");
        }
        if (!bj.contains("entry")) throw ConfigError("birth is missing \"entry\"");
        c.birth.entry = parse_entry(bj["entry"]);
    }

    // ---- exit ----
    if (!doc.contains("exit")) throw ConfigError("config is missing \"exit\"");
    {
        const json& ej = doc["exit"];
        check_keys(ej, "exit", {"s_min", "hazard"});
        if (ej.contains("s_min") && !ej["s_min"].is_null())
            c.exit.s_min = ej["s_min"].get<double>();
        if (ej.contains("hazard")) {
            const json& hj = ej["hazard"];
            const std::string kind = get_kind(hj, "exit.hazard");
            if (kind == "none") {
                check_keys(hj, "exit.hazard", {"kind"});
            } else if (kind == "constant") {
                check_keys(hj, "exit.hazard", {"kind", "h"});
                c.exit.hazard.kind = HazardLaw::Kind::Constant;
                c.exit.hazard.h = get_num(hj, "exit.hazard", "h");
                out.hazard_h = c.exit.hazard.h;
            } else if (kind == "size_power") {
                // h(s) = h0 * (s/s_ref)^-power, capped at h_max
                check_keys(hj, "exit.hazard", {"kind", "h0", "s_ref", "power", "h_max"});
                const double h0 = get_num(hj, "exit.hazard", "h0");
                const double s_ref = get_num(hj, "exit.hazard", "s_ref");
                const double power = get_num(hj, "exit.hazard", "power");
                const double h_max = get_num(hj, "exit.hazard", "h_max");
                c.exit.hazard.kind = HazardLaw::Kind::SizeDependent;
                c.exit.hazard.h_max = h_max;
                c.exit.hazard.h_fn = [h0, s_ref, power, h_max](double s) {
                    return std::min(h0 * std::pow(s / s_ref, -power), h_max);
                };
            } else if (kind == "age_step") {
                // h(age) = h * 1{age > after_age}
                check_keys(hj, "exit.hazard", {"kind", "h", "after_age"});
                const double h = get_num(hj, "exit.hazard", "h");
                const double after = get_num(hj, "exit.hazard", "after_age");
                c.exit.hazard.kind = HazardLaw::Kind::AgeDependent;
                c.exit.hazard.h_max = h;
                c.exit.hazard.h_fn = [h, after](double age) { return age > after ? h : 0.0; };
            } else {
                throw ConfigError(
                    "exit.hazard.kind must be one of none, constant, size_power, age_step");
            }
        }
    }

    // ---- ma (optional) ----
    if (doc.contains("ma")) {
        const json& mj = doc["ma"];
        check_keys(mj, "ma", {"merger", "spinoff"});
        if (mj.contains("merger")) {
            const json& mm = mj["merger"];
            const std::string kind = get_kind(mm, "ma.merger");
            if (kind == "off") {
                check_keys(mm, "ma.merger", {"kind"});
            } else if (kind == "constant") {
                check_keys(mm, "ma.merger", {"kind", "lambda_m"});
                c.ma.merger_kind = MAKernel::MergerKind::Constant;
                c.ma.lambda_m = get_num(mm, "ma.merger", "lambda_m");
            } else if (kind == "multiplicative") {
                check_keys(mm, "ma.merger", {"kind", "lambda_m", "v_scale"});
                c.ma.merger_kind = MAKernel::MergerKind::Multiplicative;
                c.ma.lambda_m = get_num(mm, "ma.merger", "lambda_m");
                c.ma.v_scale = get_num(mm, "ma.merger", "v_scale");
            } else {
                throw ConfigError("ma.merger.kind must be off, constant or multiplicative");
            }
        }
        if (mj.contains("spinoff")) {
            const json& sf = mj["spinoff"];
            const std::string kind = get_kind(sf, "ma.spinoff");
            if (kind == "off") {
                check_keys(sf, "ma.spinoff", {"kind"});
            } else if (kind == "constant") {
                check_keys(sf, "ma.spinoff", {"kind", "lambda_f", "u_min", "u_max"});
                c.ma.spinoff_kind = MAKernel::SpinoffKind::Constant;
                c.ma.lambda_f = get_num(sf, "ma.spinoff", "lambda_f");
                c.ma.u_min = get_num(sf, "ma.spinoff", "u_min");
                c.ma.u_max = get_num(sf, "ma.spinoff", "u_max");
            } else {
                throw ConfigError("ma.spinoff.kind must be off or constant");
            }
        }
    }

    // ---- scalars ----
    c.horizon = get_num(doc, "config", "horizon");
    c.dt = get_num(doc, "config", "dt");
    if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("replicas")) c.replicas = doc["replicas"].get<std::uint64_t>();
    if (doc.contains("initial_firms")) c.initial_firms = doc["initial_firms"].get<std::uint64_t>();
    c.initial_size = get_num_or(doc, "initial_size", c.birth.entry.s0);
    if (doc.contains("snapshot_times"))
        c.snapshot_times = doc["snapshot_times"].get<std::vector<double>>();

    // ---- solver grid (optional) ----
    if (doc.contains("grid")) {
        const json& gj = doc["grid"];
        check_keys(gj, "grid",
                   {"n", "s_max", "refine_check", "refine_tolerance", "fit_lo", "fit_hi"});
        if (gj.contains("n")) out.grid.n = gj["n"].get<std::size_t>();
        out.grid.s_max = get_num_or(gj, "s_max", 0.0);
        if (gj.contains("refine_check")) out.grid.refine_check = gj["refine_check"].get<bool>();
        out.grid.refine_tolerance = get_num_or(gj, "refine_tolerance", out.grid.refine_tolerance);
        out.grid.fit_lo = get_num_or(gj, "fit_lo", out.grid.fit_lo);
        out.grid.fit_hi = get_num_or(gj, "fit_hi", out.grid.fit_hi);
    }

    return out;
}

LoadedConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
    }
    return config_from_json(doc);
}

}  // namespace zipflab
