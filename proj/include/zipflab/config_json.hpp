#pragma once

#include <string>

#include <json.hpp>

#include "zipflab/analytics.hpp"
#include "zipflab/types.hpp"

namespace zipflab {

// A parsed experiment config plus the solver grid and the theory-side
// characterization of the diffusion tail (asymptotic log-drift and
// volatility), when one exists for the configured kind.
struct LoadedConfig {
    EconomyConfig config;
    StationaryGridConfig grid;
    nlohmann::json raw;  // verbatim input document, echoed into summaries
    std::string diffusion_kind;
    bool has_asymptotic = false;
    double asym_a = 0.0;      // asymptotic log-drift
    double asym_sigma = 0.0;  // asymptotic proportional volatility
    double hazard_h = 0.0;    // constant hazard rate, 0 otherwise
    double birth_d = 0.0;     // exponential birth growth rate, 0 otherwise
};

// Parses an EconomyConfig document.  Keys match the field names
// verbatim; any unknown key is a hard error (ConfigError), so a typo in
// an experiment file cannot silently fall back to a default.
LoadedConfig config_from_json(const nlohmann::json& doc);

LoadedConfig load_config_file(const std::string& path);

}  // namespace zipflab
