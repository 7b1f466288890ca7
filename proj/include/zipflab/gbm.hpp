#pragma once

#include <vector>

#include "zipflab/rng.hpp"
#include "zipflab/types.hpp"

namespace zipflab {

// One realization of a size diffusion on a time grid.
struct PathSample {
    std::vector<double> times;   // strictly increasing
    std::vector<double> values;  // sizes at those times
};

// Exact GBM update in log space: s * exp(a*dt + sigma*sqrt(dt)*z),
// a = mu - sigma^2/2.  No discretization bias.
double gbm_step(double s, const GibratParams& params, double dt, double z);

// Advance any DiffusionSpec by one step.  GBM and OmegaTransform update
// the (latent) log coordinate exactly; ConstantVolatility and Custom use
// Euler-Maruyama.  A non-positive Euler result is clamped to `floor`
// when provided (the exit module then absorbs the firm), otherwise the
// step is retried at half length with a fresh variate.
double generic_step(double s, const DiffusionSpec& spec, double dt, double z,
                    RngStream* retry_stream = nullptr, double floor = 0.0);

// Density of S(t) started at s0 under Gibrat growth (lognormal).
double lognormal_pdf(double s, double t, double s0, const GibratParams& params);
// Matching distribution function, used by quantile and oracle checks.
double lognormal_cdf(double s, double t, double s0, const GibratParams& params);

// Size level below which a q-fraction of paths lie at time t:
// s0 * exp(a*t + sigma*sqrt(t)*z_q).
double quantile_curve(double q, double t, double s0, const GibratParams& params);

// Pr{ sup_t S(t) > s } for a stochastically decaying GBM (a < 0):
// Pareto with exponent 2|a|/sigma^2.  Throws NotDecaying if a >= 0.
double max_ccdf_decaying(double s, double s0, const GibratParams& params);

// Reversed-and-rebased path V(t) = S(T) * s0 / S(T - t); its log
// increments are those of a GBM with log-drift -a.  Test-side tool.
PathSample time_reversal_check(const PathSample& path);

// Simulate a path of n_steps equal steps of length dt starting at s0.
PathSample simulate_path(double s0, const DiffusionSpec& spec, double dt,
                         std::size_t n_steps, RngStream& stream, double floor = 0.0);

// Standard normal helpers shared across modules.
double normal_cdf(double x);
double normal_quantile(double q);

}  // namespace zipflab
