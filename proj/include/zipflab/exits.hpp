#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "zipflab/rng.hpp"
#include "zipflab/types.hpp"

namespace zipflab {

struct LifespanRecord {
    std::uint64_t firm_id = 0;
    double duration = 0.0;
    ExitCause cause = ExitCause::Censored;  // Censored iff alive at horizon
};

// Inverse-Gaussian density of the first passage of log size from
// delta = ln(s0/s_min) down to the barrier, for log-drift a and
// volatility sigma.  Integrates over (0,inf) to the hitting probability.
double first_passage_pdf(double delta, double a, double sigma, double t);

// Matching distribution function Pr{T <= t}.
double first_passage_cdf(double delta, double a, double sigma, double t);

// min(1, exp(-2*a*delta/sigma^2)); equals 1 whenever a <= 0.
double hitting_probability(double delta, double a, double sigma);

// Expected absorption time delta/|a|.  Throws InfiniteMean for a >= 0.
double mean_lifespan(double delta, double a, double sigma);

// Sudden-death time along a firm's path, or nullopt if no event occurs
// before t_max.  State-dependent hazards are sampled by thinning against
// the bound; `state_at` maps elapsed time to (size, age).
std::optional<double> sample_sudden_death(
    const HazardLaw& hazard,
    const std::function<std::pair<double, double>(double)>& state_at,
    double t_max, RngStream& stream);

// Applies both exit channels to every live firm for the step ending at
// t_next.  `prev_sizes[i]` is firm i's size at the step start; crossing
// detection adds the Brownian-bridge correction when the diffusion has
// exactly Gaussian (latent) log dynamics per step (GBM / OmegaTransform).
// Dead firms are marked, counters updated, and lifespans appended; the
// caller compacts the population.
void apply_exits(Population& population, const std::vector<double>& prev_sizes,
                 double t_next, double dt, const ExitLaw& exit,
                 const DiffusionSpec& spec, RngStream& stream,
                 std::vector<LifespanRecord>& lifespans);

}  // namespace zipflab
