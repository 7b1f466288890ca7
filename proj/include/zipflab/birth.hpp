#pragma once

#include <vector>

#include "zipflab/rng.hpp"
#include "zipflab/types.hpp"

namespace zipflab {

// Birth instants and matching entry sizes over one horizon.
struct BirthSchedule {
    std::vector<double> instants;     // strictly increasing, in [0, horizon]
    std::vector<double> entry_sizes;  // all > 0
};

// Poisson process of firm births with intensity nu0 (Constant) or
// nu0*exp(d*t) (Exponential), sampled by thinning against the majorizing
// constant on [0, horizon].  Coupled laws are handled inside the
// population simulator, not here.
// Throws IntensityOverflow when the expected count exceeds the cap.
BirthSchedule sample_births(const BirthLaw& law, double horizon, RngStream& stream,
                            double intensity_cap = 1e9);

// Conditionally-Poisson birth intensity of the coupled model:
// nu(t) = kappa * W(t) with W the total live value.
double coupled_intensity(const Population& population, double kappa);

// Draw one entry size; lognormal entries are resampled until they clear
// the exit level when one is active.
double sample_entry_size(const EntrySizeLaw& law, RngStream& stream, double s_min = 0.0);

}  // namespace zipflab
