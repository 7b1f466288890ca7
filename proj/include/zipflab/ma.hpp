#pragma once

#include <cstdint>
#include <vector>

#include "zipflab/rng.hpp"
#include "zipflab/types.hpp"

namespace zipflab {

struct MAEvent {
    double t = 0.0;
    char kind = 'M';  // 'M' merger, 'F' spin-off (fragmentation)
    std::uint64_t parent_a = 0, parent_b = 0;  // parent_b unused for spin-offs
    std::uint64_t child_a = 0, child_b = 0;    // child_b unused for mergers
    double size_a = 0.0, size_b = 0.0;         // resulting sizes
};

// Applies merger and spin-off events over one step.  Mergers replace a
// pair by one firm of the summed size; spin-offs split one firm into
// fractions u and 1-u.  Total value is conserved exactly by every event.
// Expected event counts are Poisson with the kernel's aggregate rate;
// pairs are picked uniformly (Constant) or value-weighted
// (Multiplicative).  The surviving/larger fragment keeps the parent id;
// spin-off children restart their age.  `next_id` supplies fresh ids.
void apply_ma(Population& population, double dt, const MAKernel& kernel,
              RngStream& stream, std::uint64_t& next_id,
              std::vector<MAEvent>* event_log = nullptr);

}  // namespace zipflab
