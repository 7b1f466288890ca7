#pragma once

#include <optional>
#include <vector>

#include "zipflab/exits.hpp"
#include "zipflab/ma.hpp"
#include "zipflab/types.hpp"

namespace zipflab {

struct FlowPoint {
    double t = 0.0;
    std::uint64_t births = 0;
    std::uint64_t absorptions = 0;
    std::uint64_t sudden_deaths = 0;
    std::uint64_t live = 0;
    double total_value = 0.0;
};

struct Snapshot {
    double time = 0.0;
    std::vector<double> sizes;  // live firms at that instant
};

struct SimulationResult {
    Population final_population;
    std::vector<Snapshot> snapshots;
    std::vector<LifespanRecord> lifespans;
    std::vector<FlowPoint> flow_series;
    std::vector<MAEvent> ma_events;
};

// Advances one replica of the economy to the horizon with a fixed step:
// births drawn per step (scheduled for Constant/Exponential laws,
// conditionally Poisson for Coupled), every live firm advanced by its
// growth stream, exits applied with bridge-corrected absorption, then
// M&A events.  Newly born firms start growing on the next step.  The
// result is a pure function of (config, replica).
SimulationResult run_replica(const EconomyConfig& config, std::uint64_t replica);

// Runs config.replicas replicas and concatenates their outputs in
// replica order (flow series are summed pointwise).
SimulationResult run(const EconomyConfig& config);

// Earliest time after which the live-count trend over a trailing window
// of 20% of the horizon is statistically flat at the 5% level (slope
// test with an AR(1) correction for serial correlation); nullopt if the
// series never settles.
std::optional<double> steady_state_detect(const std::vector<FlowPoint>& flow_series);

// Default snapshot schedule: geometric spacing from horizon/100 up to
// the horizon, covering burn-in and steady state.
std::vector<double> default_snapshot_times(double horizon);

// Sizes pooled over every snapshot at time >= from_time.
std::vector<double> pooled_sizes(const SimulationResult& result, double from_time);

}  // namespace zipflab
