#include "zipflab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zipflab/birth.hpp"
#include "zipflab/errors.hpp"
#include "zipflab/gbm.hpp"

namespace zipflab {

std::vector<double> default_snapshot_times(double horizon) {
    std::vector<double> times;
    const int count = 16;
    const double ratio = std::pow(100.0, 1.0 / (count - 1));
    double t = horizon / 100.0;
    for (int i = 0; i < count; ++i) {
        times.push_back(std::min(t, horizon));
        t *= ratio;
    }
    times.back() = horizon;
    return times;
}

SimulationResult run_replica(const EconomyConfig& config, std::uint64_t replica) {
    {
        const auto violations = validate(config);
        if (!violations.empty())
            throw std::invalid_argument("invalid config: " + violations.front());
    }

    const double dt = config.dt;
    const auto n_steps = static_cast<std::size_t>(std::llround(config.horizon / dt));
    const double s_min = config.exit.s_min.value_or(0.0);

    RngStream births_stream(config.seed, replica, "births");
    RngStream coupled_stream(config.seed, replica, "coupled-births");
    RngStream exits_stream(config.seed, replica, "exits");
    RngStream ma_stream(config.seed, replica, "ma");
    const RngStream growth_base(config.seed, replica, "growth");

    BirthSchedule schedule;
    const bool scheduled = config.birth.kind != BirthLaw::Kind::Coupled;
    if (scheduled)
        schedule = sample_births(config.birth, config.horizon, births_stream,
                                 config.intensity_cap);
    std::size_t schedule_pos = 0;

    SimulationResult result;
    Population& pop = result.final_population;
    std::vector<RngStream> growth;   // parallel to pop.firms
    std::vector<double> prev_sizes;  // sizes at step start, parallel too

    std::uint64_t next_id = 0;
    for (std::uint64_t i = 0; i < config.initial_firms; ++i) {
        Firm f;
        f.id = next_id++;
        f.size = config.initial_size;
        pop.firms.push_back(f);
        growth.push_back(growth_base.fork(f.id));
    }
    pop.born_count = config.initial_firms;
    pop.total_value = pop.recompute_total_value();

    std::vector<double> snapshot_times = config.snapshot_times.empty()
                                             ? default_snapshot_times(config.horizon)
                                             : config.snapshot_times;
    std::sort(snapshot_times.begin(), snapshot_times.end());
    std::size_t snapshot_pos = 0;
    // a snapshot at t=0, if requested
    while (snapshot_pos < snapshot_times.size() && snapshot_times[snapshot_pos] <= 0.0) {
        Snapshot snap;
        snap.time = 0.0;
        for (const auto& f : pop.firms) snap.sizes.push_back(f.size);
        result.snapshots.push_back(std::move(snap));
        ++snapshot_pos;
    }

    result.flow_series.reserve(n_steps);

    // precomputed GBM step coefficients (exact log-space update)
    const bool is_gbm = config.diffusion.kind == DiffusionSpec::Kind::GBM;
    const double gbm_drift = config.diffusion.gbm.log_drift() * dt;
    const double gbm_shock = config.diffusion.gbm.sigma * std::sqrt(dt);

    for (std::size_t step = 0; step < n_steps; ++step) {
        const double t_next = (step + 1 == n_steps) ? config.horizon
                                                    : static_cast<double>(step + 1) * dt;

        // (1) births in (t, t_next], placed at the step end
        std::uint64_t births = 0;
        std::vector<double> birth_sizes;
        if (scheduled) {
            while (schedule_pos < schedule.instants.size() &&
                   schedule.instants[schedule_pos] <= t_next) {
                birth_sizes.push_back(schedule.entry_sizes[schedule_pos]);
                ++schedule_pos;
                ++births;
            }
        } else {
            const double intensity = coupled_intensity(pop, config.birth.kappa);
            births = coupled_stream.poisson(intensity * dt);
            for (std::uint64_t b = 0; b < births; ++b)
                birth_sizes.push_back(
                    sample_entry_size(config.birth.entry, coupled_stream, s_min));
        }

        // (2) advance every live firm
        prev_sizes.resize(pop.firms.size());
        for (std::size_t i = 0; i < pop.firms.size(); ++i) {
            Firm& f = pop.firms[i];
            prev_sizes[i] = f.size;
            if (is_gbm) {
                f.size *= std::exp(gbm_drift + gbm_shock * growth[i].normal());
            } else {
                f.size = generic_step(f.size, config.diffusion, dt, growth[i].normal(),
                                      &growth[i], s_min);
            }
            if (!std::isfinite(f.size))
                throw NonFiniteState("firm size became non-finite during simulation");
        }

        // (3) exits (bridge-corrected absorption, then hazard)
        const std::uint64_t absorbed_before = pop.absorbed_count;
        const std::uint64_t sudden_before = pop.sudden_death_count;
        apply_exits(pop, prev_sizes, t_next, dt, config.exit, config.diffusion,
                    exits_stream, result.lifespans);

        // drop dead firms, keeping the growth streams aligned
        std::size_t keep = 0;
        for (std::size_t i = 0; i < pop.firms.size(); ++i) {
            if (!pop.firms[i].alive) continue;
            if (keep != i) {
                pop.firms[keep] = pop.firms[i];
                growth[keep] = growth[i];
            }
            ++keep;
        }
        pop.firms.resize(keep);
        growth.erase(growth.begin() + static_cast<std::ptrdiff_t>(keep), growth.end());

        // append the newborns
        for (double size : birth_sizes) {
            Firm f;
            f.id = next_id++;
            f.size = size;
            f.birth_time = t_next;
            pop.firms.push_back(f);
            growth.push_back(growth_base.fork(f.id));
        }
        pop.born_count += births;
        pop.total_value = pop.recompute_total_value();

        // (4) M&A events
        if (config.ma.active()) {
            const std::size_t before = pop.firms.size();
            apply_ma(pop, dt, config.ma, ma_stream, next_id, &result.ma_events);
            for (std::size_t i = before; i < pop.firms.size(); ++i)
                growth.push_back(growth_base.fork(pop.firms[i].id));  // spin-off children
            std::size_t live_scan = 0;
            for (std::size_t i = 0; i < pop.firms.size(); ++i) {
                if (!pop.firms[i].alive) {
                    // firms removed by a merger still get a lifespan record
                    result.lifespans.push_back({pop.firms[i].id,
                                                t_next - pop.firms[i].birth_time,
                                                pop.firms[i].exit_cause});
                    continue;
                }
                if (live_scan != i) {
                    pop.firms[live_scan] = pop.firms[i];
                    growth[live_scan] = growth[i];
                }
                ++live_scan;
            }
            pop.firms.resize(live_scan);
            growth.erase(growth.begin() + static_cast<std::ptrdiff_t>(live_scan), growth.end());
        }

        if (pop.live_count() > config.live_count_cap)
            throw PopulationExplosion("live firm count exceeded the configured cap");

        FlowPoint fp;
        fp.t = t_next;
        fp.births = births;
        fp.absorptions = pop.absorbed_count - absorbed_before;
        fp.sudden_deaths = pop.sudden_death_count - sudden_before;
        fp.live = pop.live_count();
        fp.total_value = pop.total_value;
        result.flow_series.push_back(fp);

        while (snapshot_pos < snapshot_times.size() &&
               snapshot_times[snapshot_pos] <= t_next + 1e-12) {
            Snapshot snap;
            snap.time = t_next;
            snap.sizes.reserve(pop.firms.size());
            for (const auto& f : pop.firms) snap.sizes.push_back(f.size);
            result.snapshots.push_back(std::move(snap));
            ++snapshot_pos;
        }
    }

    // survivors at the horizon are censored, never dropped
    for (const auto& f : pop.firms)
        result.lifespans.push_back({f.id, config.horizon - f.birth_time, ExitCause::Censored});
    pop.time = config.horizon;
    return result;
}

SimulationResult run(const EconomyConfig& config) {
    SimulationResult merged = run_replica(config, 0);
    for (std::uint64_t r = 1; r < config.replicas; ++r) {
        SimulationResult next = run_replica(config, r);
        auto& pop = merged.final_population;
        pop.firms.insert(pop.firms.end(), next.final_population.firms.begin(),
                         next.final_population.firms.end());
        pop.total_value += next.final_population.total_value;
        pop.born_count += next.final_population.born_count;
        pop.absorbed_count += next.final_population.absorbed_count;
        pop.sudden_death_count += next.final_population.sudden_death_count;
        pop.merged_count += next.final_population.merged_count;
        pop.spinoff_count += next.final_population.spinoff_count;
        for (std::size_t i = 0; i < merged.snapshots.size() && i < next.snapshots.size(); ++i)
            merged.snapshots[i].sizes.insert(merged.snapshots[i].sizes.end(),
                                             next.snapshots[i].sizes.begin(),
                                             next.snapshots[i].sizes.end());
        merged.lifespans.insert(merged.lifespans.end(), next.lifespans.begin(),
                                next.lifespans.end());
        for (std::size_t i = 0; i < merged.flow_series.size(); ++i) {
            merged.flow_series[i].births += next.flow_series[i].births;
            merged.flow_series[i].absorptions += next.flow_series[i].absorptions;
            merged.flow_series[i].sudden_deaths += next.flow_series[i].sudden_deaths;
            merged.flow_series[i].live += next.flow_series[i].live;
            merged.flow_series[i].total_value += next.flow_series[i].total_value;
        }
        merged.ma_events.insert(merged.ma_events.end(), next.ma_events.begin(),
                                next.ma_events.end());
    }
    return merged;
}

std::optional<double> steady_state_detect(const std::vector<FlowPoint>& flow_series) {
    if (flow_series.empty()) throw std::invalid_argument("empty flow series");
    const std::size_t n = flow_series.size();
    const std::size_t window = std::max<std::size_t>(n / 5, 3);

    for (std::size_t end = window; end <= n; ++end) {
        const std::size_t begin = end - window;
        double mx = 0, my = 0;
        for (std::size_t i = begin; i < end; ++i) {
            mx += flow_series[i].t;
            my += static_cast<double>(flow_series[i].live);
        }
        mx /= static_cast<double>(window);
        my /= static_cast<double>(window);
        double sxy = 0, sxx = 0;
        for (std::size_t i = begin; i < end; ++i) {
            const double dx = flow_series[i].t - mx;
            sxy += dx * (static_cast<double>(flow_series[i].live) - my);
            sxx += dx * dx;
        }
        const double slope = sxy / sxx;
        // residual variance and lag-1 autocorrelation
        double ss_res = 0.0, lag = 0.0, prev_res = 0.0, ss_lag = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const double res =
                static_cast<double>(flow_series[i].live) - my - slope * (flow_series[i].t - mx);
            if (i > begin) {
                lag += res * prev_res;
                ss_lag += prev_res * prev_res;
            }
            ss_res += res * res;
            prev_res = res;
        }
        const double var_res = ss_res / static_cast<double>(window - 2);
        double se = std::sqrt(var_res / sxx);
        const double rho = (ss_lag > 0.0) ? std::clamp(lag / ss_lag, -0.99, 0.99) : 0.0;
        se *= std::sqrt((1.0 + rho) / (1.0 - rho));  // AR(1) inflation
        if (std::fabs(slope) <= 1.96 * se) return flow_series[end - 1].t;
    }
    return std::nullopt;
}

std::vector<double> pooled_sizes(const SimulationResult& result, double from_time) {
    std::vector<double> pooled;
    for (const auto& snap : result.snapshots)
        if (snap.time >= from_time)
            pooled.insert(pooled.end(), snap.sizes.begin(), snap.sizes.end());
    return pooled;
}

}  // namespace zipflab
