#include "zipflab/ma.hpp"

#include <algorithm>
#include <cmath>

namespace zipflab {

namespace {

// index of a live firm drawn proportionally to weight(firm)
template <typename WeightFn>
std::size_t weighted_pick(const std::vector<Firm>& firms, WeightFn weight, double total,
                          RngStream& stream, std::size_t skip = SIZE_MAX) {
    double target = stream.uniform() * total;
    std::size_t fallback = SIZE_MAX;
    for (std::size_t i = 0; i < firms.size(); ++i) {
        if (!firms[i].alive || i == skip) continue;
        fallback = i;
        target -= weight(firms[i]);
        if (target <= 0.0) return i;
    }
    return fallback;
}

// firms still alive, robust to a not-yet-compacted population
double alive_count(const std::vector<Firm>& firms) {
    std::size_t n = 0;
    for (const auto& f : firms) n += f.alive ? 1 : 0;
    return static_cast<double>(n);
}

}  // namespace

void apply_ma(Population& pop, double dt, const MAKernel& kernel, RngStream& stream,
              std::uint64_t& next_id, std::vector<MAEvent>* event_log) {
    if (!kernel.active()) return;

    // ---- mergers ----
    if (kernel.merger_kind != MAKernel::MergerKind::Off) {
        const bool multiplicative = kernel.merger_kind == MAKernel::MergerKind::Multiplicative;
        const double live = alive_count(pop.firms);
        double total_rate;
        if (multiplicative) {
            double w = 0.0, w2 = 0.0;
            for (const auto& f : pop.firms)
                if (f.alive) {
                    w += f.size;
                    w2 += f.size * f.size;
                }
            total_rate = kernel.lambda_m * 0.5 * (w * w - w2) / (kernel.v_scale * kernel.v_scale);
        } else {
            total_rate = kernel.lambda_m * 0.5 * live * (live - 1.0);
        }
        const std::uint64_t events = stream.poisson(total_rate * dt);
        for (std::uint64_t e = 0; e < events && alive_count(pop.firms) >= 2.0; ++e) {
            std::size_t i, j;
            if (multiplicative) {
                double w = 0.0;
                for (const auto& f : pop.firms)
                    if (f.alive) w += f.size;
                i = weighted_pick(pop.firms, [](const Firm& f) { return f.size; }, w, stream);
                j = weighted_pick(pop.firms, [](const Firm& f) { return f.size; },
                                  w - pop.firms[i].size, stream, i);
            } else {
                i = weighted_pick(pop.firms, [](const Firm&) { return 1.0; },
                                  alive_count(pop.firms), stream);
                j = weighted_pick(pop.firms, [](const Firm&) { return 1.0; },
                                  alive_count(pop.firms) - 1.0, stream, i);
            }
            if (i == SIZE_MAX || j == SIZE_MAX) break;
            // the larger partner survives and absorbs the other
            if (pop.firms[j].size > pop.firms[i].size) std::swap(i, j);
            Firm& survivor = pop.firms[i];
            Firm& absorbed = pop.firms[j];
            const double merged_size = survivor.size + absorbed.size;
            if (event_log)
                event_log->push_back({pop.time, 'M', survivor.id, absorbed.id, survivor.id, 0,
                                      merged_size, 0.0});
            survivor.size = merged_size;
            absorbed.alive = false;
            absorbed.exit_cause = ExitCause::Merged;
            pop.merged_count += 1;
        }
    }

    // ---- spin-offs ----
    if (kernel.spinoff_kind != MAKernel::SpinoffKind::Off) {
        const double total_rate = kernel.lambda_f * alive_count(pop.firms);
        const std::uint64_t events = stream.poisson(total_rate * dt);
        for (std::uint64_t e = 0; e < events && alive_count(pop.firms) >= 1.0; ++e) {
            const std::size_t i = weighted_pick(pop.firms, [](const Firm&) { return 1.0; },
                                                alive_count(pop.firms), stream);
            if (i == SIZE_MAX) break;
            const double u0 = kernel.u_min + (kernel.u_max - kernel.u_min) * stream.uniform();
            const double u = std::max(u0, 1.0 - u0);  // parent keeps the larger fragment
            const double parent_size = pop.firms[i].size;
            const double kept = u * parent_size;
            Firm child;
            child.id = next_id++;
            child.size = parent_size - kept;  // the two fragments sum exactly
            child.birth_time = pop.time;      // age restarts for the fragment
            child.age = 0.0;
            pop.firms[i].size = kept;
            if (event_log)
                event_log->push_back({pop.time, 'F', pop.firms[i].id, 0, pop.firms[i].id,
                                      child.id, pop.firms[i].size, child.size});
            pop.firms.push_back(child);
            pop.spinoff_count += 1;
        }
    }

    pop.total_value = pop.recompute_total_value();
}

}  // namespace zipflab
