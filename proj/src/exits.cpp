#include "zipflab/exits.hpp"

#include <cmath>
#include <limits>

#include "zipflab/errors.hpp"
#include "zipflab/gbm.hpp"

namespace zipflab {

double first_passage_pdf(double delta, double a, double sigma, double t) {
    const double var = sigma * sigma * t;
    const double u = delta + a * t;
    return delta / (sigma * std::sqrt(2.0 * M_PI * t * t * t)) *
           std::exp(-u * u / (2.0 * var));
}

double first_passage_cdf(double delta, double a, double sigma, double t) {
    if (t <= 0.0) return 0.0;
    const double sq = sigma * std::sqrt(t);
    return normal_cdf((-delta - a * t) / sq) +
           std::exp(-2.0 * a * delta / (sigma * sigma)) * normal_cdf((-delta + a * t) / sq);
}

double hitting_probability(double delta, double a, double sigma) {
    if (a <= 0.0) return 1.0;
    return std::exp(-2.0 * a * delta / (sigma * sigma));
}

double mean_lifespan(double delta, double a, double sigma) {
    (void)sigma;
    if (a >= 0.0) throw InfiniteMean("mean lifespan diverges unless the log-drift is negative");
    return delta / -a;
}

std::optional<double> sample_sudden_death(
    const HazardLaw& hazard,
    const std::function<std::pair<double, double>(double)>& state_at,
    double t_max, RngStream& stream) {
    if (hazard.kind == HazardLaw::Kind::None) return std::nullopt;
    if (hazard.kind == HazardLaw::Kind::Constant) {
        if (hazard.h <= 0.0) return std::nullopt;
        const double t = stream.exponential(hazard.h);
        if (t <= t_max) return t;
        return std::nullopt;
    }
    // thinning against the hazard bound along the path
    const double h_max = hazard.bound();
    double t = 0.0;
    while (true) {
        t += stream.exponential(h_max);
        if (t > t_max) return std::nullopt;
        const auto [size, age] = state_at(t);
        if (stream.uniform() * h_max <= hazard.rate(size, age)) return t;
    }
}

namespace {

// Per-step Gaussian log dynamics make the bridge crossing probability
// exact; other kinds fall back to a plain threshold check.
bool has_gaussian_log_step(const DiffusionSpec& spec) {
    return spec.kind == DiffusionSpec::Kind::GBM ||
           spec.kind == DiffusionSpec::Kind::OmegaTransform;
}

}  // namespace

void apply_exits(Population& population, const std::vector<double>& prev_sizes,
                 double t_next, double dt, const ExitLaw& exit,
                 const DiffusionSpec& spec, RngStream& stream,
                 std::vector<LifespanRecord>& lifespans) {
    const bool bridge = has_gaussian_log_step(spec);
    const double sigma = spec.gbm.sigma;  // latent volatility for GBM/Omega
    // beyond this size the bridge crossing probability is < exp(-72);
    // the shortcut is only valid for plain GBM log coordinates
    const double bridge_skip =
        (exit.s_min && spec.kind == DiffusionSpec::Kind::GBM)
            ? *exit.s_min * std::exp(6.0 * sigma * std::sqrt(dt))
            : std::numeric_limits<double>::infinity();

    for (std::size_t i = 0; i < population.firms.size(); ++i) {
        Firm& firm = population.firms[i];
        if (!firm.alive) continue;

        bool absorbed = false;
        if (exit.s_min) {
            const double s_min = *exit.s_min;
            if (firm.size <= s_min) {
                absorbed = true;
            } else if (bridge && prev_sizes[i] > s_min &&
                       (firm.size < bridge_skip || prev_sizes[i] < bridge_skip)) {
                // latent coordinates relative to the barrier
                double x_prev, x_next;
                if (spec.kind == DiffusionSpec::Kind::OmegaTransform) {
                    const double y_min = spec.omega.inverse(s_min);
                    x_prev = spec.omega.inverse(prev_sizes[i]) - y_min;
                    x_next = spec.omega.inverse(firm.size) - y_min;
                } else {
                    x_prev = std::log(prev_sizes[i] / s_min);
                    x_next = std::log(firm.size / s_min);
                }
                const double p_cross =
                    std::exp(-2.0 * x_prev * x_next / (sigma * sigma * dt));
                if (stream.uniform() < p_cross) absorbed = true;
            }
        }

        if (absorbed) {
            firm.alive = false;
            firm.exit_cause = ExitCause::Absorbed;
            firm.size = *exit.s_min;  // exit recorded exactly at the barrier
            firm.age = t_next - firm.birth_time;
            population.absorbed_count += 1;
            lifespans.push_back({firm.id, firm.age, ExitCause::Absorbed});
            continue;
        }

        if (exit.hazard.kind != HazardLaw::Kind::None) {
            const double rate = exit.hazard.rate(firm.size, firm.age);
            if (rate > 0.0 && stream.uniform() < -std::expm1(-rate * dt)) {
                firm.alive = false;
                firm.exit_cause = ExitCause::SuddenDeath;
                firm.age = t_next - firm.birth_time;
                population.sudden_death_count += 1;
                lifespans.push_back({firm.id, firm.age, ExitCause::SuddenDeath});
                continue;
            }
        }

        firm.age = t_next - firm.birth_time;
    }
    population.time = t_next;
    population.total_value = population.recompute_total_value();
}

}  // namespace zipflab
