#include "zipflab/gbm.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>

#include "zipflab/errors.hpp"

namespace zipflab {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_quantile(double q) {
    return std::sqrt(2.0) * boost::math::erf_inv(2.0 * q - 1.0);
}

double gbm_step(double s, const GibratParams& params, double dt, double z) {
    const double a = params.log_drift();
    return s * std::exp(a * dt + params.sigma * std::sqrt(dt) * z);
}

double generic_step(double s, const DiffusionSpec& spec, double dt, double z,
                    RngStream* retry_stream, double floor) {
    switch (spec.kind) {
        case DiffusionSpec::Kind::GBM:
            return gbm_step(s, spec.gbm, dt, z);
        case DiffusionSpec::Kind::OmegaTransform: {
            const double y = spec.omega.inverse(s);
            const double a = spec.gbm.log_drift();
            return spec.omega.forward(y + a * dt + spec.gbm.sigma * std::sqrt(dt) * z);
        }
        case DiffusionSpec::Kind::ConstantVolatility:
        case DiffusionSpec::Kind::Custom:
            break;
    }

    // Euler-Maruyama for the general kinds
    double next = s + spec.drift_at(s) * dt + spec.vol_at(s) * std::sqrt(dt) * z;
    if (!std::isfinite(next)) throw NonFiniteState("generic_step produced a non-finite size");
    if (next <= 0.0) {
        if (floor > 0.0) return floor * (1.0 + 1e-12);
        // no exit level: retry with half steps until the move stays positive
        if (retry_stream != nullptr) {
            double cur = s;
            double half = 0.5 * dt;
            for (int attempt = 0; attempt < 64; ++attempt) {
                const double trial = cur + spec.drift_at(cur) * half +
                                     spec.vol_at(cur) * std::sqrt(half) * retry_stream->normal();
                if (trial > 0.0) return trial;
                half *= 0.5;
            }
        }
        throw NonFiniteState("Euler-Maruyama step left the positive domain");
    }
    return next;
}

double lognormal_pdf(double s, double t, double s0, const GibratParams& params) {
    const double a = params.log_drift();
    const double var = params.sigma * params.sigma * t;
    const double u = std::log(s / s0) - a * t;
    return std::exp(-u * u / (2.0 * var)) / (s * std::sqrt(2.0 * M_PI * var));
}

double lognormal_cdf(double s, double t, double s0, const GibratParams& params) {
    const double a = params.log_drift();
    return normal_cdf((std::log(s / s0) - a * t) / (params.sigma * std::sqrt(t)));
}

double quantile_curve(double q, double t, double s0, const GibratParams& params) {
    if (t == 0.0) return s0;
    const double a = params.log_drift();
    return s0 * std::exp(a * t + params.sigma * std::sqrt(t) * normal_quantile(q));
}

double max_ccdf_decaying(double s, double s0, const GibratParams& params) {
    const double a = params.log_drift();
    if (a >= 0.0) throw NotDecaying("max_ccdf_decaying requires log-drift a < 0");
    const double exponent = 2.0 * std::fabs(a) / (params.sigma * params.sigma);
    if (s <= s0) return 1.0;
    return std::pow(s0 / s, exponent);
}

PathSample time_reversal_check(const PathSample& path) {
    const std::size_t n = path.times.size();
    PathSample reversed;
    reversed.times = path.times;
    reversed.values.resize(n);
    const double s0 = path.values.front();
    const double sT = path.values.back();
    const double T = path.times.back();
    // V(t) = S(T) * s0 / S(T - t); grid assumed uniform so T - t lands on it
    for (std::size_t i = 0; i < n; ++i) {
        (void)T;
        reversed.values[i] = sT * s0 / path.values[n - 1 - i];
    }
    return reversed;
}

PathSample simulate_path(double s0, const DiffusionSpec& spec, double dt,
                         std::size_t n_steps, RngStream& stream, double floor) {
    PathSample path;
    path.times.reserve(n_steps + 1);
    path.values.reserve(n_steps + 1);
    double s = s0;
    path.times.push_back(0.0);
    path.values.push_back(s);
    for (std::size_t i = 1; i <= n_steps; ++i) {
        s = generic_step(s, spec, dt, stream.normal(), &stream, floor);
        path.times.push_back(static_cast<double>(i) * dt);
        path.values.push_back(s);
    }
    return path;
}

}  // namespace zipflab
