#include "zipflab/types.hpp"

#include <cmath>

namespace zipflab {

double DiffusionSpec::drift_at(double s) const {
    switch (kind) {
        case Kind::GBM:
            return gbm.mu * s;
        case Kind::ConstantVolatility:
            return drift;
        case Kind::OmegaTransform: {
            const double y = omega.inverse(s);
            const double a = gbm.log_drift();
            return a * omega.d1(y) + 0.5 * gbm.sigma * gbm.sigma * omega.d2(y);
        }
        case Kind::Custom:
            return drift_fn(s);
    }
    return 0.0;
}

double DiffusionSpec::vol_at(double s) const {
    switch (kind) {
        case Kind::GBM:
            return gbm.sigma * s;
        case Kind::ConstantVolatility:
            return vol;
        case Kind::OmegaTransform:
            return gbm.sigma * omega.d1(omega.inverse(s));
        case Kind::Custom:
            return vol_fn(s);
    }
    return 0.0;
}

DiffusionSpec DiffusionSpec::make_gbm(GibratParams p) {
    DiffusionSpec spec;
    spec.kind = Kind::GBM;
    spec.gbm = p;
    return spec;
}

DiffusionSpec DiffusionSpec::make_constant_volatility(double drift, double vol) {
    DiffusionSpec spec;
    spec.kind = Kind::ConstantVolatility;
    spec.drift = drift;
    spec.vol = vol;
    return spec;
}

DiffusionSpec DiffusionSpec::make_omega(GibratParams latent, OmegaMap omega) {
    DiffusionSpec spec;
    spec.kind = Kind::OmegaTransform;
    spec.gbm = latent;
    spec.omega = std::move(omega);
    return spec;
}

DiffusionSpec DiffusionSpec::make_custom(std::function<double(double)> drift_fn,
                                         std::function<double(double)> vol_fn) {
    DiffusionSpec spec;
    spec.kind = Kind::Custom;
    spec.drift_fn = std::move(drift_fn);
    spec.vol_fn = std::move(vol_fn);
    return spec;
}

DiffusionSpec DiffusionSpec::make_semi_gbm(double mu, double sigma, double crossover) {
    const double sc = crossover;
    return make_custom(
        [mu, sc](double s) { return mu * sc * s / (sc + s); },
        [sigma, sc](double s) { return sigma * std::sqrt(s * s + sc * sc); });
}

double HazardLaw::rate(double size, double age) const {
    switch (kind) {
        case Kind::None:
            return 0.0;
        case Kind::Constant:
            return h;
        case Kind::SizeDependent:
            return h_fn(size);
        case Kind::AgeDependent:
            return h_fn(age);
    }
    return 0.0;
}

double HazardLaw::bound() const {
    switch (kind) {
        case Kind::None:
            return 0.0;
        case Kind::Constant:
            return h;
        default:
            return h_max;
    }
}

double Population::recompute_total_value() const {
    double sum = 0.0;
    for (const auto& f : firms)
        if (f.alive) sum += f.size;
    return sum;
}

namespace {

bool finite(double x) { return std::isfinite(x); }

}  // namespace

std::vector<std::string> validate(const EconomyConfig& c) {
    std::vector<std::string> v;

    switch (c.diffusion.kind) {
        case DiffusionSpec::Kind::GBM:
        case DiffusionSpec::Kind::OmegaTransform:
            if (!(c.diffusion.gbm.sigma > 0.0)) v.push_back("diffusion.sigma must be > 0");
            if (!finite(c.diffusion.gbm.mu)) v.push_back("diffusion.mu must be finite");
            break;
        case DiffusionSpec::Kind::ConstantVolatility:
            if (!(c.diffusion.vol > 0.0)) v.push_back("diffusion.vol must be > 0");
            if (!finite(c.diffusion.drift)) v.push_back("diffusion.drift must be finite");
            break;
        case DiffusionSpec::Kind::Custom:
            if (!c.diffusion.drift_fn || !c.diffusion.vol_fn)
                v.push_back("diffusion.custom requires drift_fn and vol_fn");
            break;
    }

    if (c.birth.nu0 < 0.0 || !finite(c.birth.nu0)) v.push_back("birth.nu0 must be >= 0");
    if (c.birth.kind == BirthLaw::Kind::Coupled && c.birth.kappa < 0.0)
        v.push_back("birth.kappa must be >= 0");
    if (!(c.birth.entry.s0 > 0.0)) v.push_back("birth.entry.s0 must be > 0");
    if (c.birth.entry.kind == EntrySizeLaw::Kind::LogNormal && c.birth.entry.log_sd < 0.0)
        v.push_back("birth.entry.log_sd must be >= 0");

    if (c.exit.s_min) {
        if (*c.exit.s_min < 0.0) v.push_back("exit.s_min must be >= 0");
        if (c.birth.entry.s0 <= *c.exit.s_min) v.push_back("entry size below exit level");
        if (c.initial_firms > 0 && c.initial_size <= *c.exit.s_min)
            v.push_back("initial size below exit level");
    }
    switch (c.exit.hazard.kind) {
        case HazardLaw::Kind::Constant:
            if (c.exit.hazard.h < 0.0) v.push_back("exit.hazard.h must be >= 0");
            break;
        case HazardLaw::Kind::SizeDependent:
        case HazardLaw::Kind::AgeDependent:
            if (!c.exit.hazard.h_fn) v.push_back("exit.hazard requires h_fn");
            if (!(c.exit.hazard.h_max > 0.0))
                v.push_back("exit.hazard.h_max bound must be > 0 for state-dependent hazard");
            break;
        case HazardLaw::Kind::None:
            break;
    }

    if (c.ma.lambda_m < 0.0) v.push_back("ma.lambda_m must be >= 0");
    if (c.ma.lambda_f < 0.0) v.push_back("ma.lambda_f must be >= 0");
    if (c.ma.spinoff_kind != MAKernel::SpinoffKind::Off &&
        !(0.0 < c.ma.u_min && c.ma.u_min <= c.ma.u_max && c.ma.u_max < 1.0))
        v.push_back("ma fragment fractions require 0 < u_min <= u_max < 1");

    if (!(c.dt > 0.0) || !finite(c.dt)) v.push_back("dt must be > 0");
    if (!(c.horizon >= c.dt) || !finite(c.horizon)) v.push_back("horizon must be >= dt");
    if (c.replicas < 1) v.push_back("replicas must be >= 1");
    if (!(c.initial_size > 0.0)) v.push_back("initial_size must be > 0");
    for (double t : c.snapshot_times)
        if (!(t >= 0.0 && t <= c.horizon)) {
            v.push_back("snapshot_times must lie in [0, horizon]");
            break;
        }

    return v;
}

const char* to_string(ExitCause cause) {
    switch (cause) {
        case ExitCause::None: return "None";
        case ExitCause::Absorbed: return "Absorbed";
        case ExitCause::SuddenDeath: return "SuddenDeath";
        case ExitCause::Merged: return "Merged";
        case ExitCause::Censored: return "Censored";
    }
    return "None";
}

}  // namespace zipflab
