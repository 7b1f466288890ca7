#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace zipflab {

// Units: time in years, rates per year, sizes in one arbitrary
// asset-value unit.  Every module follows this convention.

// Continuous proportional-growth law: dS = mu*S dt + sigma*S dW.
struct GibratParams {
    double mu = 0.0;     // mean proportional growth rate, per year
    double sigma = 0.2;  // proportional volatility, per sqrt-year

    // Drift of log size; the quantity that decides decay vs growth.
    double log_drift() const { return mu - 0.5 * sigma * sigma; }
};

// Monotone coordinate map S = omega(Y) with analytic derivatives, used by
// the omega-transform diffusion and by the analytics module (which needs
// omega' and omega'' for the induced drift and volatility).
struct OmegaMap {
    std::function<double(double)> forward;   // y -> s, strictly increasing
    std::function<double(double)> inverse;   // s -> y
    std::function<double(double)> d1;        // omega'(y)
    std::function<double(double)> d2;        // omega''(y)
};

struct DiffusionSpec {
    enum class Kind { GBM, ConstantVolatility, OmegaTransform, Custom };

    Kind kind = Kind::GBM;

    GibratParams gbm;  // GBM; also the latent log-coordinate law for OmegaTransform

    // ConstantVolatility: dS = drift dt + vol dW
    double drift = 0.0;  // absolute, per year
    double vol = 1.0;    // absolute, per sqrt-year

    OmegaMap omega;  // OmegaTransform only

    // Custom: dS = drift_fn(S) dt + vol_fn(S) dW
    std::function<double(double)> drift_fn;
    std::function<double(double)> vol_fn;

    // Per-size drift and volatility of the process, whatever the kind.
    double drift_at(double s) const;
    double vol_at(double s) const;

    static DiffusionSpec make_gbm(GibratParams p);
    static DiffusionSpec make_constant_volatility(double drift, double vol);
    static DiffusionSpec make_omega(GibratParams latent, OmegaMap omega);
    static DiffusionSpec make_custom(std::function<double(double)> drift_fn,
                                     std::function<double(double)> vol_fn);
    // Proportional volatility above a crossover scale, bounded drift below:
    // vol(s) = sigma*sqrt(s^2 + s_c^2), drift(s) = mu*s_c*s/(s_c + s).
    static DiffusionSpec make_semi_gbm(double mu, double sigma, double crossover);
};

struct EntrySizeLaw {
    enum class Kind { PointMass, LogNormal };
    Kind kind = Kind::PointMass;
    double s0 = 1.0;      // point mass value, or lognormal median
    double log_sd = 0.0;  // lognormal only
};

struct BirthLaw {
    enum class Kind { Constant, Exponential, Coupled };
    Kind kind = Kind::Constant;
    double nu0 = 1.0;    // firms per year (Constant/Exponential)
    double d = 0.0;      // exponential growth rate of the birth rate, per year
    double kappa = 0.0;  // Coupled: births per year per unit total value
    EntrySizeLaw entry;
};

struct HazardLaw {
    enum class Kind { None, Constant, SizeDependent, AgeDependent };
    Kind kind = Kind::None;
    double h = 0.0;                          // Constant
    std::function<double(double)> h_fn;      // size -> rate, or age -> rate
    double h_max = 0.0;                      // bound used for thinning

    double rate(double size, double age) const;
    double bound() const;
};

struct ExitLaw {
    std::optional<double> s_min;  // absorbing minimum asset level
    HazardLaw hazard;
};

struct MAKernel {
    enum class MergerKind { Off, Constant, Multiplicative };
    enum class SpinoffKind { Off, Constant };

    MergerKind merger_kind = MergerKind::Off;
    double lambda_m = 0.0;  // per pair per year (Constant), or scale of S_i*S_j/V_scale^2
    double v_scale = 1.0;   // Multiplicative only

    SpinoffKind spinoff_kind = SpinoffKind::Off;
    double lambda_f = 0.0;  // per firm per year
    double u_min = 0.25;    // fragment fraction drawn uniform on (u_min, u_max)
    double u_max = 0.75;

    bool active() const {
        return merger_kind != MergerKind::Off || spinoff_kind != SpinoffKind::Off;
    }
};

struct EconomyConfig {
    DiffusionSpec diffusion;
    BirthLaw birth;
    ExitLaw exit;
    MAKernel ma;
    double horizon = 100.0;  // years
    double dt = 0.01;        // years
    std::uint64_t seed = 0;
    std::uint64_t replicas = 1;
    std::uint64_t initial_firms = 0;  // firms alive at t=0, all at initial_size
    double initial_size = 1.0;
    std::vector<double> snapshot_times;  // empty -> default schedule
    std::uint64_t live_count_cap = 10'000'000;
    double intensity_cap = 1e9;  // max expected births per horizon
};

enum class ExitCause { None, Absorbed, SuddenDeath, Merged, Censored };

struct Firm {
    std::uint64_t id = 0;
    double size = 1.0;
    double birth_time = 0.0;
    double age = 0.0;
    bool alive = true;
    ExitCause exit_cause = ExitCause::None;
};

struct Population {
    double time = 0.0;
    std::vector<Firm> firms;  // live firms only; the dead are counted below
    double total_value = 0.0;
    std::uint64_t born_count = 0;
    std::uint64_t absorbed_count = 0;
    std::uint64_t sudden_death_count = 0;
    std::uint64_t merged_count = 0;    // firms removed by mergers
    std::uint64_t spinoff_count = 0;   // firms added by spin-offs

    std::uint64_t live_count() const { return firms.size(); }
    double recompute_total_value() const;
};

// Returns the list of invariant violations; empty iff the config is usable.
// Total: never throws on finite input.
std::vector<std::string> validate(const EconomyConfig& config);

const char* to_string(ExitCause cause);

}  // namespace zipflab
