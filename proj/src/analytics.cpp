#include "zipflab/analytics.hpp"

#include <cmath>
#include <stdexcept>

#include "zipflab/errors.hpp"

namespace zipflab {

namespace {

// (exp(lambda*x) - 1)/lambda, stable through lambda -> 0
double expm1_over(double lambda, double x) {
    if (std::fabs(lambda * x) < 1e-8) return x * (1.0 + 0.5 * lambda * x);
    return std::expm1(lambda * x) / lambda;
}

// Bernoulli function q/(e^q - 1) of the exponential fitting scheme
double bernoulli(double q) {
    if (std::fabs(q) < 1e-10) return 1.0 - 0.5 * q;
    if (q > 500.0) return q * std::exp(-q);
    return q / std::expm1(q);
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n + 1);
    const double step = std::log(hi / lo) / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
    return g;
}

}  // namespace

double tail_exponent(double a, double sigma, double h, double d) {
    if (!(sigma > 0.0)) throw std::invalid_argument("tail_exponent requires sigma > 0");
    const double s2 = sigma * sigma;
    const double source = h + d;
    if (source == 0.0) {
        if (a >= 0.0)
            throw NoStationaryTail("h + d = 0 requires a < 0 for a stationary tail");
        return -2.0 * a / s2;
    }
    const double disc = a * a + 2.0 * s2 * source;
    if (disc < 0.0) throw NoStationaryTail("characteristic polynomial has no real root");
    const double m = (-a + std::sqrt(disc)) / s2;
    if (!(m > 0.0)) throw NoStationaryTail("characteristic polynomial has no positive root");
    return m;
}

DensitySolution gbm_steady_density(const GibratParams& params, double nu0, double s0,
                                   double s_min, double h, std::size_t n, double s_max) {
    if (!(s_min > 0.0) || !(s0 > s_min))
        throw std::invalid_argument("gbm_steady_density requires 0 < s_min < s0");
    const double a = params.log_drift();
    const double s2 = params.sigma * params.sigma;
    double m;
    try {
        m = tail_exponent(a, params.sigma, h, 0.0);
    } catch (const NoStationaryTail& e) {
        throw NoStationaryRegime(e.what());
    }

    // Log coordinate x = ln(s/s_min); homogeneous exponents of
    // (s2/2) g'' - a g' - h g = 0.
    const double r = std::sqrt(a * a + 2.0 * s2 * h);
    const double lam_plus = (a + r) / s2;
    const double lam_minus = (a - r) / s2;  // equals -m
    const double x0 = std::log(s0 / s_min);

    const double amp = nu0 * std::exp(-lam_plus * x0) / r;  // inner amplitude
    const double outer = amp * (std::exp(lam_plus * x0) - std::exp(lam_minus * x0)) *
                         std::exp(-lam_minus * x0);

    if (s_max <= 0.0) s_max = s0 * 1e4;
    DensitySolution sol;
    sol.grid = log_grid(s_min, s_max, n);
    sol.density.resize(sol.grid.size());
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double x = std::log(sol.grid[i] / s_min);
        const double g = (x <= x0)
                             ? amp * (std::exp(lam_plus * x) - std::exp(lam_minus * x))
                             : outer * std::exp(lam_minus * x);
        sol.density[i] = g / sol.grid[i];
    }
    sol.tail_exponent = m;
    // total count: analytic integral of g over [0, inf)
    const double inner_mass = amp * (expm1_over(lam_plus, x0) - expm1_over(lam_minus, x0));
    const double outer_mass = -outer * std::exp(lam_minus * x0) / lam_minus;
    sol.normalization = inner_mass + outer_mass;
    return sol;
}

ZeroExitDensity zero_exit_density(const GibratParams& params, double nu0, double s0,
                                  double h, std::size_t n, double span) {
    const double a = params.log_drift();
    const double s2 = params.sigma * params.sigma;
    if (!(h > 0.0))
        throw NotIntegrable("zero exit level requires h > 0 for an integrable lower branch");
    const double r = std::sqrt(a * a + 2.0 * s2 * h);
    const double lam_plus = (a + r) / s2;   // lower branch, > 0
    const double lam_minus = (a - r) / s2;  // upper branch, < 0
    const double amp = nu0 / r;

    ZeroExitDensity sol;
    sol.m_plus = -lam_minus;  // tail exponent above s0, = tail_exponent(a, sigma, h, 0)
    sol.m_minus = -lam_plus;  // negative root below s0
    sol.grid = log_grid(s0 / span, s0 * span, n);
    sol.density.resize(sol.grid.size());
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double x = std::log(sol.grid[i] / s0);
        const double g = amp * std::exp((x >= 0.0 ? lam_minus : lam_plus) * x);
        sol.density[i] = g / sol.grid[i];
    }
    return sol;
}

namespace {

struct StationarySolve {
    std::vector<double> s;  // node sizes
    std::vector<double> u;  // density per unit log size
    double flux_residual = 0.0;
};

// One tridiagonal solve of the stationary problem in x = ln(s/s_min).
StationarySolve solve_once(const DiffusionSpec& spec, double nu0, double s0,
                           double s_min, const HazardLaw& hazard, double d,
                           double s_max, std::size_t n) {
    const double X = std::log(s_max / s_min);
    const double dx = X / static_cast<double>(n);

    std::vector<double> s(n + 1), alpha(n + 1), diff(n + 1), kill(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        s[i] = s_min * std::exp(dx * static_cast<double>(i));
        const double mu_s = spec.drift_at(s[i]);
        const double sig_s = spec.vol_at(s[i]);
        const double beta2 = (sig_s / s[i]) * (sig_s / s[i]);
        alpha[i] = mu_s / s[i] - 0.5 * beta2;  // log-coordinate drift
        diff[i] = 0.5 * beta2;
        kill[i] = hazard.rate(s[i], 0.0) + d;
    }

    // source deposited linearly onto the two nodes bracketing x0
    std::vector<double> src(n + 1, 0.0);
    const double x0 = std::log(s0 / s_min);
    const double pos = x0 / dx;
    const auto j = static_cast<std::size_t>(pos);
    const double w = pos - static_cast<double>(j);
    src[j] += nu0 * (1.0 - w) / dx;
    if (j + 1 <= n) src[j + 1] += nu0 * w / dx;

    // face fluxes F = v u - (D u)' via exponential fitting; the
    // derivative of D folds into the face drift
    std::vector<double> lower(n + 1, 0.0), diag(n + 1, 0.0), upper(n + 1, 0.0),
        rhs(n + 1, 0.0);
    std::vector<double> face_D(n), face_Bm(n), face_Bp(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double Df = 0.5 * (diff[i] + diff[i + 1]);
        const double v = 0.5 * (alpha[i] + alpha[i + 1]) - (diff[i + 1] - diff[i]) / dx;
        const double q = v * dx / Df;
        face_D[i] = Df;
        face_Bm[i] = bernoulli(-q);
        face_Bp[i] = bernoulli(q);
    }

    for (std::size_t i = 1; i < n; ++i) {
        const double cf = face_D[i] / (dx * dx);      // face i+1/2
        const double cg = face_D[i - 1] / (dx * dx);  // face i-1/2
        lower[i] = -cg * face_Bm[i - 1];
        diag[i] = cf * face_Bm[i] + cg * face_Bp[i - 1] + kill[i];
        upper[i] = -cf * face_Bp[i];
        rhs[i] = src[i];
    }
    // absorbing boundary
    diag[0] = 1.0;
    rhs[0] = 0.0;
    // upper boundary: local characteristic decay u_n = exp(lam * dx) u_{n-1}
    {
        const double D = diff[n];
        const double disc = alpha[n] * alpha[n] + 4.0 * D * kill[n];
        const double lam = (alpha[n] - std::sqrt(std::max(disc, 0.0))) / (2.0 * D);
        lower[n] = -std::exp(lam * dx);
        diag[n] = 1.0;
        rhs[n] = 0.0;
    }

    // Thomas algorithm
    std::vector<double> cp(n + 1), dp(n + 1);
    if (diag[0] == 0.0) throw SingularSystem("zero pivot in stationary solve");
    cp[0] = upper[0] / diag[0];
    dp[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i <= n; ++i) {
        const double denom = diag[i] - lower[i] * cp[i - 1];
        if (denom == 0.0 || !std::isfinite(denom))
            throw SingularSystem("singular tridiagonal system in stationary solve");
        cp[i] = (i < n) ? upper[i] / denom : 0.0;
        dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / denom;
    }
    StationarySolve out;
    out.u.assign(n + 1, 0.0);
    out.u[n] = dp[n];
    for (std::size_t i = n; i-- > 0;) out.u[i] = dp[i] - cp[i] * out.u[i + 1];
    out.s = std::move(s);

    // stationarity check: killing + net boundary outflow must equal nu0
    auto face_flux = [&](std::size_t i) {
        return (face_D[i] / dx) * (face_Bm[i] * out.u[i] - face_Bp[i] * out.u[i + 1]);
    };
    double killed = 0.0;
    for (std::size_t i = 1; i < n; ++i) killed += kill[i] * out.u[i] * dx;
    const double absorbed = -face_flux(0);
    const double leaked = face_flux(n - 1);
    out.flux_residual = std::fabs(killed + absorbed + leaked - nu0) / nu0;
    return out;
}

// least-squares tail slope of ln f vs ln s over [lo, hi]
std::pair<double, double> fit_tail(const std::vector<double>& s,
                                   const std::vector<double>& f, double lo, double hi) {
    double mx = 0, my = 0;
    std::size_t cnt = 0;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < lo || s[i] > hi || !(f[i] > 0.0)) continue;
        xs.push_back(std::log(s[i]));
        ys.push_back(std::log(f[i]));
        mx += xs.back();
        my += ys.back();
        ++cnt;
    }
    if (cnt < 8) throw GridTooCoarse("too few usable points in the tail-fit window");
    mx /= static_cast<double>(cnt);
    my /= static_cast<double>(cnt);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < cnt; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    const double r2 = (syy > 0.0) ? sxy * sxy / (sxx * syy) : 0.0;
    return {-slope - 1.0, r2};  // f ~ s^-(1+m)
}

}  // namespace

DensitySolution solve_stationary(const DiffusionSpec& spec, const BirthLaw& birth,
                                 const ExitLaw& exit, const StationaryGridConfig& grid,
                                 double d) {
    if (birth.kind != BirthLaw::Kind::Constant)
        throw std::invalid_argument("solve_stationary requires a Constant birth law");
    if (!exit.s_min || !(*exit.s_min > 0.0))
        throw std::invalid_argument("solve_stationary requires an absorbing exit level");
    if (exit.hazard.kind == HazardLaw::Kind::AgeDependent)
        throw std::invalid_argument("age-dependent hazards have no stationary size density");
    const double s0 = birth.entry.s0;
    const double s_min = *exit.s_min;
    const double s_max = (grid.s_max > 0.0) ? grid.s_max : s0 * 1e6;

    auto coarse = solve_once(spec, birth.nu0, s0, s_min, exit.hazard, d, s_max, grid.n);

    DensitySolution sol;
    sol.grid = coarse.s;
    sol.density.resize(coarse.u.size());
    double mass = 0.0;
    const double dx = std::log(s_max / s_min) / static_cast<double>(grid.n);
    for (std::size_t i = 0; i < coarse.u.size(); ++i) {
        sol.density[i] = coarse.u[i] / coarse.s[i];
        mass += coarse.u[i] * dx * ((i == 0 || i + 1 == coarse.u.size()) ? 0.5 : 1.0);
    }
    sol.normalization = mass;
    sol.flux_residual = coarse.flux_residual;

    auto [m_fit, r2] = fit_tail(sol.grid, sol.density, grid.fit_lo * s_max,
                                grid.fit_hi * s_max);
    sol.fitted_tail = m_fit;
    sol.fit_r_squared = r2;
    sol.tail_exponent = m_fit;

    if (grid.refine_check) {
        auto fine = solve_once(spec, birth.nu0, s0, s_min, exit.hazard, d, s_max, 2 * grid.n);
        std::vector<double> fine_f(fine.u.size());
        for (std::size_t i = 0; i < fine.u.size(); ++i) fine_f[i] = fine.u[i] / fine.s[i];
        auto [m_fine, r2_fine] =
            fit_tail(fine.s, fine_f, grid.fit_lo * s_max, grid.fit_hi * s_max);
        (void)r2_fine;
        if (std::fabs(m_fine - m_fit) > grid.refine_tolerance * std::max(1.0, std::fabs(m_fit)))
            throw GridTooCoarse("fitted tail exponent moves under grid refinement");
    }
    return sol;
}

}  // namespace zipflab
