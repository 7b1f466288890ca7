#pragma once

#include <cstddef>
#include <vector>

#include "zipflab/types.hpp"

namespace zipflab {

// Mean number of firms per unit size over a log-spaced grid, plus the
// predicted tail exponent and the expected live count (integral of the
// density).
struct DensitySolution {
    std::vector<double> grid;     // sizes, log-spaced
    std::vector<double> density;  // firms per unit size
    double tail_exponent = 0.0;   // predicted (closed-form) or fitted (numeric)
    double normalization = 0.0;   // expected live count
    // numeric solutions only:
    double fitted_tail = 0.0;     // least-squares slope over the top decades
    double fit_r_squared = 0.0;
    double flux_residual = 0.0;   // |killing + boundary flux - nu0| / nu0
};

// Two-sided power solution when the exit level is zero (no absorbing
// boundary): exponent m_plus above the source, m_minus (negative) below.
struct ZeroExitDensity {
    std::vector<double> grid;
    std::vector<double> density;
    double m_plus = 0.0;
    double m_minus = 0.0;
};

// Positive root m of (sigma^2/2) m^2 + a m - (h + d) = 0.  For h+d = 0
// this is -2a/sigma^2 and requires a < 0.  Throws NoStationaryTail when
// no admissible root exists.
double tail_exponent(double a, double sigma, double h, double d);

// Closed-form stationary density for Gibrat growth with point source nu0
// at s0, absorbing boundary at s_min and constant killing rate h.
// Piecewise power law, zero at s_min, decaying as s^-(1+m) above s0;
// total mass nu0 times the mean lifetime.
DensitySolution gbm_steady_density(const GibratParams& params, double nu0, double s0,
                                   double s_min, double h, std::size_t n = 1024,
                                   double s_max = 0.0);

// Closed-form two-sided solution with no exit boundary (requires h > 0
// so both branches are integrable).
ZeroExitDensity zero_exit_density(const GibratParams& params, double nu0, double s0,
                                  double h, std::size_t n = 1024, double span = 1e4);

struct StationaryGridConfig {
    std::size_t n = 4096;          // cells; n+1 nodes
    double s_max = 0.0;            // 0 -> s0 * 1e6
    bool refine_check = true;      // compare against a 2n solve
    double refine_tolerance = 0.05;  // allowed shift of the fitted tail
    // tail-fit window as fractions of s_max
    double fit_lo = 0.01;
    double fit_hi = 0.1;
};

// Stationary density of a generalized diffusion with constant birth flow
// nu0 at s0, absorbing boundary at s_min, killing h(s), solved by
// exponentially fitted finite differences on a log grid.  An exponential
// birth-rate growth d enters as an extra killing rate (growing-frame
// tilt).  Upper boundary uses the local characteristic decay exponent
// rather than a hard zero.
DensitySolution solve_stationary(const DiffusionSpec& spec, const BirthLaw& birth,
                                 const ExitLaw& exit, const StationaryGridConfig& grid,
                                 double d = 0.0);

}  // namespace zipflab
