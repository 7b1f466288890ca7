#include <doctest.h>

#include <cmath>
#include <vector>

#include "zipflab/analytics.hpp"
#include "zipflab/errors.hpp"

using namespace zipflab;

TEST_CASE("tail exponent closed-form values") {
    // zero killing: m = -2a/sigma^2
    CHECK(tail_exponent(-0.02, 0.2, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    // a = 0: m = sqrt(2(h+d))/sigma
    CHECK(tail_exponent(0.0, 0.3, 0.09, 0.0) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    // balance: mu = h + d gives m = 1 exactly (a = mu - sigma^2/2)
    CHECK(tail_exponent(0.05 - 0.045, 0.3, 0.03, 0.02) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tail exponent satisfies the characteristic polynomial") {
    const double cases[][4] = {{-0.1, 0.25, 0.02, 0.0},
                               {0.03, 0.4, 0.05, 0.01},
                               {0.0, 0.2, 0.001, 0.0},
                               {-0.02, 0.2, 0.0, 0.0}};
    for (const auto& c : cases) {
        const double m = tail_exponent(c[0], c[1], c[2], c[3]);
        const double resid = 0.5 * c[1] * c[1] * m * m + c[0] * m - (c[2] + c[3]);
        CHECK(std::fabs(resid) < 1e-12);
    }
}

TEST_CASE("tail exponent is monotone in the killing rate") {
    double prev = 0.0;
    for (double h : {0.0, 0.01, 0.05, 0.1, 0.5}) {
        const double m = tail_exponent(-0.02, 0.2, h, 0.0);
        CHECK(m >= prev);
        prev = m;
    }
}

TEST_CASE("no stationary tail without decay or killing") {
    CHECK_THROWS_AS(tail_exponent(0.0, 0.2, 0.0, 0.0), NoStationaryTail);
    CHECK_THROWS_AS(tail_exponent(0.05, 0.2, 0.0, 0.0), NoStationaryTail);
}

TEST_CASE("closed-form steady density: Zipf tail and total mass") {
    // a = -0.02 at mu = 0, sigma = 0.2: m = 1, f ~ s^-2 above the source
    const GibratParams p{0.0, 0.2};
    const auto sol = gbm_steady_density(p, 100.0, 1.0, 0.01, 0.0, 2048, 1e4);
    CHECK(sol.tail_exponent == doctest::Approx(1.0).epsilon(1e-12));
    // mass = nu0 * delta/|a| = 100 ln(100)/0.02
    CHECK(sol.normalization == doctest::Approx(100.0 * std::log(100.0) / 0.02).epsilon(1e-9));
    // density vanishes at the absorbing boundary
    CHECK(sol.density.front() == doctest::Approx(0.0));
    // s^-2 decay above the source: s^2 f(s) constant
    std::vector<std::pair<double, double>> probes;
    for (std::size_t i = 0; i < sol.grid.size(); ++i)
        if (sol.grid[i] > 2.0) probes.emplace_back(sol.grid[i], sol.density[i]);
    REQUIRE(probes.size() > 10);
    const double c0 = probes.front().first * probes.front().first * probes.front().second;
    for (const auto& [s, f] : probes) CHECK(s * s * f == doctest::Approx(c0).epsilon(1e-9));
}

TEST_CASE("zero-exit closed form: symmetric exponents at zero log-drift") {
    // a = 0, sigma = 0.2, h = 0.02: m_plus = sqrt(2h)/sigma = 1
    const GibratParams p{0.02, 0.2};
    const auto sol = zero_exit_density(p, 10.0, 1.0, 0.02);
    CHECK(sol.m_plus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.m_minus == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sol.m_plus == doctest::Approx(tail_exponent(0.0, 0.2, 0.02, 0.0)).epsilon(1e-12));
    CHECK_THROWS_AS(zero_exit_density(p, 10.0, 1.0, 0.0), NotIntegrable);
}

namespace {

BirthLaw constant_birth(double nu0, double s0) {
    BirthLaw law;
    law.kind = BirthLaw::Kind::Constant;
    law.nu0 = nu0;
    law.entry.s0 = s0;
    return law;
}

}  // namespace

TEST_CASE("numeric stationary solve reproduces the closed form") {
    const GibratParams p{0.0, 0.2};  // a = -0.02, m = 1
    auto spec = DiffusionSpec::make_gbm(p);
    ExitLaw exit;
    exit.s_min = 0.01;
    StationaryGridConfig grid;
    grid.n = 4096;
    grid.s_max = 100.0;
    const auto numeric = solve_stationary(spec, constant_birth(100.0, 1.0), exit, grid);
    const auto exact = gbm_steady_density(p, 100.0, 1.0, 0.01, 0.0, grid.n, grid.s_max);

    CHECK(std::fabs(numeric.tail_exponent - 1.0) < 1e-3);
    CHECK(numeric.flux_residual < 1e-8);
    CHECK(numeric.fit_r_squared > 0.9999);
    CHECK(numeric.normalization ==
          doctest::Approx(100.0 * std::log(100.0) / 0.02).epsilon(0.01));

    // pointwise agreement away from the source kink
    REQUIRE(numeric.grid.size() == exact.grid.size());
    for (std::size_t i = 0; i < numeric.grid.size(); ++i) {
        const double s = numeric.grid[i];
        if (s < 2.0 || s > grid.s_max / 2.0) continue;
        CHECK(numeric.density[i] == doctest::Approx(exact.density[i]).epsilon(2e-3));
    }
}

TEST_CASE("numeric solve with killing matches the predicted exponent") {
    // a = 0 (mu = sigma^2/2), h = 0.02, sigma = 0.2: m = 1
    auto spec = DiffusionSpec::make_gbm({0.02, 0.2});
    ExitLaw exit;
    exit.s_min = 0.01;
    exit.hazard.kind = HazardLaw::Kind::Constant;
    exit.hazard.h = 0.02;
    StationaryGridConfig grid;
    grid.n = 4096;
    grid.s_max = 1e4;
    const auto sol = solve_stationary(spec, constant_birth(50.0, 1.0), exit, grid);
    CHECK(std::fabs(sol.tail_exponent - 1.0) < 1e-3);
    CHECK(sol.flux_residual < 1e-8);
}

TEST_CASE("size-dependent small-firm dynamics keep the asymptotic Zipf tail") {
    // crossover diffusion that is Gibrat above s_c; asymptotic a = -sigma^2/2
    const double sigma = 0.2;
    auto spec = DiffusionSpec::make_semi_gbm(0.02, sigma, 1.0);
    ExitLaw exit;
    exit.s_min = 0.05;
    StationaryGridConfig grid;
    grid.n = 4096;
    grid.s_max = 1e5;
    const auto sol = solve_stationary(spec, constant_birth(10.0, 5.0), exit, grid);
    const double m_pred = 1.0;  // -2a/sigma^2 with a = -sigma^2/2
    CHECK(std::fabs(sol.tail_exponent - m_pred) / m_pred < 0.02);
}

TEST_CASE("constant absolute volatility has no power-law tail") {
    auto spec = DiffusionSpec::make_constant_volatility(-0.5, 1.0);
    ExitLaw exit;
    exit.s_min = 0.1;
    StationaryGridConfig grid;
    grid.n = 4096;
    grid.s_max = 100.0;
    grid.refine_check = false;  // the fit window has no stable slope here
    const auto sol = solve_stationary(spec, constant_birth(10.0, 5.0), exit, grid);
    CHECK(sol.fit_r_squared < 0.97);
}

TEST_CASE("a too-coarse grid is rejected") {
    auto spec = DiffusionSpec::make_gbm({0.0, 0.2});
    ExitLaw exit;
    exit.s_min = 0.01;
    StationaryGridConfig grid;
    grid.n = 16;
    grid.s_max = 1e4;
    CHECK_THROWS_AS(solve_stationary(spec, constant_birth(10.0, 1.0), exit, grid),
                    GridTooCoarse);
}
