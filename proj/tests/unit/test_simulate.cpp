#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "zipflab/errors.hpp"
#include "zipflab/exits.hpp"
#include "zipflab/simulate.hpp"
#include "zipflab/tailfit.hpp"

using namespace zipflab;

namespace {

EconomyConfig balanced_economy() {
    // a = -sigma^2/2 = -0.18 with mu = 0, no killing: tail exponent 1
    EconomyConfig c;
    c.diffusion = DiffusionSpec::make_gbm({0.0, 0.6});
    c.birth.kind = BirthLaw::Kind::Constant;
    c.birth.nu0 = 200.0;
    c.birth.entry.s0 = 1.0;
    c.exit.s_min = 0.01;
    c.horizon = 150.0;
    c.dt = 0.1;
    c.seed = 71;
    return c;
}

}  // namespace

TEST_CASE("a lone decaying firm is absorbed and its lifespan recorded") {
    EconomyConfig c;
    c.diffusion = DiffusionSpec::make_gbm({-0.055, 0.3});  // a = -0.1
    c.birth.nu0 = 0.0;
    c.exit.s_min = std::exp(-1.0);  // delta = 1, mean lifespan 10
    c.initial_firms = 1;
    c.initial_size = 1.0;
    c.horizon = 500.0;
    c.dt = 0.05;
    c.seed = 5;
    const auto result = run_replica(c, 0);
    REQUIRE(result.lifespans.size() == 1);
    CHECK(result.lifespans[0].cause == ExitCause::Absorbed);
    CHECK(result.final_population.live_count() == 0);
    CHECK(result.final_population.absorbed_count == 1);

    // ensemble mean lifespan matches delta/|a| within 3%
    double sum = 0.0;
    const int n = 3000;
    for (int r = 0; r < n; ++r) {
        auto one = c;
        one.seed = 900;
        const auto res = run_replica(one, static_cast<std::uint64_t>(r));
        REQUIRE(res.lifespans.size() == 1);
        sum += res.lifespans[0].duration;
    }
    CHECK(std::fabs(sum / n - 10.0) / 10.0 < 0.03);
}

TEST_CASE("population accounting identity holds at the horizon") {
    auto c = balanced_economy();
    c.horizon = 40.0;
    c.exit.hazard.kind = HazardLaw::Kind::Constant;
    c.exit.hazard.h = 0.02;
    c.ma.spinoff_kind = MAKernel::SpinoffKind::Constant;
    c.ma.lambda_f = 0.01;
    c.ma.merger_kind = MAKernel::MergerKind::Constant;
    c.ma.lambda_m = 1e-6;
    c.initial_firms = 50;
    const auto result = run_replica(c, 0);
    const auto& pop = result.final_population;
    // born_count includes the initial cohort
    CHECK(pop.born_count + pop.spinoff_count ==
          pop.live_count() + pop.absorbed_count + pop.sudden_death_count + pop.merged_count);

    // lifespan records cover every firm that ever lived
    CHECK(result.lifespans.size() == pop.born_count + pop.spinoff_count);

    // flow series totals match the counters
    std::uint64_t births = 0, absorptions = 0, suddens = 0;
    for (const auto& f : result.flow_series) {
        births += f.births;
        absorptions += f.absorptions;
        suddens += f.sudden_deaths;
    }
    CHECK(births == pop.born_count - c.initial_firms);
    CHECK(absorptions == pop.absorbed_count);
    CHECK(suddens == pop.sudden_death_count);
    CHECK(result.flow_series.back().live == pop.live_count());
}

TEST_CASE("identical configs reproduce byte-identical results") {
    auto c = balanced_economy();
    c.horizon = 20.0;
    c.replicas = 2;
    const auto r1 = run(c);
    const auto r2 = run(c);
    REQUIRE(r1.final_population.live_count() == r2.final_population.live_count());
    for (std::size_t i = 0; i < r1.final_population.firms.size(); ++i) {
        CHECK(r1.final_population.firms[i].id == r2.final_population.firms[i].id);
        CHECK(r1.final_population.firms[i].size == r2.final_population.firms[i].size);
    }
    REQUIRE(r1.lifespans.size() == r2.lifespans.size());
    for (std::size_t i = 0; i < r1.lifespans.size(); ++i)
        CHECK(r1.lifespans[i].duration == r2.lifespans[i].duration);
}

TEST_CASE("replicas are independent but individually deterministic") {
    auto c = balanced_economy();
    c.horizon = 10.0;
    const auto a = run_replica(c, 0);
    const auto b = run_replica(c, 1);
    CHECK(a.final_population.born_count != b.final_population.born_count);
}

TEST_CASE("steady live count obeys Little's law") {
    // birth rate nu0, mean sojourn delta/|a|: live ~ nu0*delta/|a| = 200
    EconomyConfig c;
    c.diffusion = DiffusionSpec::make_gbm({-0.055, 0.3});  // a = -0.1
    c.birth.kind = BirthLaw::Kind::Constant;
    c.birth.nu0 = 20.0;
    c.birth.entry.s0 = 1.0;
    c.exit.s_min = std::exp(-1.0);
    c.horizon = 150.0;
    c.dt = 0.05;
    c.seed = 31;
    const auto result = run_replica(c, 0);
    double live_avg = 0.0;
    std::size_t cnt = 0;
    for (const auto& f : result.flow_series)
        if (f.t > 100.0) {
            live_avg += static_cast<double>(f.live);
            ++cnt;
        }
    live_avg /= static_cast<double>(cnt);
    CHECK(std::fabs(live_avg - 200.0) / 200.0 < 0.05);
}

TEST_CASE("a balanced economy develops a Zipf tail") {
    const auto c = balanced_economy();
    const auto result = run_replica(c, 0);
    const auto sizes = pooled_sizes(result, 100.0);
    REQUIRE(sizes.size() > 5000);
    const auto fit = hill(sizes, default_k(sizes.size()));
    CHECK(std::fabs(fit.m_hat - 1.0) < 0.15);
}

TEST_CASE("steady-state detection separates flat from trending series") {
    std::vector<FlowPoint> flat, trend;
    RngStream noise(77, 0, "flows");
    for (int i = 0; i <= 1000; ++i) {
        FlowPoint p;
        p.t = 0.1 * i;
        p.live = static_cast<std::uint64_t>(500.0 + 20.0 * noise.normal());
        flat.push_back(p);
        p.live = static_cast<std::uint64_t>(100.0 + 2.0 * i + 5.0 * noise.normal());
        trend.push_back(p);
    }
    const auto t_flat = steady_state_detect(flat);
    REQUIRE(t_flat.has_value());
    CHECK(*t_flat <= 100.0);
    CHECK_FALSE(steady_state_detect(trend).has_value());
}

TEST_CASE("default snapshot schedule is geometric and ends at the horizon") {
    const auto times = default_snapshot_times(100.0);
    REQUIRE(times.size() >= 4);
    CHECK(times.front() == doctest::Approx(1.0));
    CHECK(times.back() == doctest::Approx(100.0));
    for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] > times[i - 1]);
}

TEST_CASE("coupled births track total value") {
    EconomyConfig c;
    c.diffusion = DiffusionSpec::make_gbm({0.0, 0.3});
    c.birth.kind = BirthLaw::Kind::Coupled;
    c.birth.kappa = 0.02;
    c.birth.entry.s0 = 1.0;
    c.exit.s_min = 0.01;
    c.initial_firms = 500;
    c.initial_size = 2.0;
    c.horizon = 50.0;
    c.dt = 0.05;
    c.seed = 13;
    const auto result = run_replica(c, 0);
    // realized births vs kappa * integral of total value over time
    double value_integral = 0.0;
    for (const auto& f : result.flow_series) value_integral += f.total_value * c.dt;
    const double expected = c.birth.kappa * value_integral;
    // born_count includes the initial cohort; only the excess is coupled
    const auto born =
        static_cast<double>(result.final_population.born_count - c.initial_firms);
    CHECK(std::fabs(born - expected) / expected < 0.1);
}

TEST_CASE("an explosive economy trips the population cap") {
    EconomyConfig c;
    c.diffusion = DiffusionSpec::make_gbm({0.0, 0.2});
    c.birth.kind = BirthLaw::Kind::Exponential;
    c.birth.nu0 = 100.0;
    c.birth.d = 0.4;  // ~7.5e5 expected births: under the intensity cap
    c.birth.entry.s0 = 1.0;
    c.exit.s_min = 0.01;
    c.horizon = 20.0;
    c.dt = 0.1;
    c.live_count_cap = 10000;
    CHECK_THROWS_AS(run_replica(c, 0), PopulationExplosion);
}
