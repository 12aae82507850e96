#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oddstop/models.hpp"
#include "oddstop/sim.hpp"

using namespace oddstop;

namespace {

const std::vector<double> kFiveGame{0.1, 0.2, 0.24, 0.25, 0.251};

}  // namespace

TEST_CASE("counter rng is a pure function of seed, trial and step") {
  const CounterRng a(12345);
  const CounterRng b(12345);
  const CounterRng c(54321);
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    for (std::uint64_t step = 1; step <= 8; ++step) {
      const double u = a.uniform(trial, step);
      CHECK(u == b.uniform(trial, step));
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
    }
  }
  int diffs = 0;
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    diffs += a.uniform(trial, 1) != c.uniform(trial, 1);
  }
  CHECK(diffs > 45);
}

TEST_CASE("counter rng draws look uniform") {
  const CounterRng rng(99);
  double sum = 0.0;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) sum += rng.uniform(t, 3);
  CHECK(sum / draws == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("degenerate simulations are exact") {
  SimConfig config;
  config.trials = 5000;
  config.seed = 7;

  const auto certain = simulate(OddsProblem<double>::from({1.0}),
                                ThresholdStrategy{1}, config);
  CHECK(certain.wins == config.trials);
  CHECK(certain.estimate == 1.0);
  CHECK(certain.half_width == 0.0);

  const auto never = simulate(OddsProblem<double>::from({0.5}),
                              StopSetStrategy{StopSet{}}, config);
  CHECK(never.wins == 0);
  CHECK(never.estimate == 0.0);
}

TEST_CASE("five game simulation lands near the analytic value") {
  SimConfig config;
  config.trials = 200000;
  config.seed = 20240229;
  const auto prob = OddsProblem<double>::from(kFiveGame);
  const auto result = simulate(prob, ThresholdStrategy{2}, config);
  const double v = solve(prob).value;
  CHECK(std::fabs(result.estimate - v) <= 4.0 * result.half_width);
}

TEST_CASE("worker count never changes the outcome") {
  const auto prob = OddsProblem<double>::from(kFiveGame);
  SimConfig config;
  config.trials = 40000;
  config.seed = 31337;
  config.record_stops = true;

  config.workers = 1;
  const auto one = simulate(prob, ThresholdStrategy{2}, config);
  config.workers = 3;
  const auto three = simulate(prob, ThresholdStrategy{2}, config);
  config.workers = 8;
  const auto eight = simulate(prob, ThresholdStrategy{2}, config);

  CHECK(one.wins == three.wins);
  CHECK(one.wins == eight.wins);
  CHECK(one.stop_indices == three.stop_indices);
  CHECK(one.stop_indices == eight.stop_indices);
  CHECK(one.estimate == eight.estimate);
}

TEST_CASE("invalid strategies are rejected") {
  const auto prob = OddsProblem<double>::from(kFiveGame);
  SimConfig config;
  CHECK_THROWS_AS(simulate(prob, ThresholdStrategy{0}, config),
                  InvalidStrategyError);
  CHECK_THROWS_AS(simulate(prob, ThresholdStrategy{6}, config),
                  InvalidStrategyError);
  StopSetStrategy bad;
  bad.set.indices = {7};
  CHECK_THROWS_AS(simulate(prob, bad, config), InvalidStrategyError);
  config.trials = 0;
  CHECK_THROWS_AS(simulate(prob, ThresholdStrategy{2}, config),
                  PreconditionNotMetError);
}

TEST_CASE("true-probability estimator reproduces the optimal rule exactly") {
  SimConfig config;
  config.trials = 30000;
  config.seed = 5551212;
  config.record_stops = true;

  for (const auto& p :
       {kFiveGame, std::vector<double>{0.3, 1.0, 0.2},
        std::vector<double>{0.8, 0.15, 0.6, 0.05}}) {
    const auto prob = OddsProblem<double>::from(p);
    const auto sol = solve(prob);
    const auto plain = simulate(prob, ThresholdStrategy{sol.s}, config);
    const auto informed = adaptive_simulate(p, oracle_estimator(p), config);
    CHECK(informed.result.wins == plain.wins);
    CHECK(informed.result.stop_indices == plain.stop_indices);
    CHECK(informed.optimal_value == sol.value);
  }
}

TEST_CASE("adaptive simulation on a single index wins with p1") {
  SimConfig config;
  config.trials = 100000;
  config.seed = 11;
  const auto r = adaptive_simulate({0.5}, smoothed_running_mean(), config);
  CHECK(std::fabs(r.result.estimate - 0.5) <= 4.0 * r.result.half_width);
}

TEST_CASE("plug-in estimation underperforms the informed optimum") {
  SimConfig config;
  config.trials = 60000;
  config.seed = 2024;
  const std::vector<double> p(10, 0.5);
  const auto r = adaptive_simulate(p, smoothed_running_mean(), config);
  CHECK(r.optimal_value == doctest::Approx(0.5));
  CHECK(r.result.estimate > 0.05);
  CHECK(r.result.estimate <= r.optimal_value + 4.0 * r.result.half_width);
  CHECK(r.gap == r.optimal_value - r.result.estimate);
}

TEST_CASE("estimator failures surface as errors") {
  SimConfig config;
  config.trials = 10;
  config.seed = 3;
  const auto broken = [](Index, Index, Index) { return 1.5; };
  CHECK_THROWS_AS(adaptive_simulate({0.9, 0.5}, broken, config),
                  EstimatorFailureError);
}

TEST_CASE("estimates track the analytic value across random problems") {
  std::mt19937_64 rng(60601);
  std::uniform_int_distribution<Index> len(1, 12);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SimConfig config;
  config.trials = 20000;
  int violations = 0;
  for (int round = 0; round < 60; ++round) {
    std::vector<double> p(static_cast<std::size_t>(len(rng)));
    for (auto& v : p) v = unif(rng);
    const auto prob = OddsProblem<double>::from(p);
    const auto sol = solve(prob);
    config.seed = 1000 + round;
    const auto result = simulate(prob, ThresholdStrategy{sol.s}, config);
    const double slack = 4.0 * result.half_width;
    if (std::fabs(result.estimate - sol.value) > slack) ++violations;
  }
  CHECK(violations <= 1);
}

TEST_CASE("simulated secretary values respect the prophet ordering") {
  SimConfig config;
  config.trials = 100000;
  double prev_estimate = 0.0;
  double prev_half_width = 0.0;
  for (Index n = 3; n <= 21; ++n) {
    const auto prob = secretary_problem<double>(n);
    const auto sol = solve(prob);
    config.seed = 900 + n;
    const auto result = simulate(prob, ThresholdStrategy{sol.s}, config);
    if (n > 3) {
      CHECK(result.estimate <=
            prev_estimate + 4.0 * (prev_half_width + result.half_width));
    }
    prev_estimate = result.estimate;
    prev_half_width = result.half_width;
  }
}
