#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "oddstop/core.hpp"
#include "oddstop/oracle.hpp"

namespace oddstop {

// Counter-based generator: every draw is a pure function of
// (seed, trial, step), so splitting trials across workers cannot change the
// sample stream and results are reproducible bit for bit.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  // Uniform in [0, 1).
  double uniform(std::uint64_t trial, std::uint64_t step) const;

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::uint64_t seed_;
};

struct ThresholdStrategy {
  Index s = 1;  // stop at the first success at an index >= s
};

struct StopSetStrategy {
  StopSet set;
};

using Strategy = std::variant<ThresholdStrategy, StopSetStrategy>;

struct SimConfig {
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  bool record_stops = false;  // keep the per-trial stop index
};

struct SimResult {
  std::uint64_t trials = 0;
  std::uint64_t wins = 0;
  double estimate = 0.0;
  double half_width = 0.0;                 // 95% normal approximation
  std::vector<std::int32_t> stop_indices;  // per trial, 0 = never stopped
};

// Samples the indicators independently per trial, runs the strategy, and
// counts the trials that stop exactly on the final success. Deterministic
// for a fixed seed, independent of the worker count.
SimResult simulate(const OddsProblem<double>& prob, const Strategy& strategy,
                   const SimConfig& config);

// Probability estimate for index `next_index` given the counts observed so
// far within the current trial. Must be pure and thread-safe.
using Estimator =
    std::function<double(Index next_index, Index observed, Index successes)>;

// Add-one smoothed running mean, applied homogeneously to all remaining
// indices: (successes + 1) / (observed + 2). Never returns 0 or 1.
Estimator smoothed_running_mean();

// Ignores the history and reports the true probabilities; with it the
// adaptive rule reproduces the optimal threshold rule decision for
// decision.
Estimator oracle_estimator(std::vector<double> true_p);

struct AdaptiveResult {
  SimResult result;
  double optimal_value = 0.0;  // full-information V(n)
  double gap = 0.0;            // optimal_value - estimate
};

// Runs the plug-in strategy: at every success the estimator produces
// probabilities for the remaining indices and the stop/continue decision
// re-runs the odds algorithm on those estimates (stop when the estimated
// remaining odds sum falls below 1). Per-trial stop indices are always
// recorded.
AdaptiveResult adaptive_simulate(const std::vector<double>& true_p,
                                 const Estimator& estimator,
                                 const SimConfig& config);

}  // namespace oddstop
