#include "oddstop/sim.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace oddstop {

namespace {

constexpr double kNormal975 = 1.959963984540054;

double half_width_95(double estimate, std::uint64_t trials) {
  return kNormal975 *
         std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(trials));
}

// Runs `body(trial)` for every trial in [0, trials), sharded over `workers`
// threads, and returns the total win count. `body` must be a pure function
// of the trial index.
template <class Body>
std::uint64_t run_trials(std::uint64_t trials, unsigned workers,
                         const Body& body) {
  if (workers <= 1 || trials < 2 * workers) {
    std::uint64_t wins = 0;
    for (std::uint64_t t = 0; t < trials; ++t) wins += body(t);
    return wins;
  }
  std::vector<std::uint64_t> wins_per(workers, 0);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::uint64_t chunk = trials / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = w + 1 == workers ? trials : lo + chunk;
    threads.emplace_back([&, w, lo, hi] {
      std::uint64_t wins = 0;
      for (std::uint64_t t = lo; t < hi; ++t) wins += body(t);
      wins_per[w] = wins;
    });
  }
  for (auto& th : threads) th.join();
  std::uint64_t total = 0;
  for (std::uint64_t w : wins_per) total += w;
  return total;
}

}  // namespace

std::uint64_t CounterRng::mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double CounterRng::uniform(std::uint64_t trial, std::uint64_t step) const {
  const std::uint64_t h = mix(seed_ ^ mix(trial ^ mix(step)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

SimResult simulate(const OddsProblem<double>& prob, const Strategy& strategy,
                   const SimConfig& config) {
  if (config.trials < 1) {
    throw PreconditionNotMetError("trials must be >= 1");
  }
  const Index n = prob.n();
  std::vector<char> stop_mask(static_cast<std::size_t>(n) + 1, 0);
  if (const auto* thr = std::get_if<ThresholdStrategy>(&strategy)) {
    if (thr->s < 1 || thr->s > n) {
      throw InvalidStrategyError("threshold " + std::to_string(thr->s) +
                                 " is outside 1.." + std::to_string(n));
    }
    for (Index k = thr->s; k <= n; ++k) stop_mask[k] = 1;
  } else {
    const auto& set = std::get<StopSetStrategy>(strategy).set;
    Index prev = 0;
    for (Index k : set.indices) {
      if (k < 1 || k > n || k <= prev) {
        throw InvalidStrategyError("invalid stop set index " +
                                   std::to_string(k));
      }
      stop_mask[k] = 1;
      prev = k;
    }
  }

  const CounterRng rng(config.seed);
  const auto& p = prob.probabilities();

  SimResult result;
  result.trials = config.trials;
  if (config.record_stops) result.stop_indices.assign(config.trials, 0);

  auto body = [&](std::uint64_t trial) -> std::uint64_t {
    Index stop = 0;
    Index last = 0;
    for (Index k = 1; k <= n; ++k) {
      const bool hit = rng.uniform(trial, static_cast<std::uint64_t>(k)) <
                       p[static_cast<std::size_t>(k - 1)];
      if (hit) {
        last = k;
        if (stop == 0 && stop_mask[k]) stop = k;
      }
    }
    if (config.record_stops) {
      result.stop_indices[trial] = static_cast<std::int32_t>(stop);
    }
    return stop != 0 && stop == last ? 1 : 0;
  };

  result.wins = run_trials(config.trials, config.workers, body);
  result.estimate =
      static_cast<double>(result.wins) / static_cast<double>(result.trials);
  result.half_width = half_width_95(result.estimate, result.trials);
  return result;
}

Estimator smoothed_running_mean() {
  return [](Index, Index observed, Index successes) {
    return (static_cast<double>(successes) + 1.0) /
           (static_cast<double>(observed) + 2.0);
  };
}

Estimator oracle_estimator(std::vector<double> true_p) {
  return [p = std::move(true_p)](Index next_index, Index, Index) {
    return p[static_cast<std::size_t>(next_index - 1)];
  };
}

AdaptiveResult adaptive_simulate(const std::vector<double>& true_p,
                                 const Estimator& estimator,
                                 const SimConfig& config) {
  if (config.trials < 1) {
    throw PreconditionNotMetError("trials must be >= 1");
  }
  const auto prob = OddsProblem<double>::from(true_p);
  const Index n = prob.n();
  const auto optimal = solve(prob);
  const CounterRng rng(config.seed);

  AdaptiveResult out;
  out.result.trials = config.trials;
  out.result.stop_indices.assign(config.trials, 0);

  auto body = [&](std::uint64_t trial) -> std::uint64_t {
    Index observed = 0;
    Index successes = 0;
    Index stop = 0;
    Index last = 0;
    for (Index k = 1; k <= n; ++k) {
      const bool hit = rng.uniform(trial, static_cast<std::uint64_t>(k)) <
                       true_p[static_cast<std::size_t>(k - 1)];
      ++observed;
      if (hit) {
        ++successes;
        last = k;
      }
      if (hit && stop == 0) {
        if (k == n) {
          stop = n;
        } else {
          // Estimated odds of the remaining indices, summed back to front
          // exactly like the suffix tables so that a perfect estimator
          // reproduces the analytic decisions bit for bit.
          bool infinite = false;
          double sum = 0.0;
          for (Index j = n; j > k; --j) {
            const double ph = estimator(j, observed, successes);
            if (!(ph >= 0.0 && ph <= 1.0)) {
              throw EstimatorFailureError(
                  "estimate for index " + std::to_string(j) +
                  " is not a probability");
            }
            if (ph == 1.0) {
              infinite = true;
              break;
            }
            sum += ph / (1.0 - ph);
          }
          if (!infinite && sum < 1.0) stop = k;
        }
      }
    }
    out.result.stop_indices[trial] = static_cast<std::int32_t>(stop);
    return stop != 0 && stop == last ? 1 : 0;
  };

  out.result.wins = run_trials(config.trials, config.workers, body);
  out.result.estimate = static_cast<double>(out.result.wins) /
                        static_cast<double>(out.result.trials);
  out.result.half_width = half_width_95(out.result.estimate, out.result.trials);
  out.optimal_value = optimal.value;
  out.gap = out.optimal_value - out.result.estimate;
  return out;
}

}  // namespace oddstop
