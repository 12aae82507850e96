#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "oddstop/core.hpp"
#include "oddstop/sequence.hpp"

namespace oddstop {

// N* = sup{n : R(1,n) <= 1}, the largest horizon whose full odds sum still
// stays at most 1. Up to N* the optimal value can only grow with the
// horizon, whatever the sequence does. n = 0 means no horizon qualifies
// (r_1 alone exceeds 1); beyond_range means R(1, n_max) <= 1 still held, so
// the true N* is n_max or larger (possibly infinite).
struct NStarResult {
  Index n = 0;
  bool beyond_range = false;
};

template <class T>
NStarResult n_star(const Sequence<T>& seq, Index n_max) {
  if (n_max < 1) throw IndexOutOfRangeError(n_max);
  Odds<T> sum{T(0)};
  for (Index k = 1; k <= n_max; ++k) {
    const T pk = seq.at(k);
    if (pk == T(1)) {
      sum += Odds<T>::infinity();
    } else {
      sum += Odds<T>(pk / (T(1) - pk));
    }
    if (sum.more_than(T(1))) {
      return NStarResult{k - 1, false};
    }
  }
  return NStarResult{n_max, true};
}

enum class MonotonicityClass {
  NonIncreasingBeyondNStar,
  NonDecreasingEverywhere,
  Mixed,
};

inline const char* to_string(MonotonicityClass c) {
  switch (c) {
    case MonotonicityClass::NonIncreasingBeyondNStar:
      return "non-increasing-beyond-n-star";
    case MonotonicityClass::NonDecreasingEverywhere:
      return "non-decreasing-everywhere";
    default:
      return "mixed";
  }
}

enum class CoincidenceReason {
  OddsSumOne,         // R(s(n),n) = 1 or R(s(n+1),n) = 1
  EqualProbability,   // p_{s(n)} = p_{n+1}
  Direct,             // established by direct value comparison only
};

inline const char* to_string(CoincidenceReason r) {
  switch (r) {
    case CoincidenceReason::OddsSumOne:
      return "odds-sum-one";
    case CoincidenceReason::EqualProbability:
      return "equal-probability";
    default:
      return "direct";
  }
}

// V(n+1) = V(n) together with every matching criterion.
struct Coincidence {
  Index n = 0;
  std::vector<CoincidenceReason> reasons;
};

template <class T>
struct FamilyReport {
  Index n_min = 1;
  Index n_max = 1;
  std::vector<ThresholdSolution<T>> solutions;  // per n in [n_min, n_max]
  NStarResult n_star;
  MonotonicityClass monotonicity = MonotonicityClass::Mixed;
  std::vector<Coincidence> coincidences;
  std::vector<Index> dual_thresholds;  // horizons with R(s(n),n) = 1

  const ThresholdSolution<T>& at(Index n) const {
    if (n < n_min || n > n_max) throw IndexOutOfRangeError(n);
    return solutions[static_cast<std::size_t>(n - n_min)];
  }
};

namespace detail {

template <class T>
bool odds_is_one(const Odds<T>& r) {
  return !r.is_infinite() && ArithmeticTraits<T>::eq(r.finite_value(), T(1));
}

// Whether 1..n_max is non-increasing with every entry strictly inside
// (0, 1) -- the hypotheses of the exact coincidence criterion.
template <class T>
bool coincidence_criterion_applies(const Sequence<T>& seq, Index n_max) {
  T prev = seq.at(1);
  for (Index k = 1; k <= n_max; ++k) {
    const T cur = seq.at(k);
    if (!(cur > T(0)) || !(cur < T(1))) return false;
    if (cur > prev) return false;
    prev = cur;
  }
  return true;
}

// Coincidences between consecutive in-range horizons, given the solutions
// for n_min..n_max. On sequences meeting the criterion's hypotheses the
// exact conditions are evaluated and cross-checked against the observed
// value equality in both directions; any mismatch is a solver defect.
//
// The equal-probability condition p_{s(n)} = p_{n+1} forces the coincidence
// only when the threshold advances, s(n+1) = s(n) + 1. Below N* the
// threshold can sit at 1 with R(1,n) < 1, where a constant stretch
// satisfies the condition while the value still strictly grows; beyond N*
// the advance is automatic whenever the condition holds, so the guard
// changes nothing there.
template <class T>
std::vector<Coincidence> coincidences_from(
    const Sequence<T>& seq, Index n_min, Index n_max,
    const std::vector<ThresholdSolution<T>>& sols) {
  std::vector<Coincidence> out;
  if (n_max - n_min < 1) return out;
  const bool criterion = coincidence_criterion_applies(seq, n_max);
  for (Index n = n_min; n < n_max; ++n) {
    const auto& cur = sols[static_cast<std::size_t>(n - n_min)];
    const auto& next = sols[static_cast<std::size_t>(n + 1 - n_min)];
    const bool equal = ArithmeticTraits<T>::eq(cur.value, next.value);
    if (!criterion) {
      if (equal) out.push_back({n, {CoincidenceReason::Direct}});
      continue;
    }
    const auto t = SuffixTables<T>::build(seq.prefix(n));
    const bool odds_one =
        odds_is_one(t.R[static_cast<std::size_t>(cur.s)]) ||
        odds_is_one(t.R[static_cast<std::size_t>(next.s)]);
    const bool equal_prob =
        next.s == cur.s + 1 &&
        ArithmeticTraits<T>::eq(seq.at(cur.s), seq.at(n + 1));
    if (equal != (odds_one || equal_prob)) {
      throw InconsistentWithTheoremError(
          "coincidence criterion mismatch at n = " + std::to_string(n) +
          ": values " + std::string(equal ? "equal" : "differ") +
          " but conditions say otherwise");
    }
    if (equal) {
      Coincidence c;
      c.n = n;
      if (odds_one) c.reasons.push_back(CoincidenceReason::OddsSumOne);
      if (equal_prob) c.reasons.push_back(CoincidenceReason::EqualProbability);
      out.push_back(std::move(c));
    }
  }
  return out;
}

// Observed behavior of the values, split at N*. A range whose tail beyond
// N* never increases is classed NonIncreasingBeyondNStar (constant values
// land here); otherwise a globally non-decreasing range is
// NonDecreasingEverywhere.
template <class T>
MonotonicityClass classify_values(const std::vector<ThresholdSolution<T>>& sols,
                                  const NStarResult& ns, Index n_min,
                                  Index n_max) {
  const Index nstar = ns.beyond_range ? n_max + 1 : ns.n;
  bool any_beyond = false;
  bool beyond_non_increasing = true;
  bool all_non_decreasing = true;
  for (Index n = n_min; n < n_max; ++n) {
    const T& v0 = sols[static_cast<std::size_t>(n - n_min)].value;
    const T& v1 = sols[static_cast<std::size_t>(n + 1 - n_min)].value;
    if (!ArithmeticTraits<T>::ge(v1, v0)) all_non_decreasing = false;
    if (n >= nstar) {
      any_beyond = true;
      if (!ArithmeticTraits<T>::ge(v0, v1)) beyond_non_increasing = false;
    }
  }
  if (any_beyond && beyond_non_increasing) {
    return MonotonicityClass::NonIncreasingBeyondNStar;
  }
  if (all_non_decreasing) return MonotonicityClass::NonDecreasingEverywhere;
  return MonotonicityClass::Mixed;
}

}  // namespace detail

// Solves every n-problem in [n_min, n_max], rebuilding the suffix tables
// per horizon, and gathers N*, the observed monotonicity class, value
// coincidences and dual thresholds. Two structural guarantees are verified
// on the way -- thresholds never decrease, and values never decrease while
// n < N* -- since a violation could only come from a solver defect.
template <class T>
FamilyReport<T> value_sweep(const Sequence<T>& seq, Index n_min, Index n_max) {
  if (n_min < 1 || n_max < n_min) {
    throw PreconditionNotMetError("sweep requires 1 <= n_min <= n_max");
  }
  FamilyReport<T> rep;
  rep.n_min = n_min;
  rep.n_max = n_max;
  rep.solutions.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (Index n = n_min; n <= n_max; ++n) {
    rep.solutions.push_back(solve(seq.prefix(n)));
    if (rep.solutions.back().dual_threshold) rep.dual_thresholds.push_back(n);
  }
  rep.n_star = n_star(seq, n_max);
  const Index lemma_bound = rep.n_star.beyond_range ? n_max : rep.n_star.n;
  for (Index n = n_min; n < n_max; ++n) {
    const auto& cur = rep.at(n);
    const auto& next = rep.at(n + 1);
    if (cur.s > next.s) {
      throw InconsistentWithTheoremError(
          "threshold decreased between n = " + std::to_string(n) + " and " +
          std::to_string(n + 1));
    }
    if (n < lemma_bound && !ArithmeticTraits<T>::ge(next.value, cur.value)) {
      throw InconsistentWithTheoremError(
          "value decreased below N* at n = " + std::to_string(n));
    }
  }
  rep.coincidences = detail::coincidences_from(seq, n_min, n_max, rep.solutions);
  rep.monotonicity =
      detail::classify_values(rep.solutions, rep.n_star, n_min, n_max);
  return rep;
}

// Classifies the observed value behavior and verifies it against the
// monotone-transfer guarantees whenever the underlying sequence is itself
// monotone beyond N* on the queried range. A mismatch signals a solver
// defect, never a property of the input.
template <class T>
MonotonicityClass classify_monotonicity(const FamilyReport<T>& rep,
                                        const Sequence<T>& seq) {
  const Index nstar = rep.n_star.beyond_range ? rep.n_max + 1 : rep.n_star.n;
  const Index first_beyond = std::max(rep.n_min, nstar);
  if (rep.n_max - first_beyond + 1 < 2) {
    throw PreconditionNotMetError(
        "classification requires at least two horizons at or beyond N*");
  }
  const auto cls =
      detail::classify_values(rep.solutions, rep.n_star, rep.n_min, rep.n_max);

  const Index from = std::max<Index>(1, nstar);
  bool p_non_increasing = true;
  bool p_non_decreasing = true;
  T prev = seq.at(from);
  for (Index k = from + 1; k <= rep.n_max; ++k) {
    const T cur = seq.at(k);
    if (cur > prev) p_non_increasing = false;
    if (cur < prev) p_non_decreasing = false;
    prev = cur;
  }
  if (p_non_increasing) {
    for (Index n = std::max(rep.n_min, nstar); n < rep.n_max; ++n) {
      if (!ArithmeticTraits<T>::ge(rep.at(n).value, rep.at(n + 1).value)) {
        throw InconsistentWithTheoremError(
            "non-increasing sequence produced increasing values at n = " +
            std::to_string(n));
      }
    }
  }
  if (p_non_decreasing) {
    for (Index n = rep.n_min; n < rep.n_max; ++n) {
      if (!ArithmeticTraits<T>::ge(rep.at(n + 1).value, rep.at(n).value)) {
        throw InconsistentWithTheoremError(
            "non-decreasing sequence produced decreasing values at n = " +
            std::to_string(n));
      }
    }
  }
  return cls;
}

// Coincidences V(n+1) = V(n) over consecutive in-range horizons. On
// non-increasing sequences with 0 < p < 1 the exact criterion supplies the
// reasons; otherwise the comparison is direct.
template <class T>
std::vector<Coincidence> detect_coincidences(const Sequence<T>& seq,
                                             Index n_min, Index n_max) {
  if (n_min < 1 || n_max < n_min) {
    throw PreconditionNotMetError("require 1 <= n_min <= n_max");
  }
  std::vector<ThresholdSolution<T>> sols;
  sols.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (Index n = n_min; n <= n_max; ++n) {
    sols.push_back(solve(seq.prefix(n)));
  }
  return detail::coincidences_from(seq, n_min, n_max, sols);
}

struct UniquenessRow {
  Index n = 0;
  bool threshold_unique = true;  // no second optimal threshold at this n
  bool value_unique = true;      // V(n) differs from both in-range neighbors
};

template <class T>
std::vector<UniquenessRow> uniqueness_report(const Sequence<T>& seq,
                                             Index n_min, Index n_max) {
  if (n_min < 1 || n_max < n_min) {
    throw PreconditionNotMetError("require 1 <= n_min <= n_max");
  }
  std::vector<ThresholdSolution<T>> sols;
  sols.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (Index n = n_min; n <= n_max; ++n) {
    sols.push_back(solve(seq.prefix(n)));
  }
  std::vector<UniquenessRow> rows;
  for (Index n = n_min; n <= n_max; ++n) {
    UniquenessRow row;
    row.n = n;
    const auto& sol = sols[static_cast<std::size_t>(n - n_min)];
    row.threshold_unique = !sol.dual_threshold;
    if (n > n_min) {
      const auto& prev = sols[static_cast<std::size_t>(n - 1 - n_min)];
      if (ArithmeticTraits<T>::eq(prev.value, sol.value)) {
        row.value_unique = false;
      }
    }
    if (n < n_max) {
      const auto& next = sols[static_cast<std::size_t>(n + 1 - n_min)];
      if (ArithmeticTraits<T>::eq(sol.value, next.value)) {
        row.value_unique = false;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

template <class T>
Sequence<T> delete_index(const Sequence<T>& seq, Index k) {
  return seq.without_index(k);
}

template <class T>
OddsProblem<T> delete_index(const OddsProblem<T>& prob, Index k) {
  return prob.without_index(k);
}

}  // namespace oddstop
