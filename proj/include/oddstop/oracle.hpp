#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "oddstop/core.hpp"

namespace oddstop {

// An arbitrary set of indices at which a strategy commits to stop on a
// success: play stops at the first k in the set with a success; if none
// occurs the play reaches n unstopped. A threshold rule s is {s, ..., n}.
struct StopSet {
  std::vector<Index> indices;  // strictly increasing

  static StopSet threshold(Index s, Index n) {
    StopSet set;
    for (Index k = s; k <= n; ++k) set.indices.push_back(k);
    return set;
  }
};

namespace detail {

// The no-success suffix probabilities prod_{j=k}^{n} q_j, k = 1..n+1,
// computed locally: the verification path never touches the solver's
// tables or its odds sums.
template <class T>
std::vector<T> suffix_survival(const OddsProblem<T>& prob) {
  const Index n = prob.n();
  std::vector<T> surv(static_cast<std::size_t>(n) + 2, T(1));
  for (Index k = n; k >= 1; --k) surv[k] = prob.q(k) * surv[k + 1];
  return surv;
}

template <class T>
void validate_stopset(const OddsProblem<T>& prob, const StopSet& set) {
  Index prev = 0;
  for (Index k : set.indices) {
    if (k < 1 || k > prob.n()) {
      throw InvalidStopSetError("stop set index " + std::to_string(k) +
                                " is outside 1.." + std::to_string(prob.n()));
    }
    if (k <= prev) {
      throw InvalidStopSetError("stop set indices must be strictly increasing");
    }
    prev = k;
  }
}

}  // namespace detail

// Win probability of a fixed stop set S:
//   sum_{k in S} P(all earlier S-indices fail) * p_k * P(no success after k).
template <class T>
T stopset_value(const OddsProblem<T>& prob, const StopSet& set) {
  detail::validate_stopset(prob, set);
  const auto surv = detail::suffix_survival(prob);
  T reach(1);
  T total(0);
  for (Index k : set.indices) {
    total += reach * prob.p(k) * surv[k + 1];
    reach *= prob.q(k);
  }
  return total;
}

// Backward induction over all non-anticipative strategies, independent of
// the odds formulation. continuation[k] is the win probability of passing
// index k and playing on optimally; stopping at a success at index k pays
// the probability that no later index succeeds.
template <class T>
struct DpResult {
  T value{};
  std::vector<bool> stop_at;    // 1..n: stop when index k succeeds; slot 0 unused
  std::vector<T> continuation;  // 0..n; value = continuation[0]
};

template <class T>
DpResult<T> dp_value(const OddsProblem<T>& prob) {
  const Index n = prob.n();
  const auto surv = detail::suffix_survival(prob);
  DpResult<T> r;
  r.continuation.assign(static_cast<std::size_t>(n) + 1, T(0));
  r.stop_at.assign(static_cast<std::size_t>(n) + 1, false);
  for (Index k = n - 1; k >= 0; --k) {
    const T& stop_payoff = surv[k + 2];
    const T& cont = r.continuation[k + 1];
    // Ties break toward stopping.
    const T& best = stop_payoff >= cont ? stop_payoff : cont;
    r.continuation[k] = prob.p(k + 1) * best + prob.q(k + 1) * cont;
  }
  for (Index k = 1; k <= n; ++k) {
    r.stop_at[k] = surv[k + 1] >= r.continuation[k];
  }
  r.value = r.continuation[0];
  return r;
}

inline constexpr Index kDefaultEnumerationCap = 20;

template <class T>
struct EnumerationResult {
  StopSet best;  // lexicographically smallest maximizer
  T value{};
  bool threshold_attains = false;  // some {s..n} reaches the maximum
  std::uint64_t examined = 0;
};

namespace detail {

inline std::vector<Index> mask_to_indices(std::uint64_t mask, Index n) {
  std::vector<Index> out;
  for (Index k = 1; k <= n; ++k) {
    if (mask >> (k - 1) & 1u) out.push_back(k);
  }
  return out;
}

}  // namespace detail

// Exhaustive maximization over all 2^n stop sets. The maximum must agree
// with both dp_value and the solver; ties resolve to the lexicographically
// smallest index set.
template <class T>
EnumerationResult<T> enumerate_stopsets(const OddsProblem<T>& prob,
                                        Index cap = kDefaultEnumerationCap) {
  const Index n = prob.n();
  if (n > cap) {
    throw HorizonTooLargeError(n, cap);
  }
  const auto surv = detail::suffix_survival(prob);
  EnumerationResult<T> out;
  out.value = T(0);  // the empty set
  out.examined = 1;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    T reach(1);
    T total(0);
    for (Index k = 1; k <= n; ++k) {
      if (mask >> (k - 1) & 1u) {
        total += reach * prob.p(k) * surv[k + 1];
        reach *= prob.q(k);
      }
    }
    ++out.examined;
    if (total > out.value) {
      out.value = total;
      out.best.indices = detail::mask_to_indices(mask, n);
    } else if (total == out.value) {
      auto indices = detail::mask_to_indices(mask, n);
      if (std::lexicographical_compare(indices.begin(), indices.end(),
                                       out.best.indices.begin(),
                                       out.best.indices.end())) {
        out.best.indices = std::move(indices);
      }
    }
  }
  for (Index s = 1; s <= n && !out.threshold_attains; ++s) {
    const T v = stopset_value(prob, StopSet::threshold(s, n));
    out.threshold_attains = ArithmeticTraits<T>::eq(v, out.value);
  }
  return out;
}

}  // namespace oddstop
