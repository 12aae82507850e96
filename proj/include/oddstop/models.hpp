#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oddstop/core.hpp"
#include "oddstop/sequence.hpp"

namespace oddstop {

// Classical secretary problem with horizon n: independent indicators with
// p_k = 1/k ("the k-th candidate is the best so far").
template <class T>
OddsProblem<T> secretary_problem(Index n) {
  return Sequence<T>::secretary().prefix(n);
}

// Exact harmonic partial sum H(m) = 1 + 1/2 + ... + 1/m, with H(0) = 0.
Rational harmonic_number(Index m);

// Exact odds sum R(k,n) of the secretary problem:
//   sum_{j=k}^{n} 1/(j-1)  =  H(n-1) - H(k-2).
// k = 1 is rejected: p_1 = 1 has infinite odds.
Rational secretary_odds_sum(Index k, Index n);

// Whether H(n) - H(k) is an integer, for 0 <= k < n, decided by exact
// arithmetic. A second, independent route must agree: among the
// denominators k+1..n exactly one carries the highest power of 2, so a sum
// with two or more terms has negative 2-adic valuation and cannot be an
// integer; a single term 1/n is integral only for n = 1.
bool harmonic_difference_is_integer(Index k, Index n);

struct CertificateRow {
  Index n = 0;
  Index threshold = 0;
  Rational value;
};

// Exact verification, for the secretary problem, that the values V(n) are
// strictly decreasing and the thresholds unique over 3 <= n <= n_max. Rows
// cover 2..n_max so the caller can see the V(2) = V(3) boundary the strict
// claim excludes. Throws CertificateFailureError on any violation and
// InconsistentWithTheoremError if the two uniqueness routes (direct exact
// comparison vs. harmonic integrality) ever disagree.
std::vector<CertificateRow> secretary_certificate(Index n_max);

// Interview schedule: positive group sizes m_1..m_d, one group per day.
struct Schedule {
  std::vector<Index> sizes;

  Index days() const { return static_cast<Index>(sizes.size()); }
  Index total() const {
    Index sum = 0;
    for (Index m : sizes) sum += m;
    return sum;
  }
};

void validate_schedule(const Schedule& sched);

// Group-interview problem: seeing groups of sizes m_1..m_d, the chance that
// the best of the first M_k candidates (M_k = m_1 + ... + m_k) arrives in
// group k is m_k / M_k; in particular p_1 = 1. Stopping on the last group
// that contains a running best picks the overall best candidate.
template <class T>
OddsProblem<T> group_interview_problem(const Schedule& sched) {
  validate_schedule(sched);
  std::vector<T> p;
  p.reserve(sched.sizes.size());
  Index seen = 0;
  for (Index m : sched.sizes) {
    seen += m;
    p.push_back(ArithmeticTraits<T>::ratio(m, seen));
  }
  return OddsProblem<T>::from(std::move(p));
}

template <class T>
Sequence<T> group_interview_sequence(const Schedule& sched) {
  return Sequence<T>::explicit_list(
      group_interview_problem<T>(sched).probabilities(), Monotonicity::None,
      "group");
}

inline constexpr std::uint64_t kDefaultScheduleCap = 1'000'000;

template <class T>
struct BestScheduleResult {
  Schedule schedule;
  ThresholdSolution<T> solution;
  std::uint64_t examined = 0;
};

namespace detail {

// Tail candidates in lexicographic order: either the distinct permutations
// of a fixed pool of sizes, or every composition of `remaining` into
// `parts` positive parts.
std::vector<std::vector<Index>> schedule_tails(Index remaining, Index parts,
                                               const std::optional<std::vector<Index>>& pool,
                                               std::uint64_t cap);

}  // namespace detail

// Exhaustively searches the schedules extending `prefix` to `days` groups
// totalling `total` candidates. With a pool, the tail must use exactly the
// pooled sizes (in any order); without one, every positive composition of
// the remainder is tried. Ties go to the lexicographically smallest
// schedule.
template <class T>
BestScheduleResult<T> best_schedule(
    Index total, Index days, std::vector<Index> prefix = {},
    std::optional<std::vector<Index>> pool = std::nullopt,
    std::uint64_t cap = kDefaultScheduleCap) {
  if (days < 1 || total < days) {
    throw InfeasibleConstraintsError(
        "need total >= days >= 1, got total = " + std::to_string(total) +
        ", days = " + std::to_string(days));
  }
  if (static_cast<Index>(prefix.size()) > days) {
    throw InfeasibleConstraintsError("prefix longer than the number of days");
  }
  Index prefix_sum = 0;
  for (Index m : prefix) {
    if (m < 1) throw InfeasibleConstraintsError("prefix sizes must be >= 1");
    prefix_sum += m;
  }
  const Index parts = days - static_cast<Index>(prefix.size());
  const Index remaining = total - prefix_sum;
  if (parts == 0) {
    if (remaining != 0) {
      throw InfeasibleConstraintsError("prefix does not sum to the total");
    }
  } else if (remaining < parts) {
    throw InfeasibleConstraintsError(
        "remaining candidates cannot fill the remaining days");
  }

  const auto tails = detail::schedule_tails(remaining, parts, pool, cap);
  BestScheduleResult<T> best;
  bool have_best = false;
  for (const auto& tail : tails) {
    Schedule cand;
    cand.sizes = prefix;
    cand.sizes.insert(cand.sizes.end(), tail.begin(), tail.end());
    auto sol = solve(group_interview_problem<T>(cand));
    ++best.examined;
    // Lexicographic enumeration order makes "first strict improvement"
    // keep the lexicographically smallest maximizer.
    if (!have_best || sol.value > best.solution.value) {
      best.schedule = std::move(cand);
      best.solution = std::move(sol);
      have_best = true;
    }
  }
  return best;
}

}  // namespace oddstop
