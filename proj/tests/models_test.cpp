#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "oddstop/models.hpp"
#include "oddstop/oracle.hpp"

using namespace oddstop;

namespace {

Rational rat(long long num, long long den) { return Rational(num, den); }

// Direct summation oracle for the secretary odds sum.
Rational direct_secretary_odds(Index k, Index n) {
  Rational sum = 0;
  for (Index j = k; j <= n; ++j) sum += Rational(1, j - 1);
  return sum;
}

}  // namespace

TEST_CASE("secretary problems") {
  const auto one = secretary_problem<Rational>(1);
  CHECK(one.probabilities() == std::vector<Rational>{Rational(1)});

  const auto three = secretary_problem<Rational>(3);
  CHECK(three.probabilities() ==
        std::vector<Rational>{Rational(1), rat(1, 2), rat(1, 3)});
  const auto sol3 = solve(three);
  CHECK(sol3.s == 2);
  CHECK(sol3.value == rat(1, 2));

  const auto sol10 = solve(secretary_problem<Rational>(10));
  CHECK(sol10.s == 4);
  CHECK(sol10.value == rat(3349, 8400));  // (3/10) * (H(9) - H(2))
  CHECK(to_double(sol10.value) == doctest::Approx(0.3987).epsilon(1e-4));
  // Independent confirmation by backward induction.
  CHECK(dp_value(secretary_problem<Rational>(10)).value == rat(3349, 8400));
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic_number(0) == 0);
  CHECK(harmonic_number(1) == 1);
  CHECK(harmonic_number(2) == rat(3, 2));
  CHECK(harmonic_number(9) == rat(7129, 2520));
  CHECK_THROWS_AS(harmonic_number(-1), IndexOutOfRangeError);
}

TEST_CASE("secretary odds sums in harmonic form") {
  CHECK(secretary_odds_sum(2, 3) == rat(3, 2));
  for (Index n = 2; n <= 12; ++n) {
    CHECK(secretary_odds_sum(n, n) == Rational(1, n - 1));
  }
  CHECK(secretary_odds_sum(4, 10) == rat(3349, 2520));
  // Summation oracle across a grid of (k, n).
  for (Index n = 2; n <= 40; ++n) {
    for (Index k = 2; k <= n; ++k) {
      CHECK(secretary_odds_sum(k, n) == direct_secretary_odds(k, n));
    }
  }
  CHECK_THROWS_AS(secretary_odds_sum(1, 5), InfiniteOddsError);
  CHECK_THROWS_AS(secretary_odds_sum(3, 2), IndexOutOfRangeError);
}

TEST_CASE("harmonic differences are never integers past the first term") {
  CHECK_FALSE(harmonic_difference_is_integer(1, 2));  // 1/2
  CHECK(harmonic_difference_is_integer(0, 1));        // H(1) = 1
  // Exhaustive over a modest grid; the function cross-checks the exact
  // arithmetic against the 2-adic route internally on every call.
  for (Index n = 2; n <= 80; ++n) {
    for (Index k = 1; k < n; ++k) {
      CHECK_FALSE(harmonic_difference_is_integer(k, n));
    }
  }
  CHECK_THROWS_AS(harmonic_difference_is_integer(3, 3), IndexOutOfRangeError);
}

TEST_CASE("secretary certificate verifies strict decrease and uniqueness") {
  const auto rows = secretary_certificate(4);
  REQUIRE(rows.size() == 3);  // n = 2, 3, 4
  CHECK(rows[0].n == 2);
  CHECK(rows[0].value == rat(1, 2));  // the excluded boundary: V(2) = V(3)
  CHECK(rows[1].value == rat(1, 2));
  CHECK(rows[2].value == rat(11, 24));
  CHECK(rows[1].value > rows[2].value);

  CHECK_NOTHROW(secretary_certificate(40));
  CHECK_THROWS_AS(secretary_certificate(2), PreconditionNotMetError);
}

TEST_CASE("group interview probabilities") {
  Schedule sched;
  sched.sizes = {3, 3, 4, 3, 2};
  const auto prob = group_interview_problem<Rational>(sched);
  CHECK(prob.probabilities() ==
        std::vector<Rational>{Rational(1), rat(1, 2), rat(2, 5), rat(3, 13),
                              rat(2, 15)});
  const auto sol = solve(prob);
  CHECK(sol.value == rat(437, 975));
  CHECK(to_double(sol.value) == doctest::Approx(0.448).epsilon(2e-3));

  Schedule single;
  single.sizes = {7};
  const auto trivial = solve(group_interview_problem<double>(single));
  CHECK(trivial.value == 1.0);  // interviewing everyone at once wins formally
  CHECK(trivial.degenerate);

  Schedule units;
  units.sizes = {1, 1, 1, 1, 1};
  CHECK(group_interview_problem<Rational>(units).probabilities() ==
        secretary_problem<Rational>(5).probabilities());

  Schedule bad;
  bad.sizes = {2, 0};
  CHECK_THROWS_AS(group_interview_problem<double>(bad),
                  InfeasibleConstraintsError);
  CHECK_THROWS_AS(group_interview_problem<double>(Schedule{}),
                  InfeasibleConstraintsError);
}

TEST_CASE("best schedule under pool constraints") {
  const auto best = best_schedule<Rational>(15, 5, {3, 3},
                                            std::vector<Index>{2, 3, 4});
  CHECK(best.schedule.sizes == std::vector<Index>{3, 3, 4, 3, 2});
  CHECK(best.solution.value == rat(437, 975));
  CHECK(best.examined == 6);

  // The winner dominates the other five permutations strictly.
  std::vector<Index> tail{2, 3, 4};
  std::sort(tail.begin(), tail.end());
  int strictly_worse = 0;
  do {
    Schedule cand;
    cand.sizes = {3, 3, tail[0], tail[1], tail[2]};
    if (cand.sizes == best.schedule.sizes) continue;
    const auto sol = solve(group_interview_problem<Rational>(cand));
    CHECK(sol.value < best.solution.value);
    ++strictly_worse;
  } while (std::next_permutation(tail.begin(), tail.end()));
  CHECK(strictly_worse == 5);
}

TEST_CASE("best schedule degenerate shapes") {
  const auto solo = best_schedule<double>(9, 1);
  CHECK(solo.schedule.sizes == std::vector<Index>{9});
  CHECK(solo.solution.value == 1.0);

  const auto forced = best_schedule<Rational>(3, 3);
  CHECK(forced.schedule.sizes == std::vector<Index>{1, 1, 1});
  CHECK(forced.solution.value == rat(1, 2));
  CHECK(forced.examined == 1);
}

TEST_CASE("best schedule rejects infeasible constraints") {
  CHECK_THROWS_AS(best_schedule<double>(3, 5), InfeasibleConstraintsError);
  CHECK_THROWS_AS(best_schedule<double>(10, 3, {4, 4, 4}),
                  InfeasibleConstraintsError);
  CHECK_THROWS_AS(
      best_schedule<double>(15, 5, {3, 3}, std::vector<Index>{2, 3, 9}),
      InfeasibleConstraintsError);
  CHECK_THROWS_AS(
      best_schedule<double>(15, 5, {3, 3}, std::vector<Index>{9}),
      InfeasibleConstraintsError);
  CHECK_THROWS_AS(best_schedule<double>(40, 12, {}, std::nullopt, 1000),
                  EnumerationCapError);
}

TEST_CASE("free composition search finds the single-group optimum") {
  // All compositions of 6 into 2 positive parts; (5,1) maximizes.
  const auto best = best_schedule<Rational>(6, 2);
  CHECK(best.examined == 5);
  Rational best_direct = 0;
  std::vector<Index> best_sizes;
  for (Index first = 1; first <= 5; ++first) {
    Schedule cand;
    cand.sizes = {first, 6 - first};
    const auto sol = solve(group_interview_problem<Rational>(cand));
    if (sol.value > best_direct) {
      best_direct = sol.value;
      best_sizes = cand.sizes;
    }
  }
  CHECK(best.solution.value == best_direct);
  CHECK(best.schedule.sizes == best_sizes);
}
