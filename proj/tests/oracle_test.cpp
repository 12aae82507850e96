#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oddstop/core.hpp"
#include "oddstop/oracle.hpp"

using namespace oddstop;

namespace {

const std::vector<double> kFiveGame{0.1, 0.2, 0.24, 0.25, 0.251};

Rational rat(long long num, long long den) { return Rational(num, den); }

std::vector<double> random_problem(std::mt19937_64& rng, Index max_n,
                                   bool allow_certain) {
  std::uniform_int_distribution<Index> len(1, max_n);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<double> p(static_cast<std::size_t>(len(rng)));
  for (auto& v : p) {
    v = unif(rng);
    const double c = coin(rng);
    if (allow_certain) {
      if (c < 0.08) v = 1.0;
      if (c > 0.92) v = 0.0;
    }
  }
  return p;
}

}  // namespace

TEST_CASE("stop set construction and validation") {
  const auto prob = OddsProblem<double>::from(kFiveGame);
  CHECK(StopSet::threshold(2, 5).indices == std::vector<Index>{2, 3, 4, 5});

  StopSet bad;
  bad.indices = {2, 2};
  CHECK_THROWS_AS(stopset_value(prob, bad), InvalidStopSetError);
  bad.indices = {0};
  CHECK_THROWS_AS(stopset_value(prob, bad), InvalidStopSetError);
  bad.indices = {6};
  CHECK_THROWS_AS(stopset_value(prob, bad), InvalidStopSetError);
}

TEST_CASE("stop set values on the five game") {
  const auto prob = OddsProblem<double>::from(kFiveGame);
  CHECK(stopset_value(prob, StopSet::threshold(2, 5)) ==
        doctest::Approx(0.4215).epsilon(2e-4));
  CHECK(stopset_value(prob, StopSet{}) == 0.0);
  StopSet last;
  last.indices = {5};
  CHECK(stopset_value(prob, last) == doctest::Approx(0.251));
}

TEST_CASE("stop set value is exact in rational mode") {
  const auto prob = OddsProblem<Rational>::from(
      {rat(1, 10), rat(1, 5), rat(6, 25), rat(1, 4), rat(251, 1000)});
  CHECK(stopset_value(prob, StopSet::threshold(2, 5)) == rat(210773, 500000));
}

TEST_CASE("dynamic program on a single index") {
  const auto r = dp_value(OddsProblem<double>::from({0.5}));
  CHECK(r.value == doctest::Approx(0.5));
  CHECK(r.stop_at[1]);
}

TEST_CASE("dynamic program matches the five game") {
  const auto r = dp_value(OddsProblem<double>::from(kFiveGame));
  CHECK(r.value == doctest::Approx(0.4215).epsilon(2e-4));
  Index first_stop = 0;
  for (Index k = 1; k <= 5 && first_stop == 0; ++k) {
    if (r.stop_at[k]) first_stop = k;
  }
  CHECK(first_stop == 2);
}

TEST_CASE("dynamic program handles a certain middle index") {
  // Backward induction by hand: C[3] = 0, C[2] = 0.2, C[1] = 0.8,
  // C[0] = 0.3 * max(Q(2,3), 0.8) + 0.7 * 0.8 = 0.8.
  const auto r = dp_value(OddsProblem<double>::from({0.3, 1.0, 0.2}));
  CHECK(r.continuation[3] == 0.0);
  CHECK(r.continuation[2] == doctest::Approx(0.2));
  CHECK(r.continuation[1] == doctest::Approx(0.8));
  CHECK(r.value == doctest::Approx(0.8));
  CHECK_FALSE(r.stop_at[1]);
  CHECK(r.stop_at[2]);
  CHECK(r.stop_at[3]);
}

TEST_CASE("enumeration on two fair coins") {
  // By hand over the four subsets: {} -> 0, {1} -> 0.25, {2} -> 0.5,
  // {1,2} -> 0.5.
  const auto prob = OddsProblem<double>::from({0.5, 0.5});
  const auto r = enumerate_stopsets(prob);
  CHECK(r.value == doctest::Approx(0.5));
  CHECK(r.best.indices == std::vector<Index>{1, 2});  // lex-smallest maximizer
  CHECK(r.threshold_attains);
  CHECK(r.examined == 4);
}

TEST_CASE("enumeration on the five game and a single index") {
  const auto five = enumerate_stopsets(OddsProblem<double>::from(kFiveGame));
  CHECK(five.value == doctest::Approx(0.4215).epsilon(2e-4));
  CHECK(five.best.indices == std::vector<Index>{2, 3, 4, 5});
  CHECK(five.threshold_attains);

  const auto one = enumerate_stopsets(OddsProblem<double>::from({0.9}));
  CHECK(one.value == doctest::Approx(0.9));
  CHECK(one.best.indices == std::vector<Index>{1});
}

TEST_CASE("enumeration refuses horizons beyond the cap") {
  std::vector<double> p(21, 0.5);
  CHECK_THROWS_AS(enumerate_stopsets(OddsProblem<double>::from(p)),
                  HorizonTooLargeError);
  CHECK_NOTHROW(enumerate_stopsets(OddsProblem<double>::from(p), 21));
}

TEST_CASE("all-zero problems stay at value zero") {
  const auto prob = OddsProblem<double>::from({0.0, 0.0, 0.0});
  const auto r = enumerate_stopsets(prob);
  CHECK(r.value == 0.0);
  CHECK(r.best.indices.empty());
  CHECK(r.threshold_attains);
  CHECK(dp_value(prob).value == 0.0);
  CHECK(solve(prob).value == 0.0);
}

TEST_CASE("oracle equivalence on random float problems") {
  std::mt19937_64 rng(1315);
  for (int round = 0; round < 250; ++round) {
    const auto p = random_problem(rng, 12, true);
    const auto prob = OddsProblem<double>::from(p);
    const auto sol = solve(prob);
    const auto dp = dp_value(prob);
    const auto en = enumerate_stopsets(prob);
    CHECK(std::fabs(dp.value - sol.value) <= 1e-12);
    CHECK(std::fabs(en.value - sol.value) <= 1e-12);
    CHECK(en.threshold_attains);

    bool all_interior = true;
    for (double v : p) all_interior &= v < 1.0;
    if (all_interior) {
      // The rule is an up-set: once stopping is optimal it stays optimal.
      for (Index k = 1; k < prob.n(); ++k) {
        if (dp.stop_at[k]) CHECK(dp.stop_at[k + 1]);
      }
    } else if (sol.degenerate) {
      CHECK(dp.stop_at[sol.s]);
    }
  }
}

TEST_CASE("oracle equivalence is exact on random rational problems") {
  std::mt19937_64 rng(9001);
  std::uniform_int_distribution<Index> len(1, 9);
  std::uniform_int_distribution<long long> den(1, 10);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int round = 0; round < 100; ++round) {
    std::vector<Rational> p(static_cast<std::size_t>(len(rng)));
    for (auto& v : p) {
      const long long d = den(rng);
      std::uniform_int_distribution<long long> num(0, d);
      v = rat(num(rng), d);
      if (coin(rng) < 0.08) v = 1;
    }
    const auto prob = OddsProblem<Rational>::from(p);
    const auto sol = solve(prob);
    const auto dp = dp_value(prob);
    const auto en = enumerate_stopsets(prob);
    CHECK(dp.value == sol.value);
    CHECK(en.value == sol.value);
    CHECK(en.threshold_attains);
    // A threshold-form maximizer always exists; the solver's threshold is
    // one of them.
    CHECK(stopset_value(prob, StopSet::threshold(sol.s, prob.n())) ==
          sol.value);
  }
}
