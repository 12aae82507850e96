#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oddstop/errors.hpp"
#include "oddstop/rational.hpp"

namespace oddstop {

using Index = std::int64_t;

// Arithmetic policy shared by the two modes. Exact mode compares exactly;
// float mode uses a fixed tolerance wherever the theory asks for exact
// equality (dual thresholds, value coincidences). The R(k,n) >= 1 test in
// solve() stays a plain arithmetic comparison in both modes.
template <class T>
struct ArithmeticTraits;

template <>
struct ArithmeticTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "float";
  static constexpr double equality_tolerance = 1e-12;

  static bool eq(double a, double b) {
    return std::fabs(a - b) <= equality_tolerance;
  }
  // a >= b up to the tolerance.
  static bool ge(double a, double b) { return a >= b - equality_tolerance; }
  static double ratio(Index num, Index den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double to_double_value(double v) { return v; }
  static std::string str(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  }
};

template <>
struct ArithmeticTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "exact";

  static bool eq(const Rational& a, const Rational& b) { return a == b; }
  static bool ge(const Rational& a, const Rational& b) { return a >= b; }
  static Rational ratio(Index num, Index den) { return Rational(num, den); }
  static double to_double_value(const Rational& v) { return to_double(v); }
  static std::string str(const Rational& v) { return format_rational(v); }
};

// A non-negative quantity extended with +infinity. Odds r_k = p_k / q_k are
// infinite when p_k = 1, and so is every tail sum containing such a term.
// The tag is structural rather than an IEEE infinity so that exact and
// float mode share one code path.
template <class T>
class Odds {
 public:
  Odds() : value_(0) {}
  explicit Odds(T v) : value_(std::move(v)) {}

  static Odds infinity() {
    Odds o;
    o.infinite_ = true;
    return o;
  }

  bool is_infinite() const { return infinite_; }
  // Meaningful only when finite.
  const T& finite_value() const { return value_; }

  bool at_least(const T& x) const { return infinite_ || value_ >= x; }
  bool more_than(const T& x) const { return infinite_ || value_ > x; }

  Odds& operator+=(const Odds& rhs) {
    if (rhs.infinite_) {
      infinite_ = true;
      value_ = T(0);
    } else if (!infinite_) {
      value_ += rhs.value_;
    }
    return *this;
  }
  friend Odds operator+(Odds a, const Odds& b) {
    a += b;
    return a;
  }

 private:
  T value_;
  bool infinite_ = false;
};

// A validated sequence of success probabilities p_1..p_n, n >= 1, each in
// [0, 1]. Derived views: q_k = 1 - p_k and the odds r_k = p_k / q_k
// (infinite when p_k = 1). Immutable after construction.
template <class T>
class OddsProblem {
 public:
  static OddsProblem from(std::vector<T> p) {
    if (p.empty()) {
      throw EmptySequenceError();
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] < T(0) || p[i] > T(1)) {
        throw ProbabilityOutOfRangeError(static_cast<Index>(i + 1),
                                         ArithmeticTraits<T>::str(p[i]));
      }
    }
    return OddsProblem(std::move(p));
  }

  Index n() const { return static_cast<Index>(p_.size()); }
  const std::vector<T>& probabilities() const { return p_; }

  const T& p(Index k) const { return p_[check(k) - 1]; }
  T q(Index k) const { return T(1) - p(k); }
  Odds<T> odds(Index k) const {
    const T& pk = p(k);
    if (pk == T(1)) return Odds<T>::infinity();
    return Odds<T>(pk / (T(1) - pk));
  }

  OddsProblem without_index(Index k) const {
    check(k);
    if (n() == 1) {
      throw EmptySequenceError();
    }
    std::vector<T> rest = p_;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k - 1));
    return OddsProblem(std::move(rest));
  }

 private:
  explicit OddsProblem(std::vector<T> p) : p_(std::move(p)) {}

  Index check(Index k) const {
    if (k < 1 || k > n()) throw IndexOutOfRangeError(k);
    return k;
  }

  std::vector<T> p_;
};

// Backward-pass tables over a problem, indexed 1..n+1:
//   Q[k] = prod_{j=k}^{n} q_j    (Q[n+1] = 1, the empty product)
//   R[k] = sum_{j=k}^{n} r_j     (R[n+1] = 0, infinite when any p_j = 1)
// last_certain[k] is the largest j >= k with p_j = 1, or 0 when there is
// none; it is nonzero exactly when R[k] is infinite (equivalently when
// Q[k] = 0).
template <class T>
struct SuffixTables {
  Index n = 0;
  std::vector<T> Q;              // size n + 2; slot 0 unused
  std::vector<Odds<T>> R;        // size n + 2; slot 0 unused
  std::vector<Index> last_certain;

  static SuffixTables build(const OddsProblem<T>& prob) {
    const Index n = prob.n();
    SuffixTables t;
    t.n = n;
    t.Q.assign(static_cast<std::size_t>(n) + 2, T(1));
    t.R.assign(static_cast<std::size_t>(n) + 2, Odds<T>(T(0)));
    t.last_certain.assign(static_cast<std::size_t>(n) + 2, 0);
    for (Index k = n; k >= 1; --k) {
      t.Q[k] = prob.q(k) * t.Q[k + 1];
      t.R[k] = prob.odds(k) + t.R[k + 1];
      t.last_certain[k] = prob.p(k) == T(1) ? k : t.last_certain[k + 1];
    }
    return t;
  }
};

// Solution of one n-problem. The induced strategy is: observe indices
// 1..n in order and stop at the first success at an index >= s; reaching n
// without stopping ends the play there.
template <class T>
struct ThresholdSolution {
  Index n = 1;
  Index s = 1;                  // optimal threshold
  T value{};                    // optimal win probability V(n)
  bool dual_threshold = false;  // s - 1 is optimal as well (R(s,n) = 1)
  bool degenerate = false;      // Q(s,n) = 0; value computed as Q(s+1,n)
};

// The odds algorithm. s is the largest k with R(k,n) >= 1 (infinite sums
// count), or 1 when even R(1,n) < 1, and V(n) = Q(s,n) R(s,n). When the
// success at s is certain the product degenerates to 0 * inf; the value is
// then Q(s+1,n), the probability that no later index succeeds. That suffix
// contains no certain index (its odds sum is below 1 by maximality of s).
template <class T>
ThresholdSolution<T> solve(const OddsProblem<T>& prob,
                           const SuffixTables<T>& t) {
  const Index n = prob.n();
  Index s = 1;
  for (Index k = n; k >= 1; --k) {
    if (t.R[k].at_least(T(1))) {
      s = k;
      break;
    }
  }
  ThresholdSolution<T> sol;
  sol.n = n;
  sol.s = s;
  sol.degenerate = t.R[s].is_infinite();
  if (sol.degenerate) {
    sol.value = t.Q[s + 1];
  } else {
    sol.value = t.Q[s] * t.R[s].finite_value();
  }
  sol.dual_threshold = s >= 2 && !t.R[s].is_infinite() &&
                       ArithmeticTraits<T>::eq(t.R[s].finite_value(), T(1));
  return sol;
}

template <class T>
ThresholdSolution<T> solve(const OddsProblem<T>& prob) {
  return solve(prob, SuffixTables<T>::build(prob));
}

// Win probability f(k,n) of the (generally suboptimal) rule "stop at the
// first success at an index >= k". Equals Q(k,n) R(k,n) while no certain
// index lies in k..n. Otherwise the rule never survives past the last
// certain index j*: stopping before j* loses for sure (a later success is
// guaranteed), so the rule wins exactly when indices k..j*-1 all fail and
// nothing after j* succeeds.
template <class T>
T threshold_value(const OddsProblem<T>& prob, const SuffixTables<T>& t,
                  Index k) {
  if (k < 1 || k > prob.n()) throw IndexOutOfRangeError(k);
  if (!t.R[k].is_infinite()) {
    return t.Q[k] * t.R[k].finite_value();
  }
  const Index last = t.last_certain[k];
  T reach(1);
  for (Index j = k; j < last; ++j) reach *= prob.q(j);
  return reach * t.Q[last + 1];
}

template <class T>
T threshold_value(const OddsProblem<T>& prob, Index k) {
  return threshold_value(prob, SuffixTables<T>::build(prob), k);
}

// [f(1,n), ..., f(n,n)]. The profile is unimodal -- non-decreasing up to
// its maximum, non-increasing after -- and attains its maximum at the
// threshold reported by solve().
template <class T>
std::vector<T> unimodal_profile(const OddsProblem<T>& prob) {
  const auto t = SuffixTables<T>::build(prob);
  std::vector<T> f;
  f.reserve(static_cast<std::size_t>(prob.n()));
  for (Index k = 1; k <= prob.n(); ++k) {
    f.push_back(threshold_value(prob, t, k));
  }
  return f;
}

}  // namespace oddstop
