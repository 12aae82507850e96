#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oddstop/core.hpp"

namespace oddstop {

enum class Monotonicity { None, NonIncreasing, NonDecreasing };

// An underlying sequence p_1, p_2, ... produced on demand. Finite sequences
// carry a length and reject queries beyond it. A declared monotonicity is an
// assertion validated lazily over every queried prefix; generators may be
// infinite, so it can never be checked globally.
template <class T>
class Sequence {
 public:
  using Generator = std::function<T(Index)>;

  Sequence(Generator gen, std::optional<Index> length, Monotonicity declared,
           std::string name)
      : gen_(std::move(gen)),
        length_(length),
        declared_(declared),
        name_(std::move(name)) {}

  static Sequence explicit_list(std::vector<T> p,
                                Monotonicity declared = Monotonicity::None,
                                std::string name = "explicit") {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] < T(0) || p[i] > T(1)) {
        throw ProbabilityOutOfRangeError(static_cast<Index>(i + 1),
                                         ArithmeticTraits<T>::str(p[i]));
      }
    }
    auto data = std::make_shared<const std::vector<T>>(std::move(p));
    const Index len = static_cast<Index>(data->size());
    return Sequence([data](Index k) { return (*data)[k - 1]; }, len, declared,
                    std::move(name));
  }

  static Sequence constant(T p) {
    if (p < T(0) || p > T(1)) {
      throw ProbabilityOutOfRangeError(1, ArithmeticTraits<T>::str(p));
    }
    return Sequence([p](Index) { return p; }, std::nullopt,
                    Monotonicity::None, "constant");
  }

  // p_k = 1/k: the chance that the k-th of k exchangeable candidates is the
  // best seen so far.
  static Sequence secretary() {
    return Sequence([](Index k) { return ArithmeticTraits<T>::ratio(1, k); },
                    std::nullopt, Monotonicity::NonIncreasing, "secretary");
  }

  static Sequence custom(Generator gen, std::optional<Index> length = {},
                         Monotonicity declared = Monotonicity::None,
                         std::string name = "custom") {
    return Sequence(std::move(gen), length, declared, std::move(name));
  }

  std::optional<Index> length() const { return length_; }
  Monotonicity declared() const { return declared_; }
  const std::string& name() const { return name_; }

  // Entry k, validated to lie in [0, 1].
  T at(Index k) const {
    if (k < 1) throw IndexOutOfRangeError(k);
    if (length_ && k > *length_) throw GeneratorRangeError(k, *length_);
    T v = gen_(k);
    if (v < T(0) || v > T(1)) {
      throw ProbabilityOutOfRangeError(k, ArithmeticTraits<T>::str(v));
    }
    return v;
  }

  // The first n entries as a problem. Checks the declared monotonicity over
  // the generated prefix.
  OddsProblem<T> prefix(Index n) const {
    if (n < 1) throw IndexOutOfRangeError(n);
    std::vector<T> p;
    p.reserve(static_cast<std::size_t>(n));
    for (Index k = 1; k <= n; ++k) {
      T v = at(k);
      if (k > 1) {
        if (declared_ == Monotonicity::NonIncreasing && v > p.back()) {
          throw PreconditionNotMetError(
              "sequence '" + name_ + "' declared non-increasing but p[" +
              std::to_string(k) + "] > p[" + std::to_string(k - 1) + "]");
        }
        if (declared_ == Monotonicity::NonDecreasing && v < p.back()) {
          throw PreconditionNotMetError(
              "sequence '" + name_ + "' declared non-decreasing but p[" +
              std::to_string(k) + "] < p[" + std::to_string(k - 1) + "]");
        }
      }
      p.push_back(std::move(v));
    }
    return OddsProblem<T>::from(std::move(p));
  }

  // The sequence with entry k removed and later entries shifted down.
  // Deletion preserves any declared monotonicity.
  Sequence without_index(Index k) const {
    if (k < 1) throw IndexOutOfRangeError(k);
    if (length_ && k > *length_) throw IndexOutOfRangeError(k);
    Sequence base = *this;
    Generator gen = [base, k](Index j) {
      return base.at(j < k ? j : j + 1);
    };
    std::optional<Index> len =
        length_ ? std::optional<Index>(*length_ - 1) : std::nullopt;
    return Sequence(std::move(gen), len, declared_, name_ + "-deleted");
  }

 private:
  Generator gen_;
  std::optional<Index> length_;
  Monotonicity declared_;
  std::string name_;
};

}  // namespace oddstop
