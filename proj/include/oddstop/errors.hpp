#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace oddstop {

// Base of all library errors. Input validation problems derive from
// InputError (CLI exit code 1); InternalCheckError signals that a computed
// result contradicts a structural guarantee of the theory, i.e. a solver
// defect (CLI exit code 2).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class InternalCheckError : public Error {
 public:
  using Error::Error;
};

class EmptySequenceError : public InputError {
 public:
  EmptySequenceError() : InputError("probability sequence must be non-empty") {}
};

class ProbabilityOutOfRangeError : public InputError {
 public:
  ProbabilityOutOfRangeError(std::int64_t index, const std::string& value)
      : InputError("p[" + std::to_string(index) + "] = " + value +
                    " is outside [0, 1]"),
        index_(index) {}
  std::int64_t index() const { return index_; }

 private:
  std::int64_t index_;
};

class IndexOutOfRangeError : public InputError {
 public:
  explicit IndexOutOfRangeError(std::int64_t index)
      : InputError("index " + std::to_string(index) + " is out of range"),
        index_(index) {}
  std::int64_t index() const { return index_; }

 private:
  std::int64_t index_;
};

// A finite generator was queried beyond its length.
class GeneratorRangeError : public InputError {
 public:
  GeneratorRangeError(std::int64_t index, std::int64_t length)
      : InputError("sequence has " + std::to_string(length) +
                    " entries; index " + std::to_string(index) +
                    " is unavailable"),
        index_(index) {}
  std::int64_t index() const { return index_; }

 private:
  std::int64_t index_;
};

class PreconditionNotMetError : public InputError {
 public:
  using InputError::InputError;
};

class InvalidStopSetError : public InputError {
 public:
  using InputError::InputError;
};

class HorizonTooLargeError : public InputError {
 public:
  HorizonTooLargeError(std::int64_t n, std::int64_t cap)
      : InputError("horizon " + std::to_string(n) +
                    " exceeds the enumeration cap " + std::to_string(cap)),
        n_(n),
        cap_(cap) {}
  std::int64_t n() const { return n_; }
  std::int64_t cap() const { return cap_; }

 private:
  std::int64_t n_;
  std::int64_t cap_;
};

class InfiniteOddsError : public InputError {
 public:
  using InputError::InputError;
};

class InvalidStrategyError : public InputError {
 public:
  using InputError::InputError;
};

class EstimatorFailureError : public InputError {
 public:
  using InputError::InputError;
};

class InfeasibleConstraintsError : public InputError {
 public:
  using InputError::InputError;
};

class EnumerationCapError : public InputError {
 public:
  EnumerationCapError(std::uint64_t count, std::uint64_t cap)
      : InputError("candidate count " + std::to_string(count) +
                    " exceeds the cap " + std::to_string(cap)) {}
};

class CertificateFailureError : public InternalCheckError {
 public:
  CertificateFailureError(std::int64_t n, const std::string& what)
      : InternalCheckError("certificate failed at n = " + std::to_string(n) +
                            ": " + what),
        n_(n) {}
  std::int64_t n() const { return n_; }

 private:
  std::int64_t n_;
};

class InconsistentWithTheoremError : public InternalCheckError {
 public:
  using InternalCheckError::InternalCheckError;
};

}  // namespace oddstop
