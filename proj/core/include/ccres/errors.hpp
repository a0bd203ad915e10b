// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <stdexcept>
#include <string>

namespace ccres {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where an operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Floating range exceeded; the caller must use the scaled interface.
class RangeError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// Non-finite or malformed input data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Evaluation exactly at a pole of a kernel.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Iterative procedure failed to converge. Carries the last two estimates.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : Error(what), previous_(previous), last_(last) {}
  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

/// A metric lost positive definiteness.
class MetricDegeneracyError : public Error {
 public:
  MetricDegeneracyError(const std::string& what, double r) : Error(what), r_(r) {}
  double r() const noexcept { return r_; }

 private:
  double r_;
};

/// Denominator of a ratio below the absolute floor.
class DegenerateDenominatorError : public Error {
 public:
  using Error::Error;
};

class SupportError : public Error {
 public:
  using Error::Error;
};

/// Time step violates the CFL bound.
class StabilityError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Numerical solver failure; carries a condition estimate when available.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what, double condition = 0.0)
      : Error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace ccres
