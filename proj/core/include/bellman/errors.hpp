#pragma once

#include <stdexcept>
#include <string>

namespace bellman {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input lies outside the region where a quantity is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to converge. Carries the last bracket.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double lo, double hi);

  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// A formula with (omega - 1) in a denominator was evaluated too close to
/// omega = 1. Raised instead of returning a huge value.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double distance);

  double distance() const noexcept { return distance_; }

 private:
  double distance_;
};

/// The auxiliary ratio tau left (0, 1] at some t; omega_q is undefined there.
class TauRangeError : public DomainError {
 public:
  TauRangeError(double t, double tau);

  double t() const noexcept { return t_; }
  double tau() const noexcept { return tau_; }

 private:
  double t_;
  double tau_;
};

}  // namespace bellman
