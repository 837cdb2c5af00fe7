#pragma once

// Elementary functions the sharp constant is built from.
//
//   hcurve(z, r)   = r z^(r-1) - (r-1) z^r, decreasing from 1 to 0 on
//                    [1, r/(r-1)]
//   omega(s, r)    = the inverse of hcurve on that interval
//   alpha(s2, q)   = omega_q(s2)^q / s2 - 1
//   a_curve(s2, q) = s2 (omega/((q-1)(omega-1)) + omega^q / s2), omega = omega_q(s2)
//   f_curve(tau)   = tau/(1-w) (p - q(p-1)/(q-1) w) - q (p w^(q-1) - (p-1) w^q),
//                    w = omega_q(tau)
//
// The *_gamma variants are the same functions reparametrized by
// gamma = omega_q(s), i.e. s = hcurve(gamma, q).
//
// Everything here is a pure function of its arguments.

#include "bellman/errors.hpp"

namespace bellman {

/// The exponent pair (p, q) with 1 < q < p.
class Exponents {
 public:
  static constexpr double kDefaultMinSeparation = 1e-6;

  /// Throws DomainError unless 1 < q < p and p - q >= min_separation.
  Exponents(double p, double q, double min_separation = kDefaultMinSeparation);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

  friend bool operator==(const Exponents&, const Exponents&) = default;

 private:
  double p_;
  double q_;
};

/// Any formula dividing by (omega - 1) raises SingularityError below this.
inline constexpr double kSingularityGuard = 1e-10;

/// Right end r/(r-1) of the interval on which hcurve is inverted.
double omega_upper(double r);

double hcurve(double z, double r);

/// Inverse of hcurve on [1, r/(r-1)]. Requires 0 <= s <= 1.
double omega(double s, double r);

double alpha(double s2, double q);

/// d alpha / d s2 = (1/s2) [ -w/((q-1)(w-1)) - w^q/s2 ], w = omega_q(s2).
double alpha_prime(double s2, double q);

/// Strictly increasing on (0, 1); equals -s2^2 alpha'(s2).
double a_curve(double s2, double q);

/// a_curve in terms of gamma in (1, q/(q-1)); strictly decreasing.
double a_curve_gamma(double gamma, double q);

/// Closed-form derivative of a_curve_gamma: -hcurve(gamma, q) / ((q-1)(gamma-1)^2).
double a_curve_gamma_prime(double gamma, double q);

/// Strictly increasing on (0, 1).
double f_curve(double tau, const Exponents& e);

/// f_curve in terms of gamma in (1, q/(q-1)); strictly decreasing.
double f_curve_gamma(double gamma, const Exponents& e);

}  // namespace bellman
