#pragma once

// The admissible region, the moment mapping and the sharp constant t(s1, s2).
//
// For (s1, s2) with 0 < s1^(q-1) <= s2^(p-1) < 1 the constant is defined
// through
//
//   tau(t)   = (p-q)/p * (t^p - s1) / (t^(p-q) - s1/s2)
//   Gamma(t) = q (p w^(q-1) - (p-1) w^q) (t^(p-q) - s1/s2),  w = omega_q(tau(t))
//   Delta    = (p-q) s1 alpha(s2)
//   t0       : t0^p - p/(p-q) t0^(p-q) = s1 - p/(p-q) s1/s2,  t0 >= 1
//
// If Gamma - Delta changes sign on [1, t0] the constant is that root
// (regime A), otherwise it is t0 (regime B). tau(t0) = 1 identically, so
// Gamma(t0) reduces to q (t0^(p-q) - s1/s2).

#include <string>

#include "bellman/kernel.hpp"

namespace bellman {

struct DomainPoint {
  double s1;
  double s2;
};

/// Integral data of a test function h on (0, kappa].
struct MomentTriple {
  double x;      // integral of h
  double y;      // integral of h^q
  double z;      // integral of h^p
  double kappa;  // length of the interval
};

struct DomainCheck {
  bool ok = true;
  std::string reason;  // names the violated constraint when !ok

  explicit operator bool() const noexcept { return ok; }
};

DomainCheck in_domain(double s1, double s2, const Exponents& e);

/// Checks the moment window and returns (x^p/(kappa^(p-1) z), x^q/(kappa^(q-1) y)).
/// Throws DomainError naming the failed inequality.
DomainPoint moments_to_domain(const MomentTriple& m, const Exponents& e);

/// Values of tau within this distance above 1 are rounding noise at t0 and
/// are snapped to 1.
inline constexpr double kTauSnap = 1e-12;

double tau_of(const DomainPoint& s, double t, const Exponents& e);

/// tau(t) - t^q written over the common denominator; exact cancellation of
/// the leading t^p terms.
double tau_minus_tq(const DomainPoint& s, double t, const Exponents& e);

/// Root t >= 1 of t^p - p/(p-q) t^(p-q) = s1 - p/(p-q) s1/s2.
double t_zero(const DomainPoint& s, const Exponents& e);

/// Gamma(t). Throws TauRangeError if tau(t) is outside (0, 1].
double gamma_side(const DomainPoint& s, double t, const Exponents& e);

/// Delta = (p-q) s1 alpha(s2).
double delta_side(const DomainPoint& s, const Exponents& e);

/// Positive at the sharp constant; +infinity is its limit as omega_q(tau) -> 1.
double delta1(const DomainPoint& s, double t, const Exponents& e);

/// p (s1/s2) t^q - q t^p - (p-q) s1; negative on the region for t >= 1.
double e1(const DomainPoint& s, double t, const Exponents& e);

enum class Regime { A, B };

const char* to_string(Regime r) noexcept;

struct BellmanResult {
  double t = 0.0;
  Regime regime = Regime::A;
  double t0 = 0.0;
  double tau = 0.0;       // tau at t; exactly 1 in regime B
  double residual = 0.0;  // |Gamma - Delta| (A) or |G(t0) - rhs| (B)
  double delta1 = 0.0;    // +inf when omega_q(tau) is within the guard of 1
  double e1 = 0.0;
};

/// The sharp constant at s. Throws DomainError if s is not admissible,
/// TauRangeError if tau leaves (0, 1] on [1, t0], NumericError if a root
/// search fails.
BellmanResult sharp_constant(const DomainPoint& s, const Exponents& e);

}  // namespace bellman
