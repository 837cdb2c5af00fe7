#include "bellman/constant.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "bellman/roots.hpp"

namespace bellman {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[240];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

double ratio(const DomainPoint& s) { return s.s1 / s.s2; }

double tau_denominator(const DomainPoint& s, double t, const Exponents& e) {
  const double d = std::pow(t, e.p() - e.q()) - ratio(s);
  if (!(d > 0.0))
    throw DomainError(fmt("t^(p-q) - s1/s2 = %.17g must be positive (t = %.17g)", d, t));
  return d;
}

double snapped_tau(const DomainPoint& s, double t, const Exponents& e) {
  double tau = tau_of(s, t, e);
  if (tau > 1.0 && tau <= 1.0 + kTauSnap) tau = 1.0;
  if (!(tau > 0.0) || !(tau <= 1.0)) throw TauRangeError(t, tau);
  return tau;
}

double gamma_with_tau(const DomainPoint& s, double t, double tau, const Exponents& e) {
  const double p = e.p();
  const double q = e.q();
  const double w = omega(tau, q);
  const double inner = p * std::pow(w, q - 1.0) - (p - 1.0) * std::pow(w, q);
  return q * inner * (std::pow(t, p - q) - ratio(s));
}

// G(t) - rhs for the t0 equation.
double t_zero_residual(const DomainPoint& s, double t, const Exponents& e) {
  const double p = e.p();
  const double q = e.q();
  const double k = p / (p - q);
  const double rhs = s.s1 - k * ratio(s);
  return std::pow(t, p) - k * std::pow(t, p - q) - rhs;
}

}  // namespace

const char* to_string(Regime r) noexcept { return r == Regime::A ? "A" : "B"; }

DomainCheck in_domain(double s1, double s2, const Exponents& e) {
  if (!std::isfinite(s1) || !std::isfinite(s2)) return {false, "s1 and s2 must be finite"};
  if (!(s1 > 0.0)) return {false, "s1 > 0"};
  if (!(s2 < 1.0)) return {false, "s2 < 1"};
  const double lower = std::pow(s1, (e.q() - 1.0) / (e.p() - 1.0));
  if (!(lower <= s2)) return {false, "s1^((q-1)/(p-1)) <= s2"};
  return {};
}

DomainPoint moments_to_domain(const MomentTriple& m, const Exponents& e) {
  const double p = e.p();
  const double q = e.q();
  if (!(m.x > 0.0) || !(m.y > 0.0) || !(m.z > 0.0) || !(m.kappa > 0.0) ||
      !std::isfinite(m.x) || !std::isfinite(m.y) || !std::isfinite(m.z) ||
      !std::isfinite(m.kappa))
    throw DomainError("moments x, y, z and kappa must be finite and positive");

  const double z_floor = std::pow(m.x, p) / std::pow(m.kappa, p - 1.0);
  if (!(z_floor < m.z))
    throw DomainError(fmt("x^p/kappa^(p-1) < z violated (%.17g >= %.17g)", z_floor, m.z));
  const double y_floor = std::pow(m.x, q) / std::pow(m.kappa, q - 1.0);
  if (!(y_floor < m.y))
    throw DomainError(fmt("x^q/kappa^(q-1) < y violated (%.17g >= %.17g)", y_floor, m.y));
  const double y_ceil =
      std::pow(m.x, (p - q) / (p - 1.0)) * std::pow(m.z, (q - 1.0) / (p - 1.0));
  if (!(m.y <= y_ceil))
    throw DomainError(fmt(
        "y <= x^((p-q)/(p-1)) z^((q-1)/(p-1)) violated (%.17g > %.17g)", m.y, y_ceil));

  const DomainPoint s{z_floor / m.z, y_floor / m.y};
  if (auto check = in_domain(s.s1, s.s2, e); !check)
    throw DomainError("mapped point violates " + check.reason);
  return s;
}

double tau_of(const DomainPoint& s, double t, const Exponents& e) {
  const double p = e.p();
  const double q = e.q();
  return (p - q) / p * (std::pow(t, p) - s.s1) / tau_denominator(s, t, e);
}

double tau_minus_tq(const DomainPoint& s, double t, const Exponents& e) {
  // Numerator is exactly e1(s, t).
  const double d = tau_denominator(s, t, e);
  return e1(s, t, e) / (e.p() * d);
}

double t_zero(const DomainPoint& s, const Exponents& e) {
  if (auto check = in_domain(s.s1, s.s2, e); !check)
    throw DomainError("point outside the admissible region: " + check.reason);
  auto g = [&](double t) { return t_zero_residual(s, t, e); };
  const double g1 = g(1.0);
  if (!(g1 < 0.0))
    throw DomainError(fmt("inconsistent region: G(1) - rhs = %.17g is not negative", g1));
  double hi = 2.0;
  while (g(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e6) throw NumericError("no upper bracket for t0", 1.0, hi);
  }
  return solve_bracketed(g, 1.0, hi);
}

double gamma_side(const DomainPoint& s, double t, const Exponents& e) {
  return gamma_with_tau(s, t, snapped_tau(s, t, e), e);
}

double delta_side(const DomainPoint& s, const Exponents& e) {
  return (e.p() - e.q()) * s.s1 * alpha(s.s2, e.q());
}

double delta1(const DomainPoint& s, double t, const Exponents& e) {
  const double p = e.p();
  const double q = e.q();
  const double tau = snapped_tau(s, t, e);
  const double w = omega(tau, q);
  const double gap = w - 1.0;
  if (!(gap >= kSingularityGuard))
    throw SingularityError(fmt("delta1: omega_q(tau) - 1 = %.3g is below the guard", gap),
                           gap);
  const double slope = p - q * (p - 1.0) / (q - 1.0) * w;
  return q * (p - (p - 1.0) * w) * std::pow(w, q - 1.0) +
         slope * tau_minus_tq(s, t, e) / gap;
}

double e1(const DomainPoint& s, double t, const Exponents& e) {
  const double p = e.p();
  const double q = e.q();
  return p * ratio(s) * std::pow(t, q) - q * std::pow(t, p) - (p - q) * s.s1;
}

BellmanResult sharp_constant(const DomainPoint& s, const Exponents& e) {
  BellmanResult r;
  r.t0 = t_zero(s, e);
  const double delta = delta_side(s, e);
  const double t0 = r.t0;
  // tau(t0) = 1 exactly; evaluate the right endpoint on that identity.
  auto phi = [&](double t) {
    if (t == t0) return gamma_with_tau(s, t0, 1.0, e) - delta;
    return gamma_side(s, t, e) - delta;
  };
  const double phi_lo = phi(1.0);
  const double phi_hi = phi(t0);

  if (phi_hi == 0.0 || std::signbit(phi_lo) != std::signbit(phi_hi) || phi_lo == 0.0) {
    r.regime = Regime::A;
    r.t = bisect(phi, 1.0, t0);
    r.tau = r.t == t0 ? 1.0 : snapped_tau(s, r.t, e);
    r.residual = std::fabs(phi(r.t));
  } else {
    r.regime = Regime::B;
    r.t = t0;
    r.tau = 1.0;
    r.residual = std::fabs(t_zero_residual(s, t0, e));
  }

  try {
    r.delta1 = r.tau < 1.0 ? delta1(s, r.t, e) : std::numeric_limits<double>::infinity();
  } catch (const SingularityError&) {
    r.delta1 = std::numeric_limits<double>::infinity();
  }
  r.e1 = e1(s, r.t, e);
  return r;
}

}  // namespace bellman
