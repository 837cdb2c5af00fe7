#include "bellman/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "bellman/roots.hpp"

namespace bellman {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

void require_exponent(double r) {
  if (!std::isfinite(r) || !(r > 1.0))
    throw DomainError(fmt("exponent r = %.17g must be finite and > 1", r));
}

void require_open_unit(double s, const char* name) {
  if (!std::isfinite(s) || !(s > 0.0) || !(s < 1.0))
    throw DomainError(std::string(name) + fmt(" = %.17g must lie in (0, 1)", s));
}

double guarded_gap(double w, const char* where) {
  const double gap = w - 1.0;
  if (!(gap >= kSingularityGuard))
    throw SingularityError(std::string(where) +
                               fmt(": omega - 1 = %.3g is below the singularity guard",
                                   gap),
                           gap);
  return gap;
}

void require_gamma(double gamma, double q) {
  if (!std::isfinite(gamma) || !(gamma > 1.0) || !(gamma < omega_upper(q)))
    throw DomainError(fmt("gamma = %.17g must lie in (1, q/(q-1)) for q = %.17g", gamma, q));
}

}  // namespace

Exponents::Exponents(double p, double q, double min_separation) : p_(p), q_(q) {
  if (!std::isfinite(p) || !std::isfinite(q))
    throw DomainError("exponents must be finite");
  if (!(q > 1.0))
    throw DomainError(fmt("q = %.17g must exceed 1", q));
  if (!(p > q))
    throw DomainError(fmt("p = %.17g must exceed q = %.17g", p, q));
  if (p - q < min_separation)
    throw DomainError(fmt("p - q = %.3g is below the minimal separation %.3g",
                          p - q, min_separation));
}

double omega_upper(double r) { return r / (r - 1.0); }

double hcurve(double z, double r) {
  if (!std::isfinite(z) || z < 0.0)
    throw DomainError(fmt("hcurve argument z = %.17g must be finite and >= 0", z));
  require_exponent(r);
  return r * std::pow(z, r - 1.0) - (r - 1.0) * std::pow(z, r);
}

double omega(double s, double r) {
  require_exponent(r);
  if (!std::isfinite(s) || s < 0.0 || s > 1.0)
    throw DomainError(fmt("omega argument s = %.17g must lie in [0, 1]", s));
  const double hi = omega_upper(r);
  if (s == 1.0) return 1.0;
  if (s == 0.0) return hi;

  auto residual = [&](double z) { return hcurve(z, r) - s; };
  // Endpoint values can miss 1 and 0 by an ulp; snap instead of failing.
  if (residual(1.0) <= 0.0) return 1.0;
  if (residual(hi) >= 0.0) return hi;
  return solve_bracketed(residual, 1.0, hi);
}

double alpha(double s2, double q) {
  require_open_unit(s2, "s2");
  return std::pow(omega(s2, q), q) / s2 - 1.0;
}

double alpha_prime(double s2, double q) {
  require_open_unit(s2, "s2");
  const double w = omega(s2, q);
  const double gap = guarded_gap(w, "alpha_prime");
  return (-w / ((q - 1.0) * gap) - std::pow(w, q) / s2) / s2;
}

double a_curve(double s2, double q) {
  require_open_unit(s2, "s2");
  const double w = omega(s2, q);
  const double gap = guarded_gap(w, "a_curve");
  return s2 * (w / ((q - 1.0) * gap) + std::pow(w, q) / s2);
}

double a_curve_gamma(double gamma, double q) {
  require_exponent(q);
  require_gamma(gamma, q);
  const double gap = guarded_gap(gamma, "a_curve_gamma");
  return hcurve(gamma, q) * gamma / ((q - 1.0) * gap) + std::pow(gamma, q);
}

double a_curve_gamma_prime(double gamma, double q) {
  require_exponent(q);
  require_gamma(gamma, q);
  const double gap = guarded_gap(gamma, "a_curve_gamma_prime");
  return -hcurve(gamma, q) / ((q - 1.0) * gap * gap);
}

namespace {

// Shared body of f_curve and f_curve_gamma once tau and w = omega_q(tau) are known.
double f_body(double tau, double w, const Exponents& e) {
  const double p = e.p();
  const double q = e.q();
  const double lead = tau / (1.0 - w) * (p - q * (p - 1.0) / (q - 1.0) * w);
  return lead - q * (p * std::pow(w, q - 1.0) - (p - 1.0) * std::pow(w, q));
}

}  // namespace

double f_curve(double tau, const Exponents& e) {
  require_open_unit(tau, "tau");
  const double w = omega(tau, e.q());
  guarded_gap(w, "f_curve");
  return f_body(tau, w, e);
}

double f_curve_gamma(double gamma, const Exponents& e) {
  require_gamma(gamma, e.q());
  guarded_gap(gamma, "f_curve_gamma");
  return f_body(hcurve(gamma, e.q()), gamma, e);
}

}  // namespace bellman
