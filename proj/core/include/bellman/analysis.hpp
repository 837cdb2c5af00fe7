#pragma once

// Numerical verification of the monotonicity of t(s1, .) in s2.
//
// For fixed s1 the constant rises on (s2'', s2') and falls on (s2', 1), where
// s2' = hcurve_q(omega_p(s1)) is the critical point and t(s1, s2') = omega_p(s1).
// In regime A the sign of dt/ds2 equals the sign of
//
//   F(tau*) - (p-q) A(s2)
//
// because the factor multiplying dt/ds2 in the differentiated balance
// Gamma = Delta is (p-q) t^(p-q-1) Delta1 > 0. In regime B, t = t0 and
// dt0/ds2 > 0 by implicit differentiation of the t0 equation.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bellman/constant.hpp"

namespace bellman {

enum class Sign : int { negative = -1, zero = 0, positive = 1 };

char to_char(Sign s) noexcept;

/// Sign of v, reported as zero when |v| <= dead_band.
Sign sign_of(double v, double dead_band = 0.0) noexcept;

/// s2' = hcurve(omega(s1, p), q). Requires 0 < s1 < 1.
double s2_critical(double s1, const Exponents& e);

/// Relative width of the zero band around the predictor's root.
inline constexpr double kPredictorDeadBand = 1e-9;

struct SignPrediction {
  Sign sign = Sign::zero;
  Regime regime = Regime::A;
  // Regime A: F(tau*) - (p-q) A(s2). Regime B: dt0/ds2.
  double indicator = 0.0;
  double f_tau = 0.0;  // NaN in regime B
  double a_s2 = 0.0;
};

SignPrediction predict_dt_ds2(const DomainPoint& s, const Exponents& e);
SignPrediction predict_dt_ds2(const DomainPoint& s, const BellmanResult& at,
                              const Exponents& e);

/// 1e-6 * min(s2 - s1^((q-1)/(p-1)), 1 - s2, 1).
double default_fd_step(const DomainPoint& s, const Exponents& e);

/// Central difference of t in s2. Throws DomainError if s2 +- h leaves the region.
double dt_ds2_fd(const DomainPoint& s, const Exponents& e, std::optional<double> h = {});

/// Values of |dt_ds2_fd| below this are indistinguishable from root-finding noise.
double fd_noise_floor(double t, double h) noexcept;

struct Violation {
  double at;
  std::string reason;
};

struct ScanRow {
  double s2 = 0.0;
  BellmanResult result;
  double f_tau = 0.0;  // NaN in regime B
  double a_s2 = 0.0;
  Sign pred = Sign::zero;
  Sign fd_sign = Sign::zero;
  double fd = 0.0;
};

struct MonotonicityReport {
  double s1 = 0.0;
  Exponents exps{2.0, 1.5};
  std::vector<ScanRow> rows;
  double s2_critical = 0.0;
  double peak_s2 = 0.0;
  double peak_t = 0.0;
  double omega_p = 0.0;
  int fd_sign_changes = 0;
  double sign_change_s2 = 0.0;  // midpoint of the first + to - transition
  int compared = 0;             // rows where both signs are nonzero
  int agreed = 0;
  std::vector<Violation> violations;

  std::vector<double> grid() const;
  std::vector<double> t_values() const;
  double agreement() const noexcept { return compared ? double(agreed) / compared : 1.0; }
};

/// Grid inset from the region boundary and from s2 = 1.
inline constexpr double kGridInset = 1e-4;

/// Evaluates t on a uniform n-point s2 grid and records every departure from
/// the rise-then-fall pattern. Requires 0 < s1 < 1 and n >= 16.
MonotonicityReport scan_monotonicity(double s1, const Exponents& e, int n,
                                     double inset = kGridInset);

/// |tau(s1, s2', omega_p(s1)) - hcurve_q(omega_p(s1))|.
double check_critical_tau(double s1, const Exponents& e);

/// |F(tau') - (p-q) A(s2')| / max(1, |F(tau')|).
double check_critical_balance(double s1, const Exponents& e);

/// |t(s1, s2') - omega_p(s1)|.
double check_peak_value(double s1, const Exponents& e);

struct GridCheck {
  std::vector<Violation> violations;
  std::vector<double> skipped;  // points hitting the singularity guard
  bool ok() const noexcept { return violations.empty(); }
};

/// A(s2) strictly increasing along the grid and its gamma form strictly
/// decreasing with negative derivative.
GridCheck check_a_monotone(double q, std::span<const double> grid);

/// F(tau) strictly increasing along the grid and its gamma form strictly decreasing.
GridCheck check_f_monotone(const Exponents& e, std::span<const double> grid);

struct BoundaryMargin {
  double margin = 0.0;  // q + (p-q) s1 - p s1^((p-q)/(p-1))
  double g = 0.0;       // -margin
  double g_at_one = 0.0;
};

BoundaryMargin boundary_margin(double s1, const Exponents& e);

/// |(p-q)(t-1)/(q-(q-1)t) - (t^(p-q) - H_p(t)/H_q(t)) t^(q-p)| relative to
/// max(1, lhs). Requires 1 < t < p/(p-1).
double check_endpoint_identity(double t, const Exponents& e);

/// |tau_minus_tq - (tau - t^q)| / max(1, |tau - t^q|).
double check_tau_gap(const DomainPoint& s, double t, const Exponents& e);

/// Delta1 rewritten through the balance Gamma = Delta; agrees with delta1()
/// only at the sharp constant.
double delta1_via_balance(const DomainPoint& s, double t, const Exponents& e);

/// Margins of the inequality chain that proves dt/ds2 > 0 left of s2'.
struct RisingBranchMargins {
  double balance = 0.0;         // F(tau) - (p-q) A(s2)
  double omega_order = 0.0;     // omega_p(s1) - omega_q(tau)
  double alpha_ratio = 0.0;     // (p-q) alpha(s2)/(t^(p-q) - s1/s2) - q/omega_p^(p-q)
  double closed_form = 0.0;     // same with alpha(s2') in closed form
  double critical_bound = 0.0;  // t replaced by omega_p(s1)
  double critical_equality = 0.0;  // s2 replaced by s2'; zero up to rounding
  double alpha_closed_form_error = 0.0;

  double min_margin() const noexcept;
};

/// Requires regime A at s and s2 < s2'.
RisingBranchMargins rising_branch_margins(const DomainPoint& s, const Exponents& e);

/// Left end of the regime-A strip for this s1, found by bisection on the
/// regime tag. Equals s1^((q-1)/(p-1)) when regime A already holds there.
double regime_a_threshold(double s1, const Exponents& e);

struct CriticalMoment {
  double y0 = 0.0;
  double lower = 0.0;     // x^q / kappa^(q-1)
  double upper = 0.0;     // x^((p-q)/(p-1)) z^((q-1)/(p-1))
  double s2_at_y0 = 0.0;  // equals s2'
  bool within_bounds = false;
};

/// The y at which t, viewed as a function of the q-th moment, peaks.
CriticalMoment critical_moment(double x, double z, double kappa, const Exponents& e);

/// Sign of d t / d y at m: the opposite of the sign of dt/ds2.
Sign y_side_sign(const MomentTriple& m, const Exponents& e);

}  // namespace bellman
