#include "bellman/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace bellman {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[240];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

void require_s1(double s1) {
  if (!std::isfinite(s1) || !(s1 > 0.0) || !(s1 < 1.0))
    throw DomainError(fmt("s1 = %.17g must lie in (0, 1)", s1));
}

double region_floor(double s1, const Exponents& e) {
  return std::pow(s1, (e.q() - 1.0) / (e.p() - 1.0));
}

}  // namespace

char to_char(Sign s) noexcept {
  switch (s) {
    case Sign::negative: return '-';
    case Sign::positive: return '+';
    default: return '0';
  }
}

Sign sign_of(double v, double dead_band) noexcept {
  if (!(std::fabs(v) > dead_band)) return Sign::zero;
  return v > 0.0 ? Sign::positive : Sign::negative;
}

double s2_critical(double s1, const Exponents& e) {
  require_s1(s1);
  return hcurve(omega(s1, e.p()), e.q());
}

SignPrediction predict_dt_ds2(const DomainPoint& s, const Exponents& e) {
  return predict_dt_ds2(s, sharp_constant(s, e), e);
}

SignPrediction predict_dt_ds2(const DomainPoint& s, const BellmanResult& at,
                              const Exponents& e) {
  const double p = e.p();
  const double q = e.q();
  SignPrediction out;
  out.regime = at.regime;
  out.a_s2 = a_curve(s.s2, q);

  if (at.regime == Regime::B) {
    // Implicit derivative of t0^p - p/(p-q) t0^(p-q) = s1 - p/(p-q) s1/s2.
    const double num = p / (p - q) * s.s1 / (s.s2 * s.s2);
    const double den = p * std::pow(at.t, p - q - 1.0) * (std::pow(at.t, q) - 1.0);
    out.indicator = num / den;
    out.f_tau = kNaN;
    out.sign = sign_of(out.indicator);
    return out;
  }

  if (!(at.tau < 1.0)) {
    // Tie with t = t0: F is singular at tau = 1.
    out.indicator = kNaN;
    out.f_tau = kNaN;
    out.sign = Sign::zero;
    return out;
  }
  try {
    out.f_tau = f_curve(at.tau, e);
  } catch (const SingularityError&) {
    out.indicator = kNaN;
    out.f_tau = kNaN;
    out.sign = Sign::zero;
    return out;
  }
  out.indicator = out.f_tau - (p - q) * out.a_s2;
  out.sign = sign_of(out.indicator, kPredictorDeadBand * std::fmax(1.0, std::fabs(out.f_tau)));
  return out;
}

double default_fd_step(const DomainPoint& s, const Exponents& e) {
  const double room = std::min({s.s2 - region_floor(s.s1, e), 1.0 - s.s2, 1.0});
  return 1e-6 * room;
}

double dt_ds2_fd(const DomainPoint& s, const Exponents& e, std::optional<double> h) {
  const double step = h.value_or(default_fd_step(s, e));
  if (!(step > 0.0)) throw DomainError(fmt("finite-difference step %.3g must be positive", step));
  const DomainPoint lo{s.s1, s.s2 - step};
  const DomainPoint hi{s.s1, s.s2 + step};
  if (!in_domain(lo.s1, lo.s2, e) || !in_domain(hi.s1, hi.s2, e))
    throw DomainError(fmt("step too large: s2 +- %.3g leaves the admissible region", step));
  return (sharp_constant(hi, e).t - sharp_constant(lo, e).t) / (2.0 * step);
}

double fd_noise_floor(double t, double h) noexcept {
  return 64.0 * std::numeric_limits<double>::epsilon() * std::fmax(1.0, t) / h;
}

std::vector<double> MonotonicityReport::grid() const {
  std::vector<double> g;
  g.reserve(rows.size());
  for (const auto& r : rows) g.push_back(r.s2);
  return g;
}

std::vector<double> MonotonicityReport::t_values() const {
  std::vector<double> t;
  t.reserve(rows.size());
  for (const auto& r : rows) t.push_back(r.result.t);
  return t;
}

MonotonicityReport scan_monotonicity(double s1, const Exponents& e, int n, double inset) {
  require_s1(s1);
  if (n < 16) throw DomainError("scan grid needs at least 16 points");

  MonotonicityReport rep;
  rep.s1 = s1;
  rep.exps = e;
  rep.s2_critical = s2_critical(s1, e);
  rep.omega_p = omega(s1, e.p());

  const double lo = region_floor(s1, e) + inset;
  const double hi = 1.0 - inset;
  if (!(lo < hi)) throw DomainError("scan interval is empty after the inset");
  const double cell = (hi - lo) / (n - 1);

  rep.rows.resize(n);
  for (int i = 0; i < n; ++i) {
    ScanRow& row = rep.rows[i];
    row.s2 = i == n - 1 ? hi : lo + i * cell;
    const DomainPoint s{s1, row.s2};
    row.result = sharp_constant(s, e);
    const SignPrediction pred = predict_dt_ds2(s, row.result, e);
    row.f_tau = pred.f_tau;
    row.a_s2 = pred.a_s2;
    row.pred = pred.sign;
    const double h = default_fd_step(s, e);
    row.fd = dt_ds2_fd(s, e, h);
    row.fd_sign = sign_of(row.fd, fd_noise_floor(row.result.t, h));
  }

  const double s2c = rep.s2_critical;
  auto& v = rep.violations;

  // Peak.
  const auto peak = std::max_element(rep.rows.begin(), rep.rows.end(),
                                     [](const ScanRow& a, const ScanRow& b) {
                                       return a.result.t < b.result.t;
                                     });
  rep.peak_s2 = peak->s2;
  rep.peak_t = peak->result.t;
  if (std::fabs(rep.peak_s2 - s2c) > cell)
    v.push_back({rep.peak_s2, fmt("peak is more than one cell from s2' = %.17g", s2c)});
  if (std::fabs(rep.peak_t - rep.omega_p) > 1e-6)
    v.push_back({rep.peak_s2, fmt("peak value %.17g differs from omega_p(s1) = %.17g",
                                  rep.peak_t, rep.omega_p)});

  for (int i = 0; i < n; ++i) {
    const ScanRow& r = rep.rows[i];
    if (r.result.t > rep.omega_p + 1e-9)
      v.push_back({r.s2, fmt("t = %.17g exceeds omega_p(s1)", r.result.t)});
    if (r.result.t < 1.0 || r.result.t > r.result.t0)
      v.push_back({r.s2, "t outside [1, t0]"});
    if (i + 1 < n) {
      const ScanRow& next = rep.rows[i + 1];
      if (next.s2 <= s2c && !(next.result.t > r.result.t))
        v.push_back({r.s2, "t not strictly increasing left of s2'"});
      if (r.s2 >= s2c && !(next.result.t < r.result.t))
        v.push_back({r.s2, "t not strictly decreasing right of s2'"});
    }
    if ((r.pred == Sign::negative && r.s2 < s2c) || (r.pred == Sign::positive && r.s2 > s2c))
      v.push_back({r.s2, fmt("predicted sign %c contradicts the side of s2'", to_char(r.pred))});
    if (r.pred != Sign::zero && r.fd_sign != Sign::zero) {
      ++rep.compared;
      if (r.pred == r.fd_sign) {
        ++rep.agreed;
      } else {
        const double floor = fd_noise_floor(r.result.t, default_fd_step({s1, r.s2}, e));
        if (std::fabs(r.fd) > 10.0 * floor)
          v.push_back({r.s2, fmt("finite difference %.3g disagrees with the predicted sign",
                                 r.fd)});
      }
    }
  }

  // Sign changes of the finite-difference derivative, ignoring zeros.
  int last_idx = -1;
  Sign last = Sign::zero;
  bool located = false;
  for (int i = 0; i < n; ++i) {
    const Sign sg = rep.rows[i].fd_sign;
    if (sg == Sign::zero) continue;
    if (last != Sign::zero && sg != last) {
      ++rep.fd_sign_changes;
      if (!located && last == Sign::positive) {
        located = true;
        const double a = rep.rows[last_idx].s2;
        const double b = rep.rows[i].s2;
        rep.sign_change_s2 = 0.5 * (a + b);
        if (s2c < a - cell || s2c > b + cell)
          v.push_back({rep.sign_change_s2, "derivative sign change is more than one cell "
                                           "from s2'"});
      }
    }
    last = sg;
    last_idx = i;
  }
  if (rep.fd_sign_changes != 1 || !located)
    v.push_back({s2c, fmt("expected exactly one + to - sign change, found %.0f",
                          double(rep.fd_sign_changes))});
  return rep;
}

double check_critical_tau(double s1, const Exponents& e) {
  require_s1(s1);
  const double lambda = omega(s1, e.p());
  const double s2c = hcurve(lambda, e.q());
  return std::fabs(tau_of({s1, s2c}, lambda, e) - s2c);
}

double check_critical_balance(double s1, const Exponents& e) {
  require_s1(s1);
  const double lambda = omega(s1, e.p());
  const double s2c = hcurve(lambda, e.q());
  const double tau = tau_of({s1, s2c}, lambda, e);
  const double f = f_curve(tau, e);
  return std::fabs(f - (e.p() - e.q()) * a_curve(s2c, e.q())) / std::fmax(1.0, std::fabs(f));
}

double check_peak_value(double s1, const Exponents& e) {
  require_s1(s1);
  const double s2c = s2_critical(s1, e);
  return std::fabs(sharp_constant({s1, s2c}, e).t - omega(s1, e.p()));
}

namespace {

template <class Curve, class GammaCurve, class GammaCheck>
GridCheck check_monotone_pair(std::span<const double> grid, double q, Curve curve,
                              GammaCurve gamma_curve, GammaCheck gamma_check) {
  GridCheck out;
  double prev_s = kNaN, prev_v = kNaN, prev_g = kNaN, prev_gv = kNaN;
  for (double s : grid) {
    double value, gamma, gamma_value;
    try {
      value = curve(s);
      gamma = omega(s, q);
      gamma_value = gamma_curve(gamma);
      if (auto why = gamma_check(gamma); !why.empty()) out.violations.push_back({s, why});
    } catch (const SingularityError&) {
      out.skipped.push_back(s);
      continue;
    } catch (const DomainError& err) {
      out.violations.push_back({s, err.what()});
      continue;
    }
    if (!std::isnan(prev_s)) {
      if (!(s > prev_s)) out.violations.push_back({s, "grid not strictly increasing"});
      if (!(value > prev_v)) out.violations.push_back({s, "curve not strictly increasing"});
      if (gamma < prev_g && !(gamma_value > prev_gv))
        out.violations.push_back({s, "gamma form not strictly decreasing"});
    }
    prev_s = s;
    prev_v = value;
    prev_g = gamma;
    prev_gv = gamma_value;
  }
  return out;
}

}  // namespace

GridCheck check_a_monotone(double q, std::span<const double> grid) {
  return check_monotone_pair(
      grid, q, [q](double s) { return a_curve(s, q); },
      [q](double g) { return a_curve_gamma(g, q); },
      [q](double g) -> std::string {
        return a_curve_gamma_prime(g, q) < 0.0 ? "" : "gamma-form derivative not negative";
      });
}

GridCheck check_f_monotone(const Exponents& e, std::span<const double> grid) {
  return check_monotone_pair(
      grid, e.q(), [&e](double s) { return f_curve(s, e); },
      [&e](double g) { return f_curve_gamma(g, e); }, [](double) { return std::string(); });
}

BoundaryMargin boundary_margin(double s1, const Exponents& e) {
  require_s1(s1);
  const double p = e.p();
  const double q = e.q();
  auto g = [&](double s) { return p * std::pow(s, (p - q) / (p - 1.0)) - (p - q) * s - q; };
  BoundaryMargin out;
  out.g = g(s1);
  out.margin = -out.g;
  out.g_at_one = g(1.0);
  return out;
}

double check_endpoint_identity(double t, const Exponents& e) {
  const double p = e.p();
  const double q = e.q();
  if (!(t > 1.0) || !(t < omega_upper(p)))
    throw DomainError(fmt("t = %.17g must lie in (1, p/(p-1))", t));
  const double lhs = (p - q) * (t - 1.0) / (q - (q - 1.0) * t);
  const double rhs = (std::pow(t, p - q) - hcurve(t, p) / hcurve(t, q)) * std::pow(t, q - p);
  return std::fabs(lhs - rhs) / std::fmax(1.0, std::fabs(lhs));
}

double check_tau_gap(const DomainPoint& s, double t, const Exponents& e) {
  const double direct = tau_of(s, t, e) - std::pow(t, e.q());
  return std::fabs(tau_minus_tq(s, t, e) - direct) / std::fmax(1.0, std::fabs(direct));
}

double delta1_via_balance(const DomainPoint& s, double t, const Exponents& e) {
  const double p = e.p();
  const double q = e.q();
  const double d = std::pow(t, p - q) - s.s1 / s.s2;
  const double w = omega(tau_of(s, t, e), q);
  const double gap = w - 1.0;
  if (!(gap >= kSingularityGuard))
    throw SingularityError("delta1_via_balance: omega_q(tau) too close to 1", gap);
  const double slope = p - q * (p - 1.0) / (q - 1.0) * w;
  return delta_side(s, e) / d + slope / gap * e1(s, t, e) / (p * d);
}

double RisingBranchMargins::min_margin() const noexcept {
  return std::min({balance, omega_order, alpha_ratio, closed_form, critical_bound,
                   -std::fabs(critical_equality)});
}

RisingBranchMargins rising_branch_margins(const DomainPoint& s, const Exponents& e) {
  const double p = e.p();
  const double q = e.q();
  const BellmanResult r = sharp_constant(s, e);
  if (r.regime != Regime::A) throw DomainError("rising-branch chain needs regime A");
  const double s2c = s2_critical(s.s1, e);
  if (!(s.s2 < s2c)) throw DomainError("rising-branch chain needs s2 < s2'");

  const double lambda = omega(s.s1, p);
  const double ratio = s.s1 / s.s2;
  const double d = std::pow(r.t, p - q) - ratio;
  const double target = q / std::pow(lambda, p - q);
  const double alpha_c = q * (lambda - 1.0) / (q - (q - 1.0) * lambda);

  RisingBranchMargins m;
  m.balance = f_curve(r.tau, e) - (p - q) * a_curve(s.s2, q);
  m.omega_order = lambda - omega(r.tau, q);
  m.alpha_ratio = (p - q) * alpha(s.s2, q) / d - target;
  m.closed_form = (p - q) * alpha_c / d - target;
  m.critical_bound =
      (p - q) * alpha_c - q * (std::pow(lambda, p - q) - ratio) * std::pow(lambda, q - p);
  m.critical_equality = (p - q) * alpha_c - q * (std::pow(lambda, p - q) - s.s1 / s2c) *
                                                std::pow(lambda, q - p);
  m.alpha_closed_form_error = std::fabs(alpha_c - alpha(s2c, q));
  return m;
}

double regime_a_threshold(double s1, const Exponents& e) {
  require_s1(s1);
  double lo = region_floor(s1, e);
  double hi = s2_critical(s1, e);
  if (sharp_constant({s1, lo}, e).regime == Regime::A) return lo;
  if (sharp_constant({s1, hi}, e).regime != Regime::A)
    throw NumericError("regime A does not hold at s2'", lo, hi);
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sharp_constant({s1, mid}, e).regime == Regime::A)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

CriticalMoment critical_moment(double x, double z, double kappa, const Exponents& e) {
  const double p = e.p();
  const double q = e.q();
  if (!(x > 0.0) || !(z > 0.0) || !(kappa > 0.0))
    throw DomainError("x, z and kappa must be positive");
  const double z_floor = std::pow(x, p) / std::pow(kappa, p - 1.0);
  if (!(z_floor < z))
    throw DomainError(fmt("x^p/kappa^(p-1) < z violated (%.17g >= %.17g)", z_floor, z));
  const double s1 = z_floor / z;
  CriticalMoment c;
  c.lower = std::pow(x, q) / std::pow(kappa, q - 1.0);
  c.upper = std::pow(x, (p - q) / (p - 1.0)) * std::pow(z, (q - 1.0) / (p - 1.0));
  c.y0 = c.lower / hcurve(omega(s1, p), q);
  c.s2_at_y0 = c.lower / c.y0;
  c.within_bounds = c.lower < c.y0 && c.y0 <= c.upper;
  return c;
}

Sign y_side_sign(const MomentTriple& m, const Exponents& e) {
  const DomainPoint s = moments_to_domain(m, e);
  switch (predict_dt_ds2(s, e).sign) {
    case Sign::positive: return Sign::negative;
    case Sign::negative: return Sign::positive;
    default: return Sign::zero;
  }
}

}  // namespace bellman
