#include <cmath>
#include <vector>

#include "bellman/analysis.hpp"
#include "doctest.h"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace bellman;
using doctest::Approx;

namespace {
const Exponents kE(2.0, 1.5);

std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}
}  // namespace

TEST_CASE("sign helpers") {
  CHECK(sign_of(2.0) == Sign::positive);
  CHECK(sign_of(-1e-12, 1e-9) == Sign::zero);
  CHECK(sign_of(-1e-3, 1e-9) == Sign::negative);
  CHECK(to_char(Sign::positive) == '+');
  CHECK(to_char(Sign::negative) == '-');
  CHECK(to_char(Sign::zero) == '0');
}

TEST_CASE("critical point") {
  CHECK(s2_critical(0.75, kE) == Approx(0.91855865354369179).epsilon(1e-14));
  for (const auto& e : gen::exponent_pairs()) {
    for (double s1 : {0.05, 0.4, 0.9}) {
      CHECK(check_critical_tau(s1, e) <= 1e-12);
      CHECK(check_critical_balance(s1, e) <= 1e-9);
      CHECK(check_peak_value(s1, e) <= 1e-9);
      CHECK(in_domain(s1, s2_critical(s1, e), e));
    }
  }
  CHECK_THROWS_AS(s2_critical(1.0, kE), DomainError);
}

TEST_CASE("predicted sign matches the finite difference") {
  gen::Source src(77);
  int compared = 0;
  int agreed = 0;
  for (int i = 0; i < 300; ++i) {
    const Exponents& e = gen::exponent_pairs()[i % 5];
    const DomainPoint s = src.domain_point(e, 0.05, 0.95, 1e-3);
    const BellmanResult r = sharp_constant(s, e);
    const SignPrediction pred = predict_dt_ds2(s, r, e);
    CHECK(pred.regime == r.regime);
    if (r.regime == Regime::B) {
      CHECK(pred.sign == Sign::positive);
      CHECK(std::isnan(pred.f_tau));
    }
    const double h = default_fd_step(s, e);
    const double fd = dt_ds2_fd(s, e, h);
    if (std::fabs(fd) <= 10.0 * fd_noise_floor(r.t, h) || pred.sign == Sign::zero) continue;
    ++compared;
    if (sign_of(fd) == pred.sign) ++agreed;
  }
  CHECK(compared > 250);
  CHECK(agreed == compared);
}

TEST_CASE("finite difference agrees with the long-double oracle") {
  const DomainPoint s{0.5, 0.9};
  const double fd = dt_ds2_fd(s, kE);
  const long double ref = oracle::central_difference(
      [](long double s2) { return oracle::sharp_t(0.5L, s2, 2.0L, 1.5L).t; }, 0.9L, 1e-5L);
  CHECK(fd == Approx(double(ref)).epsilon(1e-4));
  CHECK(fd < 0.0);  // 0.9 lies right of s2'(0.5)
  CHECK_THROWS_AS(dt_ds2_fd(s, kE, 0.2), DomainError);
}

TEST_CASE("monotonicity scan") {
  const MonotonicityReport rep = scan_monotonicity(0.75, kE, 256);
  CHECK(rep.violations.empty());
  for (const auto& v : rep.violations) MESSAGE(v.at << ": " << v.reason);
  CHECK(rep.rows.size() == 256);
  CHECK(rep.fd_sign_changes == 1);
  CHECK(rep.s2_critical == Approx(0.91855865354369179).epsilon(1e-14));
  CHECK(std::fabs(rep.sign_change_s2 - rep.s2_critical) <= 2.0 * (rep.grid()[1] - rep.grid()[0]));
  CHECK(rep.peak_t == Approx(1.5).epsilon(1e-6));
  CHECK(rep.omega_p == Approx(1.5).epsilon(1e-15));
  CHECK(rep.agreement() == 1.0);
  CHECK(rep.grid().size() == rep.t_values().size());
  CHECK_THROWS_AS(scan_monotonicity(0.75, kE, 15), DomainError);

  for (const auto& e : gen::exponent_pairs()) {
    for (double s1 : {0.1, 0.5, 0.9}) {
      const MonotonicityReport r = scan_monotonicity(s1, e, 256);
      CHECK_MESSAGE(r.violations.empty(), "p=" << e.p() << " q=" << e.q() << " s1=" << s1);
      for (const auto& v : r.violations) MESSAGE(v.at << ": " << v.reason);
      CHECK(r.fd_sign_changes == 1);
      for (double t : r.t_values()) CHECK(t <= r.omega_p + 1e-9);
    }
  }
}

TEST_CASE("A and F monotone") {
  const auto s_grid = uniform_grid(0.001, 0.999, 400);
  for (const auto& e : gen::exponent_pairs()) {
    CHECK(check_a_monotone(e.q(), s_grid).ok());
    CHECK(check_f_monotone(e, s_grid).ok());
  }
  const std::vector<double> unordered{0.2, 0.5, 0.4};
  CHECK_FALSE(check_a_monotone(1.5, unordered).ok());
  const std::vector<double> outside{0.5, 1.5};
  CHECK_FALSE(check_f_monotone(kE, outside).ok());
}

TEST_CASE("boundary margin") {
  const BoundaryMargin b = boundary_margin(0.5, kE);
  CHECK(b.margin == Approx(0.33578643762690495).epsilon(1e-14));
  CHECK(b.g == -b.margin);
  gen::Source src(3);
  for (int i = 0; i < 500; ++i) {
    const Exponents e = src.exponents();
    const double s1 = src.uniform(1e-6, 1.0 - 1e-6);
    const BoundaryMargin m = boundary_margin(s1, e);
    CHECK(m.margin > 0.0);
    CHECK(m.g_at_one == Approx(0.0));
  }
}

TEST_CASE("endpoint identity and tau gap") {
  CHECK(check_endpoint_identity(1.2, kE) <= 1e-14);
  for (const auto& e : gen::exponent_pairs()) {
    const double top = e.p() / (e.p() - 1.0);
    for (int i = 1; i < 50; ++i) CHECK(check_endpoint_identity(1.0 + (top - 1.0) * i / 50.0, e) <= 1e-12);
  }
  CHECK_THROWS_AS(check_endpoint_identity(2.5, kE), DomainError);
  gen::Source src(11);
  for (int i = 0; i < 500; ++i) {
    const Exponents& e = gen::exponent_pairs()[i % 5];
    const DomainPoint s = src.domain_point(e);
    CHECK(check_tau_gap(s, src.uniform(1.0, t_zero(s, e)), e) <= 1e-12);
  }
}

TEST_CASE("Delta1 through the balance") {
  const BellmanResult r = sharp_constant({0.5, 0.9}, kE);
  CHECK(delta1_via_balance({0.5, 0.9}, r.t, kE) == Approx(r.delta1).epsilon(1e-9));
  gen::Source src(19);
  for (int i = 0; i < 200; ++i) {
    const Exponents& e = gen::exponent_pairs()[i % 5];
    const DomainPoint s = src.domain_point(e);
    const BellmanResult b = sharp_constant(s, e);
    if (b.regime != Regime::A || !std::isfinite(b.delta1)) continue;
    CHECK(b.delta1 > 0.0);
    CHECK(delta1_via_balance(s, b.t, e) == Approx(b.delta1).epsilon(1e-7));
  }
}

TEST_CASE("rising branch inequality chain") {
  // s2 = 0.87 sits just below the start of regime A for s1 = 0.75.
  CHECK_FALSE(oracle::sharp_t(0.75L, 0.87L, 2.0L, 1.5L).regime_a);
  CHECK_THROWS_AS(rising_branch_margins({0.75, 0.87}, kE), DomainError);

  const RisingBranchMargins m = rising_branch_margins({0.75, 0.88}, kE);
  CHECK(m.balance > 0.0);
  CHECK(m.omega_order > 0.0);
  CHECK(m.alpha_ratio > 0.0);
  CHECK(m.closed_form > 0.0);
  CHECK(m.critical_bound > 0.0);
  CHECK(std::fabs(m.critical_equality) <= 1e-12);
  CHECK(m.alpha_closed_form_error <= 1e-13);
  CHECK(m.min_margin() > -1e-10);
  CHECK_THROWS_AS(rising_branch_margins({0.75, 0.95}, kE), DomainError);

  const double sc = s2_critical(0.75, kE);
  double prev = m.balance;
  for (double gap : {1e-2, 1e-3, 1e-4}) {
    const double b = rising_branch_margins({0.75, sc - gap}, kE).balance;
    CHECK(b > 0.0);
    CHECK(b < prev);
    prev = b;
  }
  CHECK(prev < 1e-2);
  gen::Source src(23);
  for (int i = 0; i < 100; ++i) {
    const Exponents& e = gen::exponent_pairs()[i % 5];
    const double s1 = src.uniform(0.05, 0.95);
    const double lo = regime_a_threshold(s1, e);
    const double hi = s2_critical(s1, e);
    const double s2 = src.uniform(lo + 1e-3 * (hi - lo), hi - 1e-3 * (hi - lo));
    CHECK(rising_branch_margins({s1, s2}, e).min_margin() > -1e-10);
  }
}

TEST_CASE("regime A threshold") {
  for (const auto& e : gen::exponent_pairs()) {
    for (double s1 : {0.2, 0.6, 0.95}) {
      const double th = regime_a_threshold(s1, e);
      const double floor = std::pow(s1, (e.q() - 1.0) / (e.p() - 1.0));
      CHECK(th >= floor);
      CHECK(th < s2_critical(s1, e));
      const double right = th + 1e-3 * (1.0 - th);
      CHECK(sharp_constant({s1, right}, e).regime == Regime::A);
      if (th > floor + 1e-9) {
        CHECK(sharp_constant({s1, floor + 0.5 * (th - floor)}, e).regime == Regime::B);
      }
    }
  }
}

TEST_CASE("critical moment") {
  const CriticalMoment c = critical_moment(1.0, 4.0 / 3.0, 1.0, kE);
  CHECK(c.y0 == Approx(1.0886621079036347).epsilon(1e-14));
  CHECK(c.within_bounds);
  CHECK(c.lower < c.y0);
  CHECK(c.y0 <= c.upper);
  CHECK(c.s2_at_y0 == Approx(s2_critical(0.75, kE)).epsilon(1e-14));

  // y below y0 corresponds to s2 above s2', where t falls in s2 and rises in y.
  CHECK(y_side_sign({1.0, 0.5 * (c.lower + c.y0), 4.0 / 3.0, 1.0}, kE) == Sign::positive);
  CHECK(y_side_sign({1.0, 0.5 * (c.y0 + c.upper), 4.0 / 3.0, 1.0}, kE) == Sign::negative);
}
