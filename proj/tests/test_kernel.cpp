#include <cmath>
#include <vector>

#include "bellman/kernel.hpp"
#include "doctest.h"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace bellman;
using doctest::Approx;

TEST_CASE("Exponents rejects invalid pairs") {
  CHECK_NOTHROW(Exponents(2.0, 1.5));
  CHECK_THROWS_AS(Exponents(1.5, 2.0), DomainError);
  CHECK_THROWS_AS(Exponents(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(Exponents(2.0, 2.0 - 1e-8), DomainError);
  CHECK_THROWS_AS(Exponents(NAN, 1.5), DomainError);
}

TEST_CASE("hcurve values") {
  CHECK(hcurve(1.0, 2.0) == 1.0);
  CHECK(hcurve(2.0, 2.0) == 0.0);
  CHECK(hcurve(1.5, 1.5) == Approx(0.91855865354369179).epsilon(1e-15));
  CHECK_THROWS_AS(hcurve(INFINITY, 2.0), DomainError);
  CHECK_THROWS_AS(hcurve(NAN, 2.0), DomainError);
}

TEST_CASE("hcurve is strictly decreasing on [1, r/(r-1)]") {
  for (double r : {1.1, 1.5, 2.0, 3.0, 7.0}) {
    const double hi = omega_upper(r);
    double prev = hcurve(1.0, r);
    for (int i = 1; i <= 1000; ++i) {
      const double v = hcurve(1.0 + (hi - 1.0) * i / 1000.0, r);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("omega inverts hcurve") {
  CHECK(omega(1.0, 2.0) == 1.0);
  CHECK(omega(0.0, 2.0) == 2.0);
  CHECK(omega(0.75, 2.0) == Approx(1.5).epsilon(1e-14));
  // Frozen from the long-double bisection oracle.
  CHECK(omega(0.918559, 1.5) == Approx(1.4999988684773687).epsilon(1e-13));
  CHECK(omega(0.918559, 1.5) ==
        Approx(double(oracle::omega(0.918559L, 1.5L))).epsilon(1e-13));

  SUBCASE("closed form for r = 2") {
    for (int i = 0; i <= 200; ++i) {
      const double s = i / 200.0;
      CHECK(omega(s, 2.0) == Approx(1.0 + std::sqrt(1.0 - s)).epsilon(1e-12));
    }
  }
  SUBCASE("round trip on a 1000-point grid") {
    for (double r : {1.2, 1.3, 1.5, 1.8, 2.0, 2.5, 3.0, 4.0}) {
      double worst = 0.0;
      for (int i = 0; i < 1000; ++i) {
        const double s = i / 999.0;
        worst = std::fmax(worst, std::fabs(hcurve(omega(s, r), r) - s));
      }
      CHECK(worst <= 1e-12);
    }
  }
  CHECK_THROWS_AS(omega(-0.1, 2.0), DomainError);
  CHECK_THROWS_AS(omega(1.1, 2.0), DomainError);
  CHECK_THROWS_AS(omega(0.5, 1.0), DomainError);
}

TEST_CASE("alpha") {
  CHECK(alpha(0.75, 2.0) == Approx(2.0).epsilon(1e-13));
  // alpha(1 - eps) behaves like sqrt(2 q eps / (q - 1)).
  CHECK(alpha(1.0 - 1e-12, 1.5) == Approx(2.4494924094524077e-6).epsilon(1e-3));
  CHECK(alpha(1.0 - 1e-12, 2.0) == Approx(2.0000020000020000e-6).epsilon(1e-3));
  CHECK(alpha(1.0 - 1e-12, 1.5) / alpha(1.0 - 1e-10, 1.5) == Approx(0.1).epsilon(1e-3));
  CHECK(alpha(0.918559, 1.5) == Approx(0.99999698260859259).epsilon(1e-11));
  for (int i = 1; i < 100; ++i) CHECK(alpha(i / 100.0, 1.7) > 0.0);
  CHECK_THROWS_AS(alpha(0.0, 2.0), DomainError);
  CHECK_THROWS_AS(alpha(1.0, 2.0), DomainError);
}

TEST_CASE("alpha_prime") {
  CHECK(alpha_prime(0.75, 2.0) == Approx(-8.0).epsilon(1e-12));
  for (int i = 1; i < 100; ++i) CHECK(alpha_prime(0.01 + 0.98 * i / 100.0, 1.5) < 0.0);

  SUBCASE("matches a central difference of alpha") {
    const double fd = (alpha(0.9 + 1e-7, 1.5) - alpha(0.9 - 1e-7, 1.5)) / 2e-7;
    CHECK(alpha_prime(0.9, 1.5) == Approx(fd).epsilon(1e-6));
    for (double q : {1.2, 1.5, 2.0, 3.0}) {
      for (int i = 0; i <= 90; ++i) {
        const double s = 0.05 + 0.01 * i;
        const double h = 1e-6;
        const double ref = double(oracle::central_difference(
            [q](oracle::real x) { return oracle::alpha(x, q); }, s, h));
        CHECK(alpha_prime(s, q) == Approx(ref).epsilon(1e-6));
      }
    }
  }
  CHECK_THROWS_AS(alpha_prime(1.0, 2.0), DomainError);
}

TEST_CASE("a_curve") {
  CHECK(a_curve(0.75, 2.0) == Approx(4.5).epsilon(1e-12));
  CHECK(a_curve(0.5, 2.0) == Approx(4.1213203435596426).epsilon(1e-12));
  CHECK(a_curve(0.5, 2.0) < a_curve(0.75, 2.0));

  gen::Source src(11);
  for (int i = 0; i < 500; ++i) {
    const double q = src.uniform(1.05, 4.0);
    const double s = src.uniform(0.01, 0.99);
    const double a = a_curve(s, q);
    CHECK(a == Approx(-s * s * alpha_prime(s, q)).epsilon(1e-10));
  }
  for (double q : {1.2, 1.5, 2.0, 3.0}) {
    double prev = a_curve(1e-3, q);
    for (int i = 1; i < 999; ++i) {
      const double a = a_curve(1e-3 + i * 1e-3, q);
      CHECK(a > prev);
      prev = a;
    }
  }
}

TEST_CASE("a_curve_gamma and its derivative") {
  CHECK(a_curve_gamma(1.5, 2.0) == Approx(4.5).epsilon(1e-13));
  CHECK(a_curve_gamma(1.2, 2.0) > a_curve_gamma(1.5, 2.0));
  CHECK(a_curve_gamma(1.1, 2.0) > a_curve_gamma(1.4, 2.0));
  CHECK(a_curve(hcurve(1.3, 1.5), 1.5) == Approx(a_curve_gamma(1.3, 1.5)).epsilon(1e-10));

  for (double q : {1.3, 2.0, 2.7}) {
    for (int i = 1; i < 50; ++i) {
      const double g = 1.0 + (omega_upper(q) - 1.0) * i / 50.0;
      const double h = 1e-6;
      const double fd = (a_curve_gamma(g + h, q) - a_curve_gamma(g - h, q)) / (2 * h);
      CHECK(a_curve_gamma_prime(g, q) < 0.0);
      CHECK(a_curve_gamma_prime(g, q) == Approx(fd).epsilon(1e-5));
    }
  }
  CHECK_THROWS_AS(a_curve_gamma(1.0 + 1e-11, 2.0), SingularityError);
  CHECK_THROWS_AS(a_curve_gamma(1.0, 2.0), DomainError);
  CHECK_THROWS_AS(a_curve_gamma(2.0, 2.0), DomainError);
}

TEST_CASE("f_curve") {
  const Exponents e(3.0, 2.0);
  CHECK(f_curve(0.75, e) == Approx(4.5).epsilon(1e-12));
  CHECK(f_curve(0.5, e) < f_curve(0.75, e));
  CHECK_THROWS_AS(f_curve(0.0, e), DomainError);
  CHECK_THROWS_AS(f_curve(1.0, e), DomainError);

  SUBCASE("vanishing balance at tau' = hcurve_q(omega_p(s1))") {
    for (const auto& ex : gen::exponent_pairs()) {
      for (double s1 : {0.1, 0.3, 0.5, 0.75, 0.9}) {
        const double tau = hcurve(omega(s1, ex.p()), ex.q());
        const double f = f_curve(tau, ex);
        CHECK(f == Approx((ex.p() - ex.q()) * a_curve(tau, ex.q())).epsilon(1e-9));
      }
    }
  }
  SUBCASE("strictly increasing") {
    for (const auto& ex : gen::exponent_pairs()) {
      double prev = f_curve(1e-3, ex);
      for (int i = 1; i < 999; ++i) {
        const double f = f_curve(1e-3 + 1e-3 * i, ex);
        CHECK(f > prev);
        prev = f;
      }
    }
  }
}

TEST_CASE("f_curve_gamma") {
  const Exponents e(3.0, 2.0);
  CHECK(f_curve_gamma(omega(0.75, 2.0), e) == Approx(4.5).epsilon(1e-12));
  CHECK(f_curve_gamma(1.2, e) > f_curve_gamma(1.4, e));
  const double h = 1e-6;
  CHECK((f_curve_gamma(1.3 + h, e) - f_curve_gamma(1.3 - h, e)) / (2 * h) < 0.0);
  for (double g = 1.05; g < 1.95; g += 0.05)
    CHECK(f_curve(hcurve(g, 2.0), e) == Approx(f_curve_gamma(g, e)).epsilon(1e-10));
  CHECK_THROWS_AS(f_curve_gamma(1.0 + 1e-12, e), SingularityError);
}
