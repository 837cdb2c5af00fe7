#include <cmath>
#include <numbers>

#include "bellman/quadrature.hpp"
#include "bellman/roots.hpp"
#include "doctest.h"

using namespace bellman;
using doctest::Approx;

TEST_CASE("bracketed solvers") {
  auto f = [](double x) { return x * x - 2.0; };
  CHECK(solve_bracketed(f, 0.0, 2.0) == Approx(std::numbers::sqrt2).epsilon(1e-15));
  CHECK(bisect(f, 0.0, 2.0) == Approx(std::numbers::sqrt2).epsilon(1e-15));
  // An endpoint that is already a root is returned as is.
  CHECK(solve_bracketed([](double x) { return x - 1.0; }, 1.0, 2.0) == 1.0);
  CHECK_THROWS_AS(solve_bracketed(f, 2.0, 3.0), NumericError);
  CHECK_THROWS_AS(bisect(f, -1.0, 1.0), NumericError);

  // Flat root: secant steps alone crawl here; the halving safeguard must kick in.
  auto flat = [](double x) { return std::pow(x - 1.0, 9); };
  CHECK(solve_bracketed(flat, 0.0, 3.0) == Approx(1.0).epsilon(1e-1));

  try {
    RootOptions opt;
    opt.max_iter = 3;
    bisect(f, 0.0, 2.0, opt);
    FAIL("expected non-convergence");
  } catch (const NumericError& err) {
    CHECK(err.bracket_lo() < err.bracket_hi());
  }
}

TEST_CASE("Gauss-Legendre rule") {
  const auto x = gauss_legendre_nodes();
  const auto w = gauss_legendre_weights();
  REQUIRE(x.size() == 10);
  double sum = 0.0;
  for (double wi : w) sum += wi;
  CHECK(sum == Approx(2.0).epsilon(1e-15));
  // Exact for polynomials of degree <= 19.
  double m18 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m18 += w[i] * std::pow(x[i], 18);
  CHECK(m18 == Approx(2.0 / 19.0).epsilon(1e-14));
}

TEST_CASE("adaptive integration") {
  const Integral a = integrate([](double u) { return 1.0 / u; }, 0.5, 1.0, 1e-12);
  CHECK(a.value == Approx(std::numbers::ln2).epsilon(1e-13));
  CHECK(a.error <= 1e-12);
  const Integral b = integrate([](double u) { return std::sqrt(u); }, 1e-12, 1.0, 1e-10);
  CHECK(b.value == Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(integrate([](double) { return 1.0; }, 1.0, 1.0, 1e-10).value == 0.0);
}
