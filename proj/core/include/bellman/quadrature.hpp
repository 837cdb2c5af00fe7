#pragma once

#include <cmath>
#include <span>

#include "bellman/errors.hpp"

namespace bellman {

struct Integral {
  double value = 0.0;
  double error = 0.0;  // sum of |refined - coarse| over accepted panels
};

/// Nodes and weights of the 10-point Gauss-Legendre rule on [-1, 1].
std::span<const double> gauss_legendre_nodes();
std::span<const double> gauss_legendre_weights();

namespace detail {

template <class F>
double gauss_panel(F& f, double a, double b) {
  const auto x = gauss_legendre_nodes();
  const auto w = gauss_legendre_weights();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * f(mid + half * x[i]);
  return half * sum;
}

template <class F>
void refine(F& f, double a, double b, double whole, double tol, int depth, Integral& acc) {
  const double m = 0.5 * (a + b);
  const double left = gauss_panel(f, a, m);
  const double right = gauss_panel(f, m, b);
  const double diff = std::fabs(left + right - whole);
  if (diff <= tol) {
    acc.value += left + right;
    acc.error += diff;
    return;
  }
  if (depth == 0) throw NumericError("adaptive quadrature did not converge", a, b);
  refine(f, a, m, left, 0.5 * tol, depth - 1, acc);
  refine(f, m, b, right, 0.5 * tol, depth - 1, acc);
}

}  // namespace detail

/// Adaptive Gauss-Legendre with interval halving. The panel is accepted when
/// the two halves agree with the whole to within the (halved) tolerance.
template <class F>
Integral integrate(F f, double a, double b, double abs_tol, int max_depth = 40) {
  Integral acc;
  if (!(b > a)) return acc;
  detail::refine(f, a, b, detail::gauss_panel(f, a, b), abs_tol, max_depth, acc);
  return acc;
}

}  // namespace bellman
