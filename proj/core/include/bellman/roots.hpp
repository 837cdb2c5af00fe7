#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "bellman/errors.hpp"

namespace bellman {

struct RootOptions {
  // Stop once the bracket is this many ulps wide (relative to max(1, |x|)).
  double width_rel = 4.0 * std::numeric_limits<double>::epsilon();
  // Stop once |f| falls to this value. Zero means "only on an exact hit".
  double f_abs = 0.0;
  int max_iter = 300;
};

/// Root of a continuous f on [lo, hi] with f(lo), f(hi) of opposite sign (or
/// one of them zero). Bisection, with a secant candidate accepted only when it
/// lands strictly inside the bracket and the previous step at least halved it.
template <class F>
double solve_bracketed(F&& f, double lo, double hi, const RootOptions& opt = {}) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi))
    throw NumericError("root not bracketed", lo, hi);

  bool use_secant = true;
  for (int it = 0; it < opt.max_iter; ++it) {
    const double width = hi - lo;
    const double scale = std::fmax(1.0, std::fmax(std::fabs(lo), std::fabs(hi)));
    const double mid = lo + 0.5 * width;
    if (width <= opt.width_rel * scale || mid <= lo || mid >= hi) return mid;

    double x = mid;
    if (use_secant) {
      const double xs = lo - flo * width / (fhi - flo);
      const double guard = 1e-3 * width;
      if (std::isfinite(xs) && xs > lo + guard && xs < hi - guard) x = xs;
    }
    const double fx = f(x);
    if (fx == 0.0 || std::fabs(fx) <= opt.f_abs) return x;
    if (std::signbit(fx) == std::signbit(flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    use_secant = (hi - lo) <= 0.5 * width;
  }
  throw NumericError("root finder did not converge", lo, hi);
}

/// Plain bisection; same contract as solve_bracketed.
template <class F>
double bisect(F&& f, double lo, double hi, const RootOptions& opt = {}) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi))
    throw NumericError("root not bracketed", lo, hi);
  for (int it = 0; it < opt.max_iter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    const double scale = std::fmax(1.0, std::fmax(std::fabs(lo), std::fabs(hi)));
    if (hi - lo <= opt.width_rel * scale || mid <= lo || mid >= hi) return mid;
    const double fm = f(mid);
    if (fm == 0.0 || std::fabs(fm) <= opt.f_abs) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  throw NumericError("bisection did not converge", lo, hi);
}

}  // namespace bellman
