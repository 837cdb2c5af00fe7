#include "bellman/errors.hpp"

#include <cstdio>

namespace bellman {

namespace {

std::string with_bracket(const std::string& what, double lo, double hi) {
  char buf[128];
  std::snprintf(buf, sizeof buf, " (bracket [%.17g, %.17g])", lo, hi);
  return what + buf;
}

std::string tau_message(double t, double tau) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "tau = %.17g outside (0, 1] at t = %.17g: point is outside the "
                "analyzable region",
                tau, t);
  return buf;
}

}  // namespace

NumericError::NumericError(const std::string& what, double lo, double hi)
    : Error(with_bracket(what, lo, hi)), lo_(lo), hi_(hi) {}

SingularityError::SingularityError(const std::string& what, double distance)
    : Error(what), distance_(distance) {}

TauRangeError::TauRangeError(double t, double tau)
    : DomainError(tau_message(t, tau)), t_(t), tau_(tau) {}

}  // namespace bellman
