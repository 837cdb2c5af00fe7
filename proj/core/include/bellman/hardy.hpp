#pragma once

// Trials of the Hardy-type bound
//
//   int_0^kappa ( (1/u) int_0^u h )^p du  <=  t(s1, s2)^p  int_0^kappa h^p
//
// over nonnegative step functions h whose moments map into the admissible
// region.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bellman/constant.hpp"
#include "bellman/quadrature.hpp"

namespace bellman {

/// Nonnegative piecewise-constant function on (0, kappa]; values[i] holds on
/// (breakpoints[i], breakpoints[i+1]].
class StepFunction {
 public:
  /// Breakpoints must start at 0 and strictly increase. Each piece carries one
  /// nonnegative value and at least one value is positive. Throws DomainError
  /// otherwise.
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  static StepFunction constant(double c, double kappa);

  double kappa() const noexcept { return breaks_.back(); }
  std::size_t pieces() const noexcept { return values_.size(); }
  std::span<const double> breakpoints() const noexcept { return breaks_; }
  std::span<const double> values() const noexcept { return values_; }

  StepFunction scaled(double lambda) const;

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
};

MomentTriple moments(const StepFunction& h, const Exponents& e);

/// int_0^kappa ((1/u) int_0^u h)^p du, piecewise adaptive quadrature.
Integral avg_power_integral(const StepFunction& h, double p);

enum class TrialStatus { pass, fail, skipped };

const char* to_string(TrialStatus s) noexcept;

struct TrialOutcome {
  TrialStatus status = TrialStatus::skipped;
  MomentTriple moments{};
  DomainPoint domain{};
  double t = 0.0;
  double lhs = 0.0;
  double bound = 0.0;  // t^p z
  double margin = 0.0;  // bound - lhs
  double quadrature_error = 0.0;
  std::string note;  // reason for a skip
};

/// Passes iff margin >= -(quadrature_error + 1e-9 bound). Functions whose
/// moments fall outside the region are skipped, not failed.
TrialOutcome check_inequality(const StepFunction& h, const Exponents& e);

struct StepConfig {
  int min_pieces = 1;
  int max_pieces = 8;
  double min_value = 0.1;
  double max_value = 10.0;
  double kappa = 1.0;
};

/// Deterministic in seed: sorted-uniform breakpoints, log-uniform values.
StepFunction random_step(std::uint64_t seed, const StepConfig& config = {});

struct ProbeOptions {
  int pieces = 24;
  int budget = 2000;
  std::uint64_t seed = 1;
};

struct ProbeResult {
  double best_ratio = 0.0;  // best lhs / z found
  double bound = 0.0;       // t^p
  double gap = 0.0;         // bound - best_ratio
  int accepted = 0;
  int projection_failures = 0;
  std::vector<double> best_breakpoints;  // on (0, 1]
  std::vector<double> best_values;
};

/// Local search over decreasing step functions with the moments of m (after
/// normalizing to x = kappa = 1), maximizing lhs / z. The start is the
/// two-level function with these moments, cut into pieces refined towards 0;
/// each move shifts mass between two pieces,
/// projects back onto the moment constraints by Newton steps, and re-sorts the
/// pieces into decreasing order.
ProbeResult sharpness_probe(const MomentTriple& m, const Exponents& e,
                            const ProbeOptions& opt = {});

}  // namespace bellman
