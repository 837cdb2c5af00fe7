#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bellman_cli/app.hpp"

namespace bellman::cli {

struct SuiteResult {
  std::string name;
  int checked = 0;
  int skipped = 0;
  int violations = 0;
  bool has_residual = false;
  double max_residual = 0.0;
  double threshold = 0.0;
  std::string worst_residual;   // inputs at the largest residual
  std::string first_violation;  // inputs and reason of the first violation
  std::vector<std::string> notes;

  bool pass() const noexcept {
    return violations == 0 && (!has_residual || max_residual <= threshold);
  }
  const std::string& worst() const noexcept {
    return violations ? first_violation : worst_residual;
  }
};

/// Runs one named suite. Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, const RunConfig& cfg);

}  // namespace bellman::cli
