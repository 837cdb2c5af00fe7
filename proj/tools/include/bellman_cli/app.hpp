#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bellman::cli {

enum ExitCode : int {
  kPass = 0,
  kVerificationFailed = 1,
  kDomainError = 2,
  kNumericError = 3,
  kUsageError = 64,
};

enum class Format { csv, json };

struct RunConfig {
  double p = 2.0;
  double q = 1.5;
  std::optional<double> s1;
  std::optional<double> s2;
  std::optional<int> n;
  std::uint64_t seed = 1;
  int trials = 1000;
  std::optional<double> tol;
  Format format = Format::csv;
  std::string out;  // empty: standard output
  std::string suite = "all";
  std::vector<double> grid;
  std::optional<double> x;
  std::optional<double> y;
  std::optional<double> z;
  double kappa = 1.0;
};

/// Full command line including the program name. Artifacts go to --out when
/// given, otherwise to `out`; summaries go to `out` when the artifact has its
/// own file and to `err` otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string number(double v);

const std::vector<std::string>& suite_names();

}  // namespace bellman::cli
