#include "suites.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include "bellman/analysis.hpp"

namespace bellman::cli {

namespace {

const std::vector<Exponents>& pairs() {
  static const std::vector<Exponents> v{
      {2.0, 1.5}, {3.0, 2.0}, {2.5, 1.2}, {4.0, 3.0}, {1.8, 1.3}};
  return v;
}

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : gen_(seed) {}
  double operator()(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(gen_() >> 11) * 0x1.0p-53);
  }

 private:
  std::mt19937_64 gen_;
};

std::string where(const Exponents& e, const char* fmt, double a, double b = 0.0) {
  char head[64];
  std::snprintf(head, sizeof head, "p=%.17g q=%.17g ", e.p(), e.q());
  char tail[160];
  std::snprintf(tail, sizeof tail, fmt, a, b);
  return std::string(head) + tail;
}

// Residual bookkeeping shared by the threshold suites.
struct Tracker {
  SuiteResult& r;
  void residual(double v, const std::string& at) {
    if (std::isnan(v)) {
      violation(at, "residual is NaN");
      return;
    }
    if (r.checked++ == 0 || v > r.max_residual) {
      r.max_residual = v;
      r.worst_residual = at;
    }
  }
  void violation(const std::string& at, const std::string& why) {
    if (r.violations++ == 0) r.first_violation = at + ": " + why;
  }
};

SuiteResult residual_suite(const char* name, double default_tol, const RunConfig& cfg) {
  SuiteResult r;
  r.name = name;
  r.has_residual = true;
  r.threshold = cfg.tol.value_or(default_tol);
  return r;
}

SuiteResult roundtrip(const RunConfig& cfg) {
  SuiteResult r = residual_suite("roundtrip", 1e-12, cfg);
  Tracker tr{r};
  const int n = cfg.n.value_or(1000);
  for (const auto& e : pairs()) {
    for (double exponent : {e.p(), e.q()}) {
      for (int i = 0; i < n; ++i) {
        const double s = (i + 0.5) / n;
        tr.residual(std::fabs(hcurve(omega(s, exponent), exponent) - s),
                    where(e, "r=%.17g s=%.17g", exponent, s));
      }
    }
  }
  return r;
}

SuiteResult s1_sweep(const char* name, double default_tol, const RunConfig& cfg,
                     double (*check)(double, const Exponents&)) {
  SuiteResult r = residual_suite(name, default_tol, cfg);
  Tracker tr{r};
  const int n = cfg.n.value_or(100);
  for (const auto& e : pairs()) {
    for (int i = 0; i < n; ++i) {
      const double s1 = (i + 1.0) / (n + 1.0);
      tr.residual(check(s1, e), where(e, "s1=%.17g", s1));
    }
  }
  return r;
}

std::vector<double> monotone_grid(const RunConfig& cfg) {
  if (!cfg.grid.empty()) return cfg.grid;
  const int n = cfg.n.value_or(100);
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = 1e-4 + (1.0 - 2e-4) * i / (n - 1);
  return g;
}

SuiteResult grid_suite(const char* name, const RunConfig& cfg,
                       const std::function<GridCheck(const Exponents&, const std::vector<double>&)>& run) {
  SuiteResult r;
  r.name = name;
  Tracker tr{r};
  const auto grid = monotone_grid(cfg);
  for (const auto& e : pairs()) {
    const GridCheck c = run(e, grid);
    r.checked += static_cast<int>(grid.size());
    r.skipped += static_cast<int>(c.skipped.size());
    for (double s : c.skipped) r.notes.push_back(where(e, "s=%.17g skipped at the singularity guard", s));
    for (const auto& v : c.violations) tr.violation(where(e, "s=%.17g", v.at), v.reason);
  }
  return r;
}

SuiteResult boundary(const RunConfig& cfg) {
  SuiteResult r = residual_suite("boundary-margin", 1e-12, cfg);
  Tracker tr{r};
  const int n = cfg.n.value_or(1000);
  for (const auto& e : pairs()) {
    for (int i = 0; i < n; ++i) {
      const double s1 = (i + 1.0) / (n + 1.0);
      const BoundaryMargin m = boundary_margin(s1, e);
      if (!(m.margin > 0.0)) tr.violation(where(e, "s1=%.17g", s1), "margin not positive");
      if (i == n - 1 && !(m.margin < 1e-3))
        tr.violation(where(e, "s1=%.17g", s1), "margin does not approach 0 near s1 = 1");
      if (i == 0) tr.residual(std::fabs(m.g_at_one), where(e, "g(1) at s1=%.17g", 1.0));
    }
  }
  return r;
}

SuiteResult endpoint(const RunConfig& cfg) {
  SuiteResult r = residual_suite("endpoint-identity", 1e-11, cfg);
  Tracker tr{r};
  Uniform u(cfg.seed);
  const int n = cfg.n.value_or(1000);
  for (int i = 0; i < n; ++i) {
    const Exponents& e = pairs()[i % pairs().size()];
    const double top = omega_upper(e.p());
    const double t = u(1.0, top);
    if (!(t > 1.0) || !(t < top)) continue;
    tr.residual(check_endpoint_identity(t, e), where(e, "t=%.17g", t));
  }
  return r;
}

DomainPoint random_point(Uniform& u, const Exponents& e) {
  const double s1 = u(0.01, 0.99);
  const double floor = std::pow(s1, (e.q() - 1.0) / (e.p() - 1.0));
  return {s1, u(floor + 1e-4, 1.0 - 1e-4)};
}

SuiteResult tau_gap(const RunConfig& cfg) {
  SuiteResult r = residual_suite("tau-gap", 1e-12, cfg);
  Tracker tr{r};
  Uniform u(cfg.seed);
  const int n = cfg.n.value_or(1000);
  for (int i = 0; i < n; ++i) {
    const Exponents& e = pairs()[i % pairs().size()];
    const DomainPoint s = random_point(u, e);
    const double t = u(1.0, t_zero(s, e));
    tr.residual(check_tau_gap(s, t, e), where(e, "s1=%.17g s2=%.17g", s.s1, s.s2));
  }
  return r;
}

SuiteResult signs(const RunConfig& cfg) {
  SuiteResult r;
  r.name = "signs";
  Tracker tr{r};
  Uniform u(cfg.seed);
  const int n = cfg.n.value_or(500);
  for (int i = 0; i < n; ++i) {
    const Exponents& e = pairs()[i % pairs().size()];
    const DomainPoint s = random_point(u, e);
    const BellmanResult b = sharp_constant(s, e);
    ++r.checked;
    const std::string at = where(e, "s1=%.17g s2=%.17g", s.s1, s.s2);
    if (!(b.delta1 > 0.0)) tr.violation(at, "Delta1 not positive");
    if (!(b.e1 < 0.0)) tr.violation(at, "E1 not negative");
  }
  return r;
}

SuiteResult rising(const RunConfig& cfg) {
  SuiteResult r = residual_suite("rising-branch", 1e-10, cfg);
  Tracker tr{r};
  Uniform u(cfg.seed);
  const int n = cfg.n.value_or(100);
  for (int i = 0; i < n; ++i) {
    const Exponents& e = pairs()[i % pairs().size()];
    const double s1 = u(0.05, 0.95);
    const double lo = regime_a_threshold(s1, e);
    const double hi = s2_critical(s1, e);
    const double s2 = u(lo + 1e-3 * (hi - lo), hi - 1e-3 * (hi - lo));
    const double m = rising_branch_margins({s1, s2}, e).min_margin();
    tr.residual(std::fmax(0.0, -m), where(e, "s1=%.17g s2=%.17g", s1, s2));
  }
  return r;
}

SuiteResult monotonicity(const RunConfig& cfg) {
  SuiteResult r;
  r.name = "monotonicity";
  Tracker tr{r};
  const int n = cfg.n.value_or(256);
  for (const auto& e : pairs()) {
    for (double s1 : {0.1, 0.35, 0.6, 0.85}) {
      const MonotonicityReport rep = scan_monotonicity(s1, e, n);
      r.checked += static_cast<int>(rep.rows.size());
      for (const auto& v : rep.violations)
        tr.violation(where(e, "s1=%.17g s2=%.17g", s1, v.at), v.reason);
      if (rep.agreement() < 0.99)
        tr.violation(where(e, "s1=%.17g", s1), "predicted sign agreement below 99%");
    }
  }
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "roundtrip",       "critical-tau", "critical-balance", "peak",
      "a-monotone",      "f-monotone",   "boundary-margin",  "endpoint-identity",
      "tau-gap",         "signs",        "rising-branch",    "monotonicity"};
  return names;
}

SuiteResult run_suite(const std::string& name, const RunConfig& cfg) {
  if (name == "roundtrip") return roundtrip(cfg);
  if (name == "critical-tau") return s1_sweep("critical-tau", 1e-9, cfg, check_critical_tau);
  if (name == "critical-balance")
    return s1_sweep("critical-balance", 1e-8, cfg, check_critical_balance);
  if (name == "peak") return s1_sweep("peak", 1e-9, cfg, check_peak_value);
  if (name == "a-monotone")
    return grid_suite("a-monotone", cfg, [](const Exponents& e, const std::vector<double>& g) {
      return check_a_monotone(e.q(), g);
    });
  if (name == "f-monotone")
    return grid_suite("f-monotone", cfg, [](const Exponents& e, const std::vector<double>& g) {
      return check_f_monotone(e, g);
    });
  if (name == "boundary-margin") return boundary(cfg);
  if (name == "endpoint-identity") return endpoint(cfg);
  if (name == "tau-gap") return tau_gap(cfg);
  if (name == "signs") return signs(cfg);
  if (name == "rising-branch") return rising(cfg);
  if (name == "monotonicity") return monotonicity(cfg);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace bellman::cli
