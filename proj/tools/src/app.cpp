#include "bellman_cli/app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "bellman/analysis.hpp"
#include "bellman/hardy.hpp"
#include "output.hpp"
#include "suites.hpp"

namespace bellman::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string count(int v) { return std::to_string(v); }

std::string sign_text(Sign s) { return std::string(1, to_char(s)); }

Exponents exponents(const RunConfig& cfg) {
  try {
    return Exponents(cfg.p, cfg.q);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

double required(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required flag ") + flag);
  return *v;
}

// Where the artifact and the human-readable summary go.
class Sinks {
 public:
  Sinks(const RunConfig& cfg, std::ostream& out, std::ostream& err) : out_(out), err_(err) {
    if (!cfg.out.empty()) {
      file_.open(cfg.out, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file " + cfg.out);
    }
  }
  std::ostream& artifact() { return file_.is_open() ? file_ : out_; }
  std::ostream& summary() { return file_.is_open() ? out_ : err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::ofstream file_;
};

void emit_record(std::ostream& os, Format f, const Table& t) {
  if (f == Format::csv)
    write_csv(os, t);
  else
    os << t.row_json(0).dump(2) << '\n';
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Exponents e = exponents(cfg);
  const DomainPoint s{required(cfg.s1, "--s1"), required(cfg.s2, "--s2")};
  Sinks sinks(cfg, out, err);
  const BellmanResult r = sharp_constant(s, e);
  const SignPrediction pred = predict_dt_ds2(s, r, e);
  Table t;
  t.columns = {"p",     "q",        "s1",     "s2", "t",           "case",     "t0",
               "tau",   "residual", "delta1", "e1", "s2_critical", "pred_sign"};
  t.rows.push_back({number(e.p()), number(e.q()), number(s.s1), number(s.s2), number(r.t),
                    to_string(r.regime), number(r.t0), number(r.tau), number(r.residual),
                    number(r.delta1), number(r.e1), number(s2_critical(s.s1, e)),
                    sign_text(pred.sign)});
  emit_record(sinks.artifact(), cfg.format, t);
  return kPass;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Exponents e = exponents(cfg);
  const double s1 = required(cfg.s1, "--s1");
  const int n = cfg.n.value_or(256);
  if (n < 16) throw UsageError("--n must be at least 16 for a scan");
  Sinks sinks(cfg, out, err);
  const MonotonicityReport rep = scan_monotonicity(s1, e, n);

  Table rows;
  rows.columns = {"s2",   "t",    "case",      "t0",      "tau",
                  "F_tau", "A_s2", "pred_sign", "fd_sign", "fd_value"};
  for (const auto& r : rep.rows)
    rows.rows.push_back({number(r.s2), number(r.result.t), to_string(r.result.regime),
                         number(r.result.t0), number(r.result.tau), number(r.f_tau),
                         number(r.a_s2), sign_text(r.pred), sign_text(r.fd_sign), number(r.fd)});
  Table summary;
  summary.columns = {"s2_critical",     "peak_s2",          "peak_t",   "omega_p",
                     "fd_sign_changes", "sign_change_s2", "compared", "agreed",
                     "violations"};
  summary.rows.push_back({number(rep.s2_critical), number(rep.peak_s2), number(rep.peak_t),
                          number(rep.omega_p), count(rep.fd_sign_changes),
                          number(rep.sign_change_s2), count(rep.compared), count(rep.agreed),
                          count(static_cast<int>(rep.violations.size()))});
  Table violations;
  violations.columns = {"s2", "reason"};
  for (const auto& v : rep.violations) violations.rows.push_back({number(v.at), v.reason});

  std::ostream& os = sinks.artifact();
  if (cfg.format == Format::csv) {
    write_csv(os, rows);
    os << '\n';
    write_csv(os, summary);
  } else {
    Json doc = Json::object();
    doc["config"] = {{"p", number(e.p())}, {"q", number(e.q())}, {"s1", number(s1)},
                     {"n", count(n)}};
    doc["rows"] = rows.to_json();
    doc["summary"] = summary.row_json(0);
    doc["violations"] = violations.to_json();
    os << doc.dump(2) << '\n';
  }

  std::ostream& log = sinks.summary();
  log << "scan: " << rep.rows.size() << " points, peak at s2 = " << number(rep.peak_s2)
      << " with t = " << number(rep.peak_t) << ", " << rep.violations.size()
      << " violations\n";
  for (const auto& v : rep.violations) log << "  s2 = " << number(v.at) << ": " << v.reason << '\n';
  return rep.violations.empty() ? kPass : kVerificationFailed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.tol && !(*cfg.tol > 0.0)) throw UsageError("--tol must be positive");
  if (cfg.n && *cfg.n < 2) throw UsageError("--n must be at least 2");
  std::vector<std::string> selected;
  if (cfg.suite == "all")
    selected = suite_names();
  else
    selected.push_back(cfg.suite);
  Sinks sinks(cfg, out, err);

  Table t;
  t.columns = {"suite",        "checked",   "skipped", "violations",
               "max_residual", "threshold", "status",  "worst"};
  bool all_pass = true;
  std::ostream& log = sinks.summary();
  for (const auto& name : selected) {
    const SuiteResult r = run_suite(name, cfg);
    all_pass = all_pass && r.pass();
    t.rows.push_back({r.name, count(r.checked), count(r.skipped), count(r.violations),
                      r.has_residual ? number(r.max_residual) : "",
                      r.has_residual ? number(r.threshold) : "", r.pass() ? "pass" : "fail",
                      r.worst()});
    log << name << ": " << (r.pass() ? "pass" : "FAIL") << " (" << r.checked << " checked";
    if (r.has_residual) log << ", max residual " << number(r.max_residual);
    if (r.skipped) log << ", " << r.skipped << " skipped";
    if (r.violations) log << ", " << r.violations << " violations";
    log << ")\n";
    for (const auto& note : r.notes) log << "  " << note << '\n';
    if (!r.pass()) log << "  worst offender: " << r.worst() << '\n';
  }
  std::ostream& os = sinks.artifact();
  if (cfg.format == Format::csv) {
    write_csv(os, t);
  } else {
    Json doc = Json::object();
    doc["suites"] = t.to_json();
    doc["status"] = all_pass ? "pass" : "fail";
    os << doc.dump(2) << '\n';
  }
  return all_pass ? kPass : kVerificationFailed;
}

int cmd_hardy(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Exponents e = exponents(cfg);
  if (cfg.trials < 1) throw UsageError("--trials must be at least 1");
  Sinks sinks(cfg, out, err);
  Table t;
  t.columns = {"seed", "status", "x",   "y",     "z",      "kappa",    "s1",
               "s2",   "t",      "lhs", "bound", "margin", "quad_err", "note"};
  int passed = 0, failed = 0, skipped = 0;
  for (int i = 0; i < cfg.trials; ++i) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    const TrialOutcome o = check_inequality(random_step(seed), e);
    switch (o.status) {
      case TrialStatus::pass: ++passed; break;
      case TrialStatus::fail: ++failed; break;
      case TrialStatus::skipped: ++skipped; break;
    }
    const bool ran = o.status != TrialStatus::skipped;
    auto val = [ran](double v) { return ran ? number(v) : std::string(); };
    t.rows.push_back({std::to_string(seed), to_string(o.status), number(o.moments.x),
                      number(o.moments.y), number(o.moments.z), number(o.moments.kappa),
                      val(o.domain.s1), val(o.domain.s2), val(o.t), val(o.lhs), val(o.bound),
                      val(o.margin), val(o.quadrature_error), o.note});
  }
  std::ostream& os = sinks.artifact();
  if (cfg.format == Format::csv) {
    write_csv(os, t);
  } else {
    Json doc = Json::object();
    doc["config"] = {{"p", number(e.p())},
                     {"q", number(e.q())},
                     {"seed", std::to_string(cfg.seed)},
                     {"trials", count(cfg.trials)}};
    doc["trials"] = t.to_json();
    doc["summary"] = {{"pass", count(passed)}, {"fail", count(failed)},
                      {"skipped", count(skipped)}};
    os << doc.dump(2) << '\n';
  }
  sinks.summary() << "hardy: " << passed << " pass, " << failed << " fail, " << skipped
                  << " skipped\n";
  return failed == 0 ? kPass : kVerificationFailed;
}

int cmd_moments(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Exponents e = exponents(cfg);
  const double x = required(cfg.x, "--x");
  const double z = required(cfg.z, "--z");
  Sinks sinks(cfg, out, err);
  const CriticalMoment c = critical_moment(x, z, cfg.kappa, e);
  Table t;
  t.columns = {"x", "z", "kappa", "s1", "y0", "y_lower", "y_upper", "s2_critical"};
  t.rows.push_back({number(x), number(z), number(cfg.kappa),
                    number(std::pow(x, e.p()) / (std::pow(cfg.kappa, e.p() - 1.0) * z)),
                    number(c.y0), number(c.lower), number(c.upper), number(c.s2_at_y0)});
  if (cfg.y) {
    const DomainPoint s = moments_to_domain({x, *cfg.y, z, cfg.kappa}, e);
    const BellmanResult r = sharp_constant(s, e);
    t.columns.insert(t.columns.end(), {"y", "s2", "t", "case"});
    t.rows[0].insert(t.rows[0].end(),
                     {number(*cfg.y), number(s.s2), number(r.t), to_string(r.regime)});
  }
  emit_record(sinks.artifact(), cfg.format, t);
  return kPass;
}

}  // namespace

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Sharp Bellman constant for the dyadic maximal operator", "bellman"};
  app.set_config("--config", "", "flat key = value file; command-line flags take precedence");
  app.option_defaults()->always_capture_default();

  app.add_option("--p", cfg.p, "exponent p > q");
  app.add_option("--q", cfg.q, "exponent q > 1");
  app.add_option("--s1", cfg.s1, "first domain coordinate");
  app.add_option("--s2", cfg.s2, "second domain coordinate");
  app.add_option("--n", cfg.n, "grid size (scan default 256; verify uses per-suite defaults)");
  app.add_option("--seed", cfg.seed, "base seed");
  app.add_option("--trials", cfg.trials, "number of Hardy trials");
  app.add_option("--tol", cfg.tol, "override residual thresholds in verify");
  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};
  app.add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--out", cfg.out, "artifact path (default: standard output)");
  app.add_option("--grid", cfg.grid, "comma-separated s2 grid for the monotone suites")
      ->delimiter(',');
  app.add_option("--x", cfg.x, "first moment");
  app.add_option("--y", cfg.y, "q-th moment");
  app.add_option("--z", cfg.z, "p-th moment");
  app.add_option("--kappa", cfg.kappa, "length of the interval");

  using Command = std::function<int(const RunConfig&, std::ostream&, std::ostream&)>;
  std::vector<std::pair<CLI::App*, Command>> commands;
  auto add = [&](const char* name, const char* help, Command fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    commands.emplace_back(sub, std::move(fn));
    return sub;
  };
  add("eval", "evaluate the sharp constant at (s1, s2)", cmd_eval);
  add("scan", "scan t(s1, .) over s2 and check the rise-then-fall pattern", cmd_scan);
  CLI::App* verify = add("verify", "run verification suites", cmd_verify);
  std::vector<std::string> choices = suite_names();
  choices.push_back("all");
  verify->add_option("suite", cfg.suite, "suite name or all")->check(CLI::IsMember(choices));
  add("hardy", "random trials of the Hardy-type bound", cmd_hardy);
  add("moments", "map moments (x, y, z, kappa) to the domain and report y0", cmd_moments);
  app.require_subcommand(1);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }

  for (auto& [sub, fn] : commands) {
    if (!sub->parsed()) continue;
    try {
      return fn(cfg, out, err);
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << '\n';
      return kUsageError;
    } catch (const DomainError& e) {
      err << "domain error: " << e.what() << '\n';
      return kDomainError;
    } catch (const NumericError& e) {
      err << "numeric error: " << e.what() << '\n';
      return kNumericError;
    } catch (const SingularityError& e) {
      err << "numeric error: " << e.what() << '\n';
      return kNumericError;
    }
  }
  return kUsageError;
}

}  // namespace bellman::cli
