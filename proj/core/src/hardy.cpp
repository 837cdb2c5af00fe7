#include "bellman/hardy.hpp"

#include "bellman/roots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>

namespace bellman {

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breaks_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.empty()) throw DomainError("step function needs at least one piece");
  if (breaks_.size() != values_.size() + 1)
    throw DomainError("step function needs one more breakpoint than values");
  if (breaks_.front() != 0.0) throw DomainError("first breakpoint must be 0");
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    if (!(breaks_[i] > breaks_[i - 1]) || !std::isfinite(breaks_[i]))
      throw DomainError("breakpoints must be finite and strictly increasing");
  bool positive = false;
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw DomainError("step values must be finite and nonnegative");
    positive = positive || v > 0.0;
  }
  if (!positive) throw DomainError("step function must be positive somewhere");
}

StepFunction StepFunction::constant(double c, double kappa) {
  return StepFunction({0.0, kappa}, {c});
}

StepFunction StepFunction::scaled(double lambda) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= lambda;
  return StepFunction(breaks_, std::move(v));
}

MomentTriple moments(const StepFunction& h, const Exponents& e) {
  MomentTriple m{0.0, 0.0, 0.0, h.kappa()};
  const auto u = h.breakpoints();
  const auto a = h.values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double du = u[i + 1] - u[i];
    m.x += a[i] * du;
    m.y += std::pow(a[i], e.q()) * du;
    m.z += std::pow(a[i], e.p()) * du;
  }
  return m;
}

Integral avg_power_integral(const StepFunction& h, double p) {
  const auto u = h.breakpoints();
  const auto a = h.values();
  Integral total;
  double acc = 0.0;  // int_0^{u_i} h
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double u0 = u[i];
    const double u1 = u[i + 1];
    const double ai = a[i];
    if (acc == 0.0 && u0 == 0.0) {
      // Running average is the constant a_i on the first piece.
      total.value += std::pow(ai, p) * (u1 - u0);
    } else {
      const double c = acc;
      auto f = [=](double v) { return std::pow((c + ai * (v - u0)) / v, p); };
      const double estimate = std::fmax(f(u0), f(u1)) * (u1 - u0);
      const Integral piece = integrate(f, u0, u1, 1e-10 * std::fmax(1.0, estimate));
      total.value += piece.value;
      total.error += piece.error;
    }
    acc += ai * (u1 - u0);
  }
  return total;
}

const char* to_string(TrialStatus s) noexcept {
  switch (s) {
    case TrialStatus::pass: return "pass";
    case TrialStatus::fail: return "fail";
    default: return "skipped";
  }
}

TrialOutcome check_inequality(const StepFunction& h, const Exponents& e) {
  TrialOutcome out;
  out.moments = moments(h, e);
  try {
    out.domain = moments_to_domain(out.moments, e);
  } catch (const DomainError& err) {
    out.status = TrialStatus::skipped;
    out.note = err.what();
    return out;
  }
  out.t = sharp_constant(out.domain, e).t;
  const Integral lhs = avg_power_integral(h, e.p());
  out.lhs = lhs.value;
  out.quadrature_error = lhs.error;
  out.bound = std::pow(out.t, e.p()) * out.moments.z;
  out.margin = out.bound - out.lhs;
  out.status = out.margin >= -(out.quadrature_error + 1e-9 * out.bound) ? TrialStatus::pass
                                                                          : TrialStatus::fail;
  return out;
}

namespace {

double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

StepFunction random_step(std::uint64_t seed, const StepConfig& config) {
  if (config.min_pieces < 1 || config.max_pieces < config.min_pieces)
    throw DomainError("invalid piece-count range");
  if (!(config.min_value > 0.0) || !(config.max_value >= config.min_value) ||
      !(config.kappa > 0.0))
    throw DomainError("invalid value range or kappa");

  std::mt19937_64 gen(seed);
  const auto span = static_cast<std::uint64_t>(config.max_pieces - config.min_pieces + 1);
  const int n = config.min_pieces + static_cast<int>(gen() % span);

  std::vector<double> breaks(n + 1, 0.0);
  for (int i = 1; i < n; ++i) breaks[i] = config.kappa * unit_uniform(gen);
  breaks[n] = config.kappa;
  std::sort(breaks.begin() + 1, breaks.end() - 1);
  // Collapse coincident draws; vanishingly rare but would break the invariant.
  for (int i = 1; i < n; ++i)
    if (!(breaks[i] > breaks[i - 1])) breaks[i] = std::nextafter(breaks[i - 1], config.kappa);

  const double log_lo = std::log(config.min_value);
  const double log_hi = std::log(config.max_value);
  std::vector<double> values(n);
  for (double& v : values) v = std::exp(log_lo + (log_hi - log_lo) * unit_uniform(gen));
  return StepFunction(std::move(breaks), std::move(values));
}

namespace {

using Vec3 = std::array<double, 3>;

// Solves the symmetric positive 3x3 system a x = b by Cramer's rule.
bool solve3(const std::array<Vec3, 3>& a, const Vec3& b, Vec3& x) {
  auto det = [](const std::array<Vec3, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d = det(a);
  if (!(std::fabs(d) > 0.0) || !std::isfinite(d)) return false;
  for (int c = 0; c < 3; ++c) {
    auto m = a;
    for (int r = 0; r < 3; ++r) m[r][c] = b[r];
    x[c] = det(m) / d;
  }
  return true;
}

// A step function on (0, 1] stored as (width, value) pieces; widths sum to 1.
struct Pieces {
  std::vector<double> width;
  std::vector<double> value;

  std::size_t size() const noexcept { return value.size(); }

  // Decreasing rearrangement: moments are unchanged and the Hardy side can
  // only grow.
  void sort_decreasing() {
    std::vector<std::size_t> order(size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [this](std::size_t a, std::size_t b) { return value[a] > value[b]; });
    Pieces sorted;
    for (std::size_t i : order) {
      sorted.width.push_back(width[i]);
      sorted.value.push_back(value[i]);
    }
    *this = std::move(sorted);
  }

  std::vector<double> breakpoints() const {
    std::vector<double> b(size() + 1, 0.0);
    for (std::size_t i = 0; i < size(); ++i) b[i + 1] = b[i] + width[i];
    b.back() = 1.0;
    return b;
  }
};

// Moment constraints on (0, 1]: sum w v = target[0], sum w v^q = target[1],
// sum w v^p = target[2].
class MomentProjector {
 public:
  MomentProjector(const Exponents& e, Vec3 target) : e_(e), target_(target) {}

  Vec3 moments(const Pieces& h) const {
    Vec3 m{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double w = h.width[i];
      const double x = h.value[i];
      m[0] += w * x;
      m[1] += w * std::pow(x, e_.q());
      m[2] += w * std::pow(x, e_.p());
    }
    return m;
  }

  Vec3 residual(const Pieces& h) const {
    Vec3 r = moments(h);
    for (int k = 0; k < 3; ++k) r[k] -= target_[k];
    return r;
  }

  // Min-norm Newton steps with backtracking; false if the values cannot be
  // brought onto the constraints while staying positive.
  bool project(Pieces& h) const {
    Vec3 r = residual(h);
    for (int it = 0; it < 60; ++it) {
      if (converged(r)) return true;
      std::vector<Vec3> rows(h.size());
      for (std::size_t i = 0; i < h.size(); ++i) {
        const double w = h.width[i];
        const double x = h.value[i];
        rows[i] = {w, w * e_.q() * std::pow(x, e_.q() - 1.0), w * e_.p() * std::pow(x, e_.p() - 1.0)};
      }
      std::array<Vec3, 3> jjt{};
      for (const auto& row : rows)
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) jjt[a][b] += row[a] * row[b];
      Vec3 lambda;
      if (!solve3(jjt, r, lambda)) return false;

      double step = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 30 && !moved; ++ls, step *= 0.5) {
        Pieces trial = h;
        bool positive = true;
        for (std::size_t i = 0; i < h.size() && positive; ++i) {
          trial.value[i] -= step * (rows[i][0] * lambda[0] + rows[i][1] * lambda[1] +
                                    rows[i][2] * lambda[2]);
          positive = trial.value[i] > 0.0;
        }
        if (!positive) continue;
        const Vec3 rt = residual(trial);
        if (norm(rt) < norm(r)) {
          h = std::move(trial);
          r = rt;
          moved = true;
        }
      }
      if (!moved) return converged(r);
    }
    return converged(r);
  }

 private:
  static double norm(const Vec3& r) { return std::fabs(r[0]) + std::fabs(r[1]) + std::fabs(r[2]); }

  bool converged(const Vec3& r) const {
    for (int k = 0; k < 3; ++k)
      if (!(std::fabs(r[k]) <= 1e-12 * std::fmax(1.0, target_[k]))) return false;
    return true;
  }

  Exponents e_;
  Vec3 target_;
};

double ratio_of(const Pieces& h, const Exponents& e) {
  const double p = e.p();
  const StepFunction f(h.breakpoints(), h.value);
  double z = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) z += h.width[i] * std::pow(h.value[i], p);
  return avg_power_integral(f, p).value / z;
}

// h = a on (0, w], b on (w, 1] with mean 1 and the given q-th and p-th
// moments, subdivided into n pieces: half of them on (0, w] with widths
// shrinking geometrically towards 0, the rest uniform on (w, 1].
Pieces two_level_start(double y, double z, const Exponents& e, int n) {
  const double p = e.p();
  const double q = e.q();
  double a = 0.0;
  double w = 0.0;
  // For fixed b, the level a > 1 that matches the q-th moment.
  auto fit_a = [&](double b) {
    auto fy = [&](double level) {
      const double weight = (1.0 - b) / (level - b);
      return weight * std::pow(level, q) + (1.0 - weight) * std::pow(b, q) - y;
    };
    double hi = 2.0;
    while (fy(hi) < 0.0) {
      hi *= 2.0;
      if (hi > 1e200) throw NumericError("no bracket for the upper level", 1.0, hi);
    }
    a = bisect(fy, 1.0, hi);
    w = (1.0 - b) / (a - b);
  };
  auto fz = [&](double b) {
    fit_a(b);
    return w * std::pow(a, p) + (1.0 - w) * std::pow(b, p) - z;
  };
  // The p-th moment grows without bound as b -> 1.
  double b_hi = 0.5;
  while (fz(b_hi) < 0.0) {
    b_hi = 0.5 * (1.0 + b_hi);
    if (b_hi > 1.0 - 1e-12) throw NumericError("no bracket for the lower level", 0.0, b_hi);
  }
  const double b = bisect(fz, 0.0, b_hi);
  fit_a(b);

  const int head = n / 2;
  const double rho = std::pow(1e-3, 1.0 / std::max(head - 1, 1));
  Pieces h;
  double prev = 0.0;
  for (int k = 1; k <= head; ++k) {
    const double u = k == head ? w : w * std::pow(rho, head - k);
    h.width.push_back(u - prev);
    h.value.push_back(a);
    prev = u;
  }
  for (int k = 1; k <= n - head; ++k) {
    const double u = k == n - head ? 1.0 : w + (1.0 - w) * k / (n - head);
    h.width.push_back(u - prev);
    h.value.push_back(b);
    prev = u;
  }
  return h;
}

}  // namespace

ProbeResult sharpness_probe(const MomentTriple& m, const Exponents& e, const ProbeOptions& opt) {
  if (opt.pieces < 3) throw DomainError("sharpness probe needs at least 3 pieces");
  const DomainPoint s = moments_to_domain(m, e);

  ProbeResult out;
  out.bound = std::pow(sharp_constant(s, e).t, e.p());

  const Vec3 target{1.0, 1.0 / s.s2, 1.0 / s.s1};
  const MomentProjector proj(e, target);
  const int n = opt.pieces;

  Pieces h = two_level_start(target[1], target[2], e, n);
  h.sort_decreasing();

  double best = ratio_of(h, e);
  std::mt19937_64 gen(opt.seed);
  std::normal_distribution<double> normal;
  double step = 0.1;
  for (int it = 0; it < opt.budget; ++it) {
    Pieces trial = h;
    const int i = static_cast<int>(gen() % static_cast<std::uint64_t>(n));
    int j = static_cast<int>(gen() % static_cast<std::uint64_t>(n - 1));
    if (j >= i) ++j;
    // Move mass between two pieces, keeping the first moment.
    const double delta = step * normal(gen) * std::fmin(trial.width[i], trial.width[j]);
    trial.value[i] += delta / trial.width[i];
    trial.value[j] -= delta / trial.width[j];
    if (trial.value[i] <= 0.0 || trial.value[j] <= 0.0 || !proj.project(trial)) {
      ++out.projection_failures;
      step = std::fmax(step * 0.5, 1e-6);
      continue;
    }
    trial.sort_decreasing();
    const double r = ratio_of(trial, e);
    if (r > best) {
      best = r;
      h = std::move(trial);
      ++out.accepted;
      step = std::fmin(step * 1.5, 1.0);
    } else {
      step = std::fmax(step * 0.9, 1e-6);
    }
  }
  out.best_ratio = best;
  out.gap = out.bound - best;
  out.best_breakpoints = h.breakpoints();
  out.best_values = std::move(h.value);
  return out;
}

}  // namespace bellman
