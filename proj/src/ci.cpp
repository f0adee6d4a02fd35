#include "wsci/ci.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wsci/roots.hpp"

namespace wsci {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::standard: return "standard";
    case Method::shortest: return "shortest";
    case Method::randomized_standard: return "randomized-standard";
    case Method::randomized: return "randomized";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view s) {
  for (Method m : {Method::standard, Method::shortest, Method::randomized_standard,
                   Method::randomized}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

bool is_randomized(Method m) {
  return m == Method::randomized || m == Method::randomized_standard;
}

std::string_view to_string(Sidedness s) {
  switch (s) {
    case Sidedness::two_sided: return "two-sided";
    case Sidedness::lower_only: return "lower-only";
    case Sidedness::upper_only: return "upper-only";
  }
  return "?";
}

namespace {

bool at_zero(double u) { return u <= kSupportTol; }
bool at_one(double u) { return u >= 1.0 - kSupportTol; }
bool above_half(double u) { return u > 0.5 + kSupportTol; }

Sidedness sidedness_of(double lower, double upper) {
  if (lower <= 0.0 && upper < 1.0) return Sidedness::upper_only;
  if (upper >= 1.0 && lower > 0.0) return Sidedness::lower_only;
  return Sidedness::two_sided;
}

// One endpoint equation lhs(vartheta) = target with lhs decreasing in
// vartheta. Every evaluation is remembered: a later solve (the golden-section
// search asks for nearby targets) starts from the tightest sign-changing
// bracket among the points already seen.
class EndpointEquation {
 public:
  EndpointEquation(std::function<double(double)> lhs, const SolverConfig& cfg)
      : lhs_(std::move(lhs)), cfg_(cfg) {}

  // Largest root; 0 when the target is not reached above eps.
  double solve_lower(double target) {
    const double f_lo = at_lo() - target;
    if (f_lo <= 0.0) return 0.0;
    const double f_hi = at_hi() - target;
    if (f_hi > 0.0) {
      throw RootBracketFailure("lower endpoint: level " + std::to_string(target) +
                               " is not attained below 1");
    }
    return solve(target);
  }

  // Smallest root; 1 when the target is not reached below 1 - eps.
  double solve_upper(double target) {
    const double f_hi = at_hi() - target;
    if (f_hi >= 0.0) return 1.0;
    const double f_lo = at_lo() - target;
    if (f_lo < 0.0) {
      throw RootBracketFailure("upper endpoint: level " + std::to_string(target) +
                               " is not attained above 0");
    }
    return solve(target);
  }

 private:
  double eval(double t) {
    const double v = lhs_(t);
    seen_.emplace_back(t, v);
    return v;
  }
  double at_lo() {
    if (!lo_) lo_ = eval(cfg_.bracket_eps);
    return *lo_;
  }
  double at_hi() {
    if (!hi_) hi_ = eval(1.0 - cfg_.bracket_eps);
    return *hi_;
  }
  // Requires lhs(eps) > target > lhs(1 - eps), both already evaluated.
  double solve(double target) {
    double a = cfg_.bracket_eps, fa = *lo_ - target;
    for (auto [t, v] : seen_) {
      if (v - target > 0.0 && t > a) a = t, fa = v - target;
    }
    double b = 1.0 - cfg_.bracket_eps, fb = *hi_ - target;
    for (auto [t, v] : seen_) {
      if (v - target <= 0.0 && t > a && t < b) b = t, fb = v - target;
    }
    return brent_root([&](double t) { return eval(t) - target; }, a, b, fa, fb, cfg_.root_tol);
  }

  std::function<double(double)> lhs_;
  const SolverConfig& cfg_;
  std::optional<double> lo_;
  std::optional<double> hi_;
  std::vector<std::pair<double, double>> seen_;
};

// Both endpoint equations for an estimate u <= 0.5 (or any u, evaluated
// directly without reflection).
class SplitProblem {
 public:
  SplitProblem(const Model& model, double u, double gamma, std::optional<double> y,
               const SolverConfig& cfg)
      : gamma_(gamma),
        zero_(at_zero(u)),
        one_(at_one(u)),
        lower_(make_lower(model, u, y, cfg), cfg),
        upper_(make_upper(model, u, y, cfg), cfg) {}

  std::pair<double, double> ends(double gamma1) {
    const double lower = zero_ ? 0.0 : lower_.solve_lower(gamma_ + gamma1);
    const double upper = one_ ? 1.0 : upper_.solve_upper(gamma1);
    return {lower, upper};
  }

  double length(double gamma1) {
    auto [lower, upper] = ends(gamma1);
    return upper - lower;
  }

 private:
  static std::function<double(double)> make_lower(const Model& model, double u,
                                                  std::optional<double> y,
                                                  const SolverConfig& cfg) {
    if (!y) {
      return [&model, u, &cfg](double t) { return cdf_strict(model, u, t, cfg.quad); };
    }
    const double below = at_zero(u) ? kBelowSupport : neighbors(model.grid(), u).minus;
    return [&model, u, below, yy = *y, &cfg](double t) {
      return randomized_cdf(model, below, u, yy, t, cfg.quad);
    };
  }
  static std::function<double(double)> make_upper(const Model& model, double u,
                                                  std::optional<double> y,
                                                  const SolverConfig& cfg) {
    if (!y) {
      return [&model, u, &cfg](double t) { return cdf(model, u, t, cfg.quad); };
    }
    const double above = at_one(u) ? kAboveSupport : neighbors(model.grid(), u).plus;
    return [&model, u, above, yy = *y, &cfg](double t) {
      return randomized_cdf(model, u, above, yy, t, cfg.quad);
    };
  }

  double gamma_;
  bool zero_;
  bool one_;
  EndpointEquation lower_;
  EndpointEquation upper_;
};

double snap_to_grid(const Model& model, double u) {
  return model.grid().values[model.grid().index_of(u)];
}

Interval make_interval(double lower, double upper, double gamma1, std::optional<double> y) {
  Interval iv;
  iv.lower = lower;
  iv.upper = upper;
  iv.gamma1 = gamma1;
  iv.length = upper - lower;
  iv.sided = sidedness_of(lower, upper);
  iv.y = y;
  return iv;
}

// Maps an interval computed at 1 - u back to u.
Interval complement(const Interval& r, double gamma) {
  Interval iv = make_interval(1.0 - r.upper, 1.0 - r.lower, (1.0 - gamma) - r.gamma1,
                              r.y ? std::optional<double>(1.0 - *r.y) : std::nullopt);
  iv.reflected = true;
  return iv;
}

std::optional<double> flip(std::optional<double> y) {
  return y ? std::optional<double>(1.0 - *y) : std::nullopt;
}

}  // namespace

void validate(const IntervalRequest& req) {
  const auto [n1, n2] = req.model.swapped() ? std::pair{req.model.n2(), req.model.n1()}
                                            : std::pair{req.model.n1(), req.model.n2()};
  if (req.k1 < 0 || req.k1 > n1) {
    throw std::invalid_argument("k1 = " + std::to_string(req.k1) + " outside 0..n1 = " +
                                std::to_string(n1));
  }
  if (req.k2 < 0 || req.k2 > n2) {
    throw std::invalid_argument("k2 = " + std::to_string(req.k2) + " outside 0..n2 = " +
                                std::to_string(n2));
  }
  if (!(req.gamma > 0.5 && req.gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in (0.5, 1)");
  }
  if (req.y && !(*req.y >= 0.0 && *req.y <= 1.0)) {
    throw std::invalid_argument("y must lie in [0, 1]");
  }
}

double observed_estimate(const IntervalRequest& req) {
  const auto [k1, k2] = req.model.to_internal(req.k1, req.k2);
  return snap_to_grid(req.model, req.model.estimate(k1, k2));
}

double draw_uniform(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double resolve_y(const IntervalRequest& req) {
  if (req.y) return *req.y;
  if (req.seed) return draw_uniform(*req.seed);
  throw std::invalid_argument("randomized intervals need y or a seed");
}

double endpoint_upper(const Model& model, double u, double gamma1, const SolverConfig& cfg) {
  if (at_one(u)) return 1.0;
  EndpointEquation eq([&](double t) { return cdf(model, u, t, cfg.quad); }, cfg);
  return eq.solve_upper(gamma1);
}

double endpoint_lower(const Model& model, double u, double gamma2, const SolverConfig& cfg) {
  if (at_zero(u)) return 0.0;
  EndpointEquation eq([&](double t) { return cdf_strict(model, u, t, cfg.quad); }, cfg);
  return eq.solve_lower(gamma2);
}

double randomized_endpoint_upper(const Model& model, double u, double y, double gamma1,
                                 const SolverConfig& cfg) {
  if (at_one(u)) return 1.0;
  const double above = neighbors(model.grid(), u).plus;
  EndpointEquation eq([&](double t) { return randomized_cdf(model, u, above, y, t, cfg.quad); },
                      cfg);
  return eq.solve_upper(gamma1);
}

double randomized_endpoint_lower(const Model& model, double u, double y, double gamma2,
                                 const SolverConfig& cfg) {
  if (at_zero(u)) return 0.0;
  const double below = neighbors(model.grid(), u).minus;
  EndpointEquation eq([&](double t) { return randomized_cdf(model, below, u, y, t, cfg.quad); },
                      cfg);
  return eq.solve_lower(gamma2);
}

Interval interval_at_split(const Model& model, double u, double gamma, double gamma1,
                           std::optional<double> y, const SolverConfig& cfg) {
  u = snap_to_grid(model, u);
  if (above_half(u)) {
    return complement(
        interval_at_split(model, 1.0 - u, gamma, (1.0 - gamma) - gamma1, flip(y), cfg), gamma);
  }
  SplitProblem problem(model, u, gamma, y, cfg);
  auto [lower, upper] = problem.ends(gamma1);
  return make_interval(lower, upper, gamma1, y);
}

double split_length(const Model& model, double u, double gamma, double gamma1,
                    std::optional<double> y, const SolverConfig& cfg) {
  return interval_at_split(model, u, gamma, gamma1, y, cfg).length;
}

Interval shortest_at(const Model& model, double u, double gamma, std::optional<double> y,
                     const SolverConfig& cfg) {
  u = snap_to_grid(model, u);
  if (above_half(u)) return complement(shortest_at(model, 1.0 - u, gamma, flip(y), cfg), gamma);

  SplitProblem problem(model, u, gamma, y, cfg);
  const double top = 1.0 - gamma;
  auto length = [&](double g1) { return problem.length(g1); };
  const GoldenResult inner = golden_section_min(length, 0.0, top, cfg.golden_tol);

  // The minimum may sit on the boundary (one-sided shortest interval); the
  // golden probes never evaluate the ends themselves.
  double best = inner.argmin;
  double best_len = inner.value;
  if (best - 0.0 <= cfg.golden_tol) best = 0.0, best_len = length(0.0);
  if (top - best <= cfg.golden_tol) best = top, best_len = length(top);
  for (double edge : {0.0, top}) {
    const double len = length(edge);
    if (len < best_len || (len == best_len && edge < best)) {
      best = edge;
      best_len = len;
    }
  }
  auto [lower, upper] = problem.ends(best);
  return make_interval(lower, upper, best, y);
}

namespace {

Interval finish(Interval iv, Method m) {
  iv.method = m;
  return iv;
}

}  // namespace

Interval standard_ci(const IntervalRequest& req, const SolverConfig& cfg) {
  validate(req);
  const double g1 = (1.0 - req.gamma) / 2.0;
  return finish(interval_at_split(req.model, observed_estimate(req), req.gamma, g1,
                                  std::nullopt, cfg),
                Method::standard);
}

Interval shortest_ci(const IntervalRequest& req, const SolverConfig& cfg) {
  validate(req);
  return finish(shortest_at(req.model, observed_estimate(req), req.gamma, std::nullopt, cfg),
                Method::shortest);
}

Interval standard_randomized_ci(const IntervalRequest& req, const SolverConfig& cfg) {
  validate(req);
  const double g1 = (1.0 - req.gamma) / 2.0;
  return finish(interval_at_split(req.model, observed_estimate(req), req.gamma, g1,
                                  resolve_y(req), cfg),
                Method::randomized_standard);
}

Interval shortest_randomized_ci(const IntervalRequest& req, const SolverConfig& cfg) {
  validate(req);
  return finish(shortest_at(req.model, observed_estimate(req), req.gamma, resolve_y(req), cfg),
                Method::randomized);
}

Interval compute_interval(const IntervalRequest& req, const SolverConfig& cfg) {
  switch (req.method) {
    case Method::standard: return standard_ci(req, cfg);
    case Method::shortest: return shortest_ci(req, cfg);
    case Method::randomized_standard: return standard_randomized_ci(req, cfg);
    case Method::randomized: return shortest_randomized_ci(req, cfg);
  }
  throw std::invalid_argument("unknown method");
}

ShortestShape classify_sidedness(const Model& model, double u) {
  const double threshold = std::max(model.w1() / model.n1(), model.w2() / model.n2());
  return std::min(u, 1.0 - u) <= threshold + 1e-12 ? ShortestShape::one_sided
                                                  : ShortestShape::two_sided;
}

Reflected reflect(const Model& model, double gamma, const Reflected& in) {
  return {1.0 - in.u, (1.0 - gamma) - in.gamma1, flip(in.y), model.n1() - in.k1,
          model.n2() - in.k2};
}

}  // namespace wsci
