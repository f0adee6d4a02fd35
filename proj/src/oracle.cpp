#include "wsci/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace wsci::oracle {

namespace {

double naive_choose(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

double naive_pmf(int k, int n, double p) {
  return naive_choose(n, k) * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

template <class Hit>
McEstimate simulate(const Model& model, double vartheta, const McConfig& cfg, Hit&& hit) {
  if (!(vartheta > 0.0 && vartheta < 1.0)) throw std::invalid_argument("vartheta in (0, 1)");
  std::mt19937_64 gen(cfg.seed);
  const double a = std::max(0.0, (vartheta - model.w2()) / model.w1());
  const double b = std::min(1.0, vartheta / model.w1());
  std::uniform_real_distribution<double> theta1_dist(a, b);
  long count = 0;
  for (long s = 0; s < cfg.samples; ++s) {
    const double theta1 = theta1_dist(gen);
    const double theta2 = std::clamp((vartheta - model.w1() * theta1) / model.w2(), 0.0, 1.0);
    const int k1 = std::binomial_distribution<int>(model.n1(), theta1)(gen);
    const int k2 = std::binomial_distribution<int>(model.n2(), theta2)(gen);
    const double value = model.w1() * k1 / model.n1() + model.w2() * k2 / model.n2();
    if (hit(value)) ++count;
  }
  const double p = static_cast<double>(count) / cfg.samples;
  return {p, std::sqrt(p * (1.0 - p) / cfg.samples)};
}

}  // namespace

McEstimate mc_cdf(const Model& model, double u, double vartheta, const McConfig& cfg) {
  return simulate(model, vartheta, cfg, [u](double v) { return v <= u + 1e-12; });
}

McEstimate mc_pmf(const Model& model, double u, double vartheta, const McConfig& cfg) {
  return simulate(model, vartheta, cfg, [u](double v) { return std::abs(v - u) <= 1e-9; });
}

std::vector<double> brute_joint_masses(const Model& model, double vartheta, int panels) {
  const int n1 = model.n1(), n2 = model.n2();
  if ((n1 + 1) * (n2 + 1) > kMaxBruteOutcomes) {
    throw DesignTooLarge("brute force is limited to " + std::to_string(kMaxBruteOutcomes) +
                         " outcomes");
  }
  if (panels < 2) panels = 2;
  if (panels % 2 == 1) ++panels;
  std::vector<double> joint(static_cast<std::size_t>((n1 + 1) * (n2 + 1)), 0.0);
  const double a = std::max(0.0, (vartheta - model.w2()) / model.w1());
  const double b = std::min(1.0, vartheta / model.w1());
  const double h = (b - a) / panels;
  for (int i = 0; i <= panels; ++i) {
    const double weight = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double theta1 = a + i * h;
    const double theta2 = std::clamp((vartheta - model.w1() * theta1) / model.w2(), 0.0, 1.0);
    for (int k1 = 0; k1 <= n1; ++k1) {
      for (int k2 = 0; k2 <= n2; ++k2) {
        joint[k1 * (n2 + 1) + k2] +=
            weight * naive_pmf(k1, n1, theta1) * naive_pmf(k2, n2, theta2);
      }
    }
  }
  for (double& m : joint) m *= h / 3.0 / (b - a);
  return joint;
}

double brute_coverage(const Model& model, double vartheta, Method method, double gamma,
                      int fine_quad, int y_nodes, const SolverConfig& cfg) {
  const std::vector<double> joint = brute_joint_masses(model, vartheta, fine_quad);
  const int n1 = model.n1(), n2 = model.n2();
  const int ys = is_randomized(method) ? y_nodes : 1;
  double coverage = 0.0;
  for (int k1 = 0; k1 <= n1; ++k1) {
    for (int k2 = 0; k2 <= n2; ++k2) {
      double hit = 0.0;
      for (int j = 0; j < ys; ++j) {
        // to_internal is its own inverse, so it also maps back to the caller's labels.
        const auto [c1, c2] = model.to_internal(k1, k2);
        IntervalRequest req{model, c1, c2, gamma, method, std::nullopt, std::nullopt};
        if (is_randomized(method)) req.y = (j + 0.5) / ys;
        const Interval iv = compute_interval(req, cfg);
        if (iv.lower < vartheta && vartheta < iv.upper) hit += 1.0 / ys;
      }
      coverage += joint[k1 * (n2 + 1) + k2] * hit;
    }
  }
  return coverage;
}

}  // namespace wsci::oracle
