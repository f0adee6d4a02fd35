#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "wsci/errors.hpp"

namespace wsci {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 200;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// One G7K15 panel of a vector-valued integrand. `f(x, values)` overwrites
// `values`. Returns the largest error estimate over components, using the
// QUADPACK scaling of |K15 - G7| by the panel's spread about its mean.
template <class F>
double kronrod_panel(F& f, double a, double b, std::span<double> kronrod,
                     std::vector<double>& gauss, std::vector<double>& samples) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::size_t dim = kronrod.size();
  samples.resize(15 * dim);
  auto row = [&](std::size_t node) { return std::span<double>(samples).subspan(node * dim, dim); };

  // Node order: 0 = centre, 2i+1 / 2i+2 = centre -/+ half * x_i.
  f(centre, row(0));
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    f(centre - dx, row(2 * i + 1));
    f(centre + dx, row(2 * i + 2));
  }

  double worst = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const double fc = samples[j];
    double k15 = kKronrodWeights[7] * fc;
    double g7 = kGaussWeights[3] * fc;
    double abs_k = std::abs(k15);
    for (std::size_t i = 0; i < 7; ++i) {
      const double pair = samples[(2 * i + 1) * dim + j] + samples[(2 * i + 2) * dim + j];
      k15 += kKronrodWeights[i] * pair;
      // Odd Kronrod indices are the Gauss nodes.
      if (i % 2 == 1) g7 += kGaussWeights[i / 2] * pair;
      abs_k += kKronrodWeights[i] * (std::abs(samples[(2 * i + 1) * dim + j]) +
                                     std::abs(samples[(2 * i + 2) * dim + j]));
    }
    const double mean = 0.5 * k15;
    double spread = kKronrodWeights[7] * std::abs(fc - mean);
    for (std::size_t i = 0; i < 7; ++i) {
      spread += kKronrodWeights[i] * (std::abs(samples[(2 * i + 1) * dim + j] - mean) +
                                      std::abs(samples[(2 * i + 2) * dim + j] - mean));
    }
    kronrod[j] = k15 * half;
    gauss[j] = g7 * half;
    spread *= std::abs(half);
    abs_k *= std::abs(half);

    double err = std::abs((k15 - g7) * half);
    if (spread != 0.0 && err != 0.0) {
      err = spread * std::min(1.0, std::pow(200.0 * err / spread, 1.5));
    }
    constexpr double kRoundoff = 50.0 * 2.220446049250313e-16;
    if (abs_k > std::numeric_limits<double>::min() / kRoundoff) {
      err = std::max(kRoundoff * abs_k, err);
    }
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of a vector-valued integrand
/// over [a, b]. `f(x, values)` fills `values` (same size as `out`). The panel
/// with the largest error is bisected until the summed max-norm error is
/// within max(abs_tol, rel_tol * max|I_j|).
template <class F>
void integrate_vector(F&& f, double a, double b, std::span<double> out,
                      const QuadratureConfig& cfg) {
  const std::size_t dim = out.size();
  struct Panel {
    double a, b, err;
    std::vector<double> value;
    bool operator<(const Panel& o) const { return err < o.err; }
  };
  std::vector<double> gauss(dim), scratch(dim);
  auto make_panel = [&](double lo, double hi) {
    Panel p{lo, hi, 0.0, std::vector<double>(dim)};
    p.err = detail::kronrod_panel(f, lo, hi, p.value, gauss, scratch);
    return p;
  };

  std::priority_queue<Panel> panels;
  panels.push(make_panel(a, b));
  std::vector<double> total(panels.top().value);
  double total_err = panels.top().err;

  auto tolerance = [&] {
    double scale = 0.0;
    for (double v : total) scale = std::max(scale, std::abs(v));
    return std::max(cfg.abs_tol, cfg.rel_tol * scale);
  };

  int splits = 0;
  while (total_err > tolerance()) {
    if (splits >= cfg.max_subdivisions) {
      throw QuadratureFailure("adaptive quadrature did not reach tolerance within " +
                              std::to_string(cfg.max_subdivisions) + " subdivisions");
    }
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = make_panel(worst.a, mid);
    Panel right = make_panel(mid, worst.b);
    for (std::size_t j = 0; j < dim; ++j) {
      total[j] += left.value[j] + right.value[j] - worst.value[j];
    }
    total_err += left.err + right.err - worst.err;
    panels.push(std::move(left));
    panels.push(std::move(right));
    ++splits;
  }
  // Re-sum from the panels to drop the drift of the running updates.
  std::fill(out.begin(), out.end(), 0.0);
  while (!panels.empty()) {
    const Panel& p = panels.top();
    for (std::size_t j = 0; j < dim; ++j) out[j] += p.value[j];
    panels.pop();
  }
}

/// Scalar form of integrate_vector.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureConfig& cfg) {
  double result = 0.0;
  integrate_vector([&f](double x, std::span<double> v) { v[0] = f(x); }, a, b,
                   std::span<double>(&result, 1), cfg);
  return result;
}

}  // namespace wsci
