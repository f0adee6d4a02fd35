#include "wsci/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>

#include "wsci/binom.hpp"

namespace wsci {

std::optional<std::size_t> SupportGrid::find(double u) const {
  auto it = std::lower_bound(values.begin(), values.end(), u - kSupportTol);
  if (it != values.end() && std::abs(*it - u) <= kSupportTol) {
    return static_cast<std::size_t>(it - values.begin());
  }
  return std::nullopt;
}

std::size_t SupportGrid::index_of(double u) const {
  if (auto i = find(u)) return *i;
  throw NotASupportPoint("value " + std::to_string(u) + " is not an attainable estimate");
}

Model::Model(int n1, int n2, double w1) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("sample sizes must be at least 1");
  if (!(w1 > 0.0 && w1 < 1.0)) throw std::invalid_argument("w1 must lie in (0, 1)");
  swapped_ = w1 > 1.0 - w1;
  if (swapped_) {
    n1_ = n2;
    n2_ = n1;
    w1_ = 1.0 - w1;
    w2_ = w1;
  } else {
    n1_ = n1;
    n2_ = n2;
    w1_ = w1;
    w2_ = 1.0 - w1;
  }
  auto grid = std::make_shared<SupportGrid>(support_grid(*this));
  auto index = std::make_shared<std::vector<std::uint32_t>>(
      static_cast<std::size_t>(n1_ + 1) * (n2_ + 1));
  for (std::size_t g = 0; g < grid->size(); ++g) {
    for (auto [k1, k2] : grid->preimages[g]) {
      (*index)[static_cast<std::size_t>(k1) * (n2_ + 1) + k2] = static_cast<std::uint32_t>(g);
    }
  }
  grid_ = std::move(grid);
  atom_index_ = std::move(index);
}

SupportGrid support_grid(const Model& model) {
  std::vector<std::tuple<double, int, int>> all;
  all.reserve(static_cast<std::size_t>(model.n1() + 1) * (model.n2() + 1));
  for (int k1 = 0; k1 <= model.n1(); ++k1) {
    for (int k2 = 0; k2 <= model.n2(); ++k2) all.emplace_back(model.estimate(k1, k2), k1, k2);
  }
  std::sort(all.begin(), all.end());

  SupportGrid grid;
  for (const auto& [value, k1, k2] : all) {
    if (grid.values.empty() || value - grid.values.back() > kSupportTol) {
      grid.values.push_back(value);
      grid.preimages.emplace_back();
    }
    grid.preimages.back().emplace_back(k1, k2);
  }
  grid.values.front() = 0.0;
  grid.values.back() = 1.0;
  return grid;
}

Neighbors neighbors(const SupportGrid& grid, double u) {
  const std::size_t i = grid.index_of(u);
  return {i > 0 ? grid.values[i - 1] : kBelowSupport,
          i + 1 < grid.size() ? grid.values[i + 1] : kAboveSupport};
}

ThetaRange theta1_range(const Model& model, double vartheta) {
  if (!(vartheta > 0.0 && vartheta < 1.0)) {
    throw DegenerateRange("theta1 range is degenerate at vartheta = " + std::to_string(vartheta));
  }
  const double a = std::max(0.0, (vartheta - model.w2()) / model.w1());
  const double b = std::min(1.0, vartheta / model.w1());
  return {a, b, b - a};
}

namespace {

// E[ P{xi1 <= t_x(i2)} + y * P{xi1 = t_v(i2)} ] summed against P{xi2 = i2},
// with t_z(i2) = (n1/w1)(z - w2*i2/n2). The weak or strict tail is chosen once;
// the per-i2 indices into the xi1 tables are fixed before integrating.
class AveragedFunctional {
 public:
  AveragedFunctional(const Model& model, double x, bool strict, double v, double y)
      : model_(model), x_(x), strict_(strict), v_(v), y_(y),
        tail_index_(static_cast<std::size_t>(model.n2()) + 1),
        atom_index_(static_cast<std::size_t>(model.n2()) + 1),
        pmf1_(static_cast<std::size_t>(model.n1()) + 1),
        cdf1_(static_cast<std::size_t>(model.n1()) + 2),
        pmf2_(static_cast<std::size_t>(model.n2()) + 1) {
    const int n1 = model.n1();
    const double scale = n1 / model.w1();
    const double step = model.w2() / model.n2();
    for (int i2 = 0; i2 <= model.n2(); ++i2) {
      // cdf1_ is shifted by one: cdf1_[m + 1] = P{xi1 <= m}, cdf1_[0] = 0.
      const double tx = scale * (x - step * i2);
      long m;
      if (auto r = as_integer(tx)) {
        m = strict ? *r - 1 : *r;
      } else {
        m = static_cast<long>(std::floor(tx));
      }
      tail_index_[i2] = static_cast<int>(std::clamp<long>(m, -1, n1) + 1);

      const auto tv = as_integer(scale * (v - step * i2));
      atom_index_[i2] = (y != 0.0 && tv && *tv >= 0 && *tv <= n1) ? static_cast<int>(*tv) : -1;
    }
  }

  double operator()(double theta1, double vartheta) {
    const double theta2 =
        std::clamp((vartheta - model_.w1() * theta1) / model_.w2(), 0.0, 1.0);
    binom_pmf_row(model_.n1(), std::clamp(theta1, 0.0, 1.0), pmf1_);
    binom_pmf_row(model_.n2(), theta2, pmf2_);
    cdf1_[0] = 0.0;
    std::partial_sum(pmf1_.begin(), pmf1_.end(), cdf1_.begin() + 1);
    cdf1_.back() = std::min(cdf1_.back(), 1.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < pmf2_.size(); ++i) {
      if (pmf2_[i] == 0.0) continue;
      double term = cdf1_[tail_index_[i]];
      if (atom_index_[i] >= 0) term += y_ * pmf1_[atom_index_[i]];
      sum += pmf2_[i] * term;
    }
    return sum;
  }

  // Value under the point mass at s (vartheta = 0 gives s = 0, 1 gives s = 1).
  double point_mass(double s) const {
    const bool tail = strict_ ? s < x_ - kSupportTol : s <= x_ + kSupportTol;
    const bool atom = std::abs(s - v_) <= kSupportTol;
    return (tail ? 1.0 : 0.0) + (atom ? y_ : 0.0);
  }

 private:
  const Model& model_;
  double x_;
  bool strict_;
  double v_;
  double y_;
  std::vector<int> tail_index_;
  std::vector<int> atom_index_;
  std::vector<double> pmf1_;
  std::vector<double> cdf1_;
  std::vector<double> pmf2_;
};

double average(const Model& model, double x, bool strict, double v, double y, double vartheta,
               const QuadratureConfig& cfg) {
  AveragedFunctional functional(model, x, strict, v, y);
  if (vartheta <= 0.0) return functional.point_mass(0.0);
  if (vartheta >= 1.0) return functional.point_mass(1.0);
  const ThetaRange range = theta1_range(model, vartheta);
  const double integral = integrate(
      [&](double theta1) { return functional(theta1, vartheta); }, range.a, range.b, cfg);
  return integral / range.len;
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

double cdf(const Model& model, double u, double vartheta, const QuadratureConfig& cfg) {
  return clamp_probability(average(model, u, false, kBelowSupport, 0.0, vartheta, cfg));
}

double cdf_strict(const Model& model, double u, double vartheta, const QuadratureConfig& cfg) {
  return clamp_probability(average(model, u, true, kBelowSupport, 0.0, vartheta, cfg));
}

double pmf(const Model& model, double u, double vartheta, const QuadratureConfig& cfg) {
  return clamp_probability(average(model, kBelowSupport, false, u, 1.0, vartheta, cfg));
}

double randomized_cdf(const Model& model, double x, double v, double y, double vartheta,
                      const QuadratureConfig& cfg) {
  return average(model, x, false, v, y, vartheta, cfg);
}

namespace {

// Largest grid index whose value is <= t (t is assumed >= 0).
std::size_t floor_index(const SupportGrid& grid, double t) {
  auto it = std::upper_bound(grid.values.begin(), grid.values.end(), t + kSupportTol);
  return static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - grid.values.begin() - 1, 0));
}

}  // namespace

double smoothed_cdf_up(const Model& model, double t, double vartheta,
                       const QuadratureConfig& cfg) {
  const SupportGrid& grid = model.grid();
  const std::size_t i = floor_index(grid, t);
  const double base = grid.values[i];
  const double next = i + 1 < grid.size() ? grid.values[i + 1] : kAboveSupport;
  const double below = i > 0 ? grid.values[i - 1] : kBelowSupport;
  const double frac = std::clamp((t - base) / (next - base), 0.0, 1.0);
  return clamp_probability(randomized_cdf(model, below, base, frac, vartheta, cfg));
}

double smoothed_cdf_down(const Model& model, double t, double vartheta,
                         const QuadratureConfig& cfg) {
  const SupportGrid& grid = model.grid();
  const std::size_t i = floor_index(grid, t);
  const double base = grid.values[i];
  const double next = i + 1 < grid.size() ? grid.values[i + 1] : kAboveSupport;
  const double frac = std::clamp((t - base) / (next - base), 0.0, 1.0);
  return clamp_probability(randomized_cdf(model, base, next, frac, vartheta, cfg));
}

std::vector<double> atom_masses(const Model& model, double vartheta, const QuadratureConfig& cfg) {
  const SupportGrid& grid = model.grid();
  std::vector<double> masses(grid.size(), 0.0);
  if (vartheta <= 0.0) {
    masses.front() = 1.0;
    return masses;
  }
  if (vartheta >= 1.0) {
    masses.back() = 1.0;
    return masses;
  }
  const int n1 = model.n1();
  const int n2 = model.n2();
  std::vector<double> pmf1(static_cast<std::size_t>(n1) + 1);
  std::vector<double> pmf2(static_cast<std::size_t>(n2) + 1);
  auto integrand = [&](double theta1, std::span<double> out) {
    const double theta2 = std::clamp((vartheta - model.w1() * theta1) / model.w2(), 0.0, 1.0);
    binom_pmf_row(n1, std::clamp(theta1, 0.0, 1.0), pmf1);
    binom_pmf_row(n2, theta2, pmf2);
    std::fill(out.begin(), out.end(), 0.0);
    for (int k1 = 0; k1 <= n1; ++k1) {
      const double p1 = pmf1[k1];
      if (p1 == 0.0) continue;
      for (int k2 = 0; k2 <= n2; ++k2) out[model.atom_of(k1, k2)] += p1 * pmf2[k2];
    }
  };
  const ThetaRange range = theta1_range(model, vartheta);
  integrate_vector(integrand, range.a, range.b, masses, cfg);
  for (double& m : masses) m = clamp_probability(m / range.len);
  return masses;
}

}  // namespace wsci
