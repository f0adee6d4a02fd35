#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "wsci/errors.hpp"
#include "wsci/quadrature.hpp"

namespace wsci {

/// Values closer than this are one support point.
inline constexpr double kSupportTol = 1e-9;

/// Sentinels standing in for the missing neighbours of 0 and 1.
inline constexpr double kBelowSupport = -1.0;
inline constexpr double kAboveSupport = 2.0;

/// Sorted distinct values of w1*k1/n1 + w2*k2/n2 together with the (k1, k2)
/// pairs that produce each value.
struct SupportGrid {
  std::vector<double> values;
  std::vector<std::vector<std::pair<int, int>>> preimages;

  std::size_t size() const noexcept { return values.size(); }
  /// Index of the value within kSupportTol of u, if any.
  std::optional<std::size_t> find(double u) const;
  /// As find, but throws NotASupportPoint.
  std::size_t index_of(double u) const;
};

/// Two-sample design: n1 trials at theta1, n2 at theta2, estimand
/// w1*theta1 + w2*theta2 with w2 = 1 - w1.
///
/// The model is held in the orientation w1 <= w2. A design given with
/// w1 > w2 is stored with the samples exchanged; swapped() reports this and
/// to_internal() maps success counts accordingly. The estimator value, and so
/// every interval, is unchanged by the exchange.
class Model {
 public:
  Model(int n1, int n2, double w1);

  int n1() const noexcept { return n1_; }
  int n2() const noexcept { return n2_; }
  double w1() const noexcept { return w1_; }
  double w2() const noexcept { return w2_; }
  bool swapped() const noexcept { return swapped_; }

  /// (k1, k2) in the caller's labelling -> internal labelling.
  std::pair<int, int> to_internal(int k1, int k2) const noexcept {
    return swapped_ ? std::pair{k2, k1} : std::pair{k1, k2};
  }

  /// Estimator value for internal counts.
  double estimate(int k1, int k2) const noexcept {
    return w1_ * k1 / n1_ + w2_ * k2 / n2_;
  }

  const SupportGrid& grid() const noexcept { return *grid_; }
  /// Grid index of the internal pair (k1, k2).
  std::size_t atom_of(int k1, int k2) const noexcept {
    return (*atom_index_)[static_cast<std::size_t>(k1) * (n2_ + 1) + k2];
  }

 private:
  int n1_;
  int n2_;
  double w1_;
  double w2_;
  bool swapped_;
  std::shared_ptr<const SupportGrid> grid_;
  std::shared_ptr<const std::vector<std::uint32_t>> atom_index_;
};

/// Full enumeration of the (n1+1)(n2+1) outcomes, merged at kSupportTol.
SupportGrid support_grid(const Model& model);

struct Neighbors {
  double minus;
  double plus;
};

/// Grid values adjacent to u; kBelowSupport / kAboveSupport at the ends.
Neighbors neighbors(const SupportGrid& grid, double u);

/// Range of theta1 compatible with vartheta, and its length.
struct ThetaRange {
  double a;
  double b;
  double len;
};

ThetaRange theta1_range(const Model& model, double vartheta);

// All evaluation functions below average the two-binomial law uniformly over
// theta1 in theta1_range(vartheta), with theta2 = (vartheta - w1*theta1)/w2.
// At vartheta = 0 and 1 the law is the point mass at 0 or 1.

/// P{estimate <= u}.
double cdf(const Model& model, double u, double vartheta, const QuadratureConfig& cfg = {});

/// P{estimate < u}, using the integer rule for the strict binomial tail.
double cdf_strict(const Model& model, double u, double vartheta,
                  const QuadratureConfig& cfg = {});

/// P{estimate = u}. Zero when u is not a support value.
double pmf(const Model& model, double u, double vartheta, const QuadratureConfig& cfg = {});

/// cdf(x) + y * pmf(v), evaluated as a single averaged integral. x may be the
/// kBelowSupport sentinel (contributing 0) and v either sentinel.
double randomized_cdf(const Model& model, double x, double v, double y, double vartheta,
                      const QuadratureConfig& cfg = {});

/// CDF at t of the estimate plus U(0, u+ - u) noise: each atom is spread
/// uniformly to its right, so at grid points the value is P{estimate < t}.
double smoothed_cdf_up(const Model& model, double t, double vartheta,
                       const QuadratureConfig& cfg = {});

/// CDF at t of the estimate minus U(0, u - u-) noise: each atom is spread
/// uniformly to its left, so at grid points the value is P{estimate <= t}.
double smoothed_cdf_down(const Model& model, double t, double vartheta,
                         const QuadratureConfig& cfg = {});

/// pmf at every grid value in one pass; indexed like model.grid().values.
std::vector<double> atom_masses(const Model& model, double vartheta,
                                const QuadratureConfig& cfg = {});

}  // namespace wsci
