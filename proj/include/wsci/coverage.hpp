#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "wsci/ci.hpp"

namespace wsci {

struct CoveragePoint {
  double vartheta;
  double coverage;
  double expected_length;
};

struct SweepConfig {
  /// Equally spaced interior points i/(grid_points + 1).
  int grid_points = 99;
  /// Midpoint nodes (j + 1/2)/y_nodes averaging the randomized methods over y.
  int y_nodes = 64;
  Method method = Method::shortest;
  double gamma = 0.95;
  /// Worker threads; 0 picks hardware_concurrency.
  unsigned threads = 0;
};

/// Interval endpoints for every support value (and every y node for the
/// randomized methods). Endpoints do not depend on vartheta, so a sweep
/// builds this once and shares it read-only.
class IntervalTable {
 public:
  IntervalTable(const Model& model, const SweepConfig& sweep, const SolverConfig& cfg = {});

  const Model& model() const noexcept { return model_; }
  int y_count() const noexcept { return y_count_; }
  /// Auxiliary value of y node j (unused for non-randomized methods).
  double y_node(int j) const noexcept { return (j + 0.5) / y_count_; }
  const Interval& at(std::size_t atom, int j) const { return intervals_[atom * y_count_ + j]; }

 private:
  Model model_;
  int y_count_;
  std::vector<Interval> intervals_;
};

/// Coverage probability and expected covering length at one vartheta, using
/// open-interval membership.
CoveragePoint coverage_at(const IntervalTable& table, double vartheta,
                          const QuadratureConfig& quad = {});

/// Convenience form that builds its own table.
CoveragePoint coverage_at(const Model& model, double vartheta, const SweepConfig& sweep,
                          const SolverConfig& cfg = {});

/// The vartheta grid used by sweep.
std::vector<double> sweep_grid(int grid_points);

/// coverage_at over sweep_grid, ascending in vartheta. A failure aborts the
/// sweep with an Error naming the offending vartheta (or support value).
std::vector<CoveragePoint> sweep(const Model& model, const SweepConfig& sweep,
                                 const SolverConfig& cfg = {});

/// `vartheta,coverage,expected_length` CSV, 9 significant digits.
void write_csv(std::ostream& os, std::span<const CoveragePoint> points);

}  // namespace wsci
