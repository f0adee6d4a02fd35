#include "wsci/coverage.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

namespace wsci {

namespace {

// Runs body(i) for i in [0, count) on `threads` workers. The first exception
// stops further work and is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; !failed && (i = next++) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

IntervalTable::IntervalTable(const Model& model, const SweepConfig& sweep, const SolverConfig& cfg)
    : model_(model), y_count_(is_randomized(sweep.method) ? sweep.y_nodes : 1) {
  if (sweep.y_nodes < 1) throw std::invalid_argument("y_nodes must be at least 1");
  if (!(sweep.gamma > 0.5 && sweep.gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in (0.5, 1)");
  }
  const SupportGrid& grid = model_.grid();
  intervals_.resize(grid.size() * y_count_);
  const bool randomized = is_randomized(sweep.method);
  const bool shortest = sweep.method == Method::shortest || sweep.method == Method::randomized;
  const double half_tail = (1.0 - sweep.gamma) / 2.0;

  parallel_for(intervals_.size(), sweep.threads, [&](std::size_t idx) {
    const std::size_t atom = idx / y_count_;
    const int j = static_cast<int>(idx % y_count_);
    const double u = grid.values[atom];
    const std::optional<double> y =
        randomized ? std::optional<double>(y_node(j)) : std::nullopt;
    try {
      Interval iv = shortest ? shortest_at(model_, u, sweep.gamma, y, cfg)
                             : interval_at_split(model_, u, sweep.gamma, half_tail, y, cfg);
      iv.method = sweep.method;
      intervals_[idx] = iv;
    } catch (const Error& e) {
      throw Error("interval at support value " + fmt9(u) + ": " + e.what());
    }
  });
}

CoveragePoint coverage_at(const IntervalTable& table, double vartheta,
                          const QuadratureConfig& quad) {
  const std::vector<double> masses = atom_masses(table.model(), vartheta, quad);
  const double per_node = 1.0 / table.y_count();
  double coverage = 0.0;
  double length = 0.0;
  for (std::size_t atom = 0; atom < masses.size(); ++atom) {
    double hit = 0.0;
    double hit_length = 0.0;
    for (int j = 0; j < table.y_count(); ++j) {
      const Interval& iv = table.at(atom, j);
      if (iv.lower < vartheta && vartheta < iv.upper) {
        hit += per_node;
        hit_length += per_node * iv.length;
      }
    }
    coverage += masses[atom] * hit;
    length += masses[atom] * hit_length;
  }
  return {vartheta, std::clamp(coverage, 0.0, 1.0), std::clamp(length, 0.0, 1.0)};
}

CoveragePoint coverage_at(const Model& model, double vartheta, const SweepConfig& sweep,
                          const SolverConfig& cfg) {
  if (!(vartheta > 0.0 && vartheta < 1.0)) {
    throw std::invalid_argument("coverage is evaluated for vartheta in (0, 1)");
  }
  return coverage_at(IntervalTable(model, sweep, cfg), vartheta, cfg.quad);
}

std::vector<double> sweep_grid(int grid_points) {
  if (grid_points < 1) throw std::invalid_argument("grid_points must be at least 1");
  std::vector<double> grid(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) grid[i] = (i + 1.0) / (grid_points + 1.0);
  return grid;
}

std::vector<CoveragePoint> sweep(const Model& model, const SweepConfig& sweep,
                                 const SolverConfig& cfg) {
  const std::vector<double> grid = sweep_grid(sweep.grid_points);
  const IntervalTable table(model, sweep, cfg);
  std::vector<CoveragePoint> points(grid.size());
  parallel_for(grid.size(), sweep.threads, [&](std::size_t i) {
    try {
      points[i] = coverage_at(table, grid[i], cfg.quad);
    } catch (const Error& e) {
      throw Error("coverage at vartheta = " + fmt9(grid[i]) + ": " + e.what());
    }
  });
  return points;
}

void write_csv(std::ostream& os, std::span<const CoveragePoint> points) {
  os << "vartheta,coverage,expected_length\n";
  for (const CoveragePoint& p : points) {
    os << fmt9(p.vartheta) << ',' << fmt9(p.coverage) << ',' << fmt9(p.expected_length) << '\n';
  }
}

}  // namespace wsci
