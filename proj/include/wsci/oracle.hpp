#pragma once

// Verification oracles for the test suites. Nothing here is shared with the
// production evaluation paths: the Monte-Carlo estimates simulate the
// averaged experiment directly, and the brute-force masses use naive binomial
// products under fixed composite Simpson quadrature.

#include <cstdint>
#include <vector>

#include "wsci/ci.hpp"

namespace wsci::oracle {

struct McConfig {
  long samples = 200000;
  std::uint64_t seed = 0;
};

struct McEstimate {
  double estimate;
  double std_err;
};

/// Empirical P{estimate <= u}: theta1 ~ U(a, b), theta2 from vartheta, then
/// both binomials are simulated.
McEstimate mc_cdf(const Model& model, double u, double vartheta, const McConfig& cfg);

/// Empirical P{estimate = u} under the same simulation.
McEstimate mc_pmf(const Model& model, double u, double vartheta, const McConfig& cfg);

/// Largest design brute_coverage accepts, counted as (n1+1)(n2+1).
inline constexpr int kMaxBruteOutcomes = 100;

/// Averaged P{xi1 = k1, xi2 = k2} for every pair, row-major in k1 (internal
/// labelling), by composite Simpson with `panels` subintervals.
std::vector<double> brute_joint_masses(const Model& model, double vartheta, int panels);

/// Coverage at vartheta summed over all (k1, k2) outcomes, with interval
/// endpoints from the ci module and masses from brute_joint_masses.
/// Randomized methods average over `y_nodes` midpoint nodes.
double brute_coverage(const Model& model, double vartheta, Method method, double gamma,
                      int fine_quad, int y_nodes = 64, const SolverConfig& cfg = {});

}  // namespace wsci::oracle
