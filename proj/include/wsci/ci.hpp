#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "wsci/mixture.hpp"

namespace wsci {

/// How the tail split gamma1 is chosen and whether the endpoint equations
/// are randomized by an auxiliary uniform draw y.
enum class Method {
  standard,             ///< gamma1 = (1 - gamma)/2
  shortest,             ///< gamma1 minimising the length
  randomized_standard,  ///< randomized equations, gamma1 = (1 - gamma)/2
  randomized,           ///< randomized equations, gamma1 minimising the length
};

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view s);
bool is_randomized(Method m);

/// Shape of a computed interval. lower_only: the upper end is 1 and only the
/// lower bound is informative; upper_only: the lower end is 0.
enum class Sidedness { two_sided, lower_only, upper_only };

std::string_view to_string(Sidedness s);

/// Shape predicted for the shortest interval from the observed estimate.
enum class ShortestShape { one_sided, two_sided };

struct SolverConfig {
  double root_tol = 1e-12;
  double golden_tol = 1e-10;
  /// Roots are bracketed on [bracket_eps, 1 - bracket_eps].
  double bracket_eps = 1e-13;
  QuadratureConfig quad{};
};

struct IntervalRequest {
  Model model;
  int k1 = 0;  ///< successes in sample 1, caller's labelling
  int k2 = 0;
  double gamma = 0.95;
  Method method = Method::randomized;
  std::optional<double> y;
  std::optional<std::uint64_t> seed;
};

struct Interval {
  double lower = 0.0;
  double upper = 1.0;
  double gamma1 = 0.0;
  double length = 1.0;
  Sidedness sided = Sidedness::two_sided;
  Method method = Method::standard;
  /// Auxiliary draw used (randomized methods only).
  std::optional<double> y;
  /// Whether the interval was obtained by reflecting 1 - u.
  bool reflected = false;
};

/// Checks counts, gamma and y; throws std::invalid_argument naming the field.
void validate(const IntervalRequest& req);

/// Observed estimate w1*k1/n1 + w2*k2/n2.
double observed_estimate(const IntervalRequest& req);

/// Uniform [0, 1) draw from a seeded 64-bit Mersenne twister (53-bit mantissa).
double draw_uniform(std::uint64_t seed);

/// y from the request, drawn from its seed when absent. Throws
/// std::invalid_argument when neither is present.
double resolve_y(const IntervalRequest& req);

/// Root in vartheta of cdf(u, .) = gamma1; 1 when u = 1 or when gamma1 is not
/// reached before 1 - eps.
double endpoint_upper(const Model& model, double u, double gamma1, const SolverConfig& cfg = {});

/// Root in vartheta of cdf_strict(u, .) = gamma2; 0 when u = 0 or when gamma2
/// is not reached above eps (one-sided collapse).
double endpoint_lower(const Model& model, double u, double gamma2, const SolverConfig& cfg = {});

/// Randomized endpoints: the upper end solves cdf(u) + y*pmf(u+) = gamma1,
/// the lower end cdf(u-) + y*pmf(u) = gamma2, evaluated directly at u.
double randomized_endpoint_upper(const Model& model, double u, double y, double gamma1,
                                 const SolverConfig& cfg = {});
double randomized_endpoint_lower(const Model& model, double u, double y, double gamma2,
                                 const SolverConfig& cfg = {});

/// Interval at a fixed tail split. `y` selects the randomized equations.
/// Estimates above 0.5 are obtained by reflecting 1 - u.
Interval interval_at_split(const Model& model, double u, double gamma, double gamma1,
                           std::optional<double> y, const SolverConfig& cfg = {});

/// Length of interval_at_split as a function of gamma1.
double split_length(const Model& model, double u, double gamma, double gamma1,
                    std::optional<double> y, const SolverConfig& cfg = {});

/// Tail split minimising the length over [0, 1 - gamma]: golden-section search
/// followed by comparison with both boundaries.
Interval shortest_at(const Model& model, double u, double gamma, std::optional<double> y,
                     const SolverConfig& cfg = {});

Interval standard_ci(const IntervalRequest& req, const SolverConfig& cfg = {});
Interval shortest_ci(const IntervalRequest& req, const SolverConfig& cfg = {});
Interval standard_randomized_ci(const IntervalRequest& req, const SolverConfig& cfg = {});
Interval shortest_randomized_ci(const IntervalRequest& req, const SolverConfig& cfg = {});

/// Dispatches on req.method after validation.
Interval compute_interval(const IntervalRequest& req, const SolverConfig& cfg = {});

/// one_sided iff min(u, 1 - u) <= max(w1/n1, w2/n2).
ShortestShape classify_sidedness(const Model& model, double u);

struct Reflected {
  double u;
  double gamma1;
  std::optional<double> y;
  int k1;
  int k2;
};

/// Success/failure relabelling: u -> 1 - u, counts -> n - k,
/// gamma1 -> (1 - gamma) - gamma1, y -> 1 - y. An involution. Counts are in
/// the model's internal labelling.
Reflected reflect(const Model& model, double gamma, const Reflected& in);

}  // namespace wsci
