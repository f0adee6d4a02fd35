#pragma once

#include <optional>
#include <span>

namespace wsci {

/// Distance within which a real argument is treated as an integer. Support
/// values reach the binomial layer through floating arithmetic, so exact
/// comparison is not usable.
inline constexpr double kIntegralTol = 1e-9;

/// Nearest integer to `t` when |t - round(t)| <= kIntegralTol.
std::optional<long> as_integer(double t);

/// P{X = k} for X ~ Bin(n, p). Zero outside 0..n. Evaluated in log space;
/// p = 0 and p = 1 are point masses at 0 and n.
double binom_pmf(long k, int n, double p);

/// P{X <= t} for real t: the sum of pmf(k) for k = 0..floor(t).
/// Arguments within kIntegralTol of an integer are snapped to it.
double binom_cdf(double t, int n, double p);

/// P{X < t}: P{X <= t - 1} when t is an integer, P{X <= t} otherwise.
double binom_cdf_strict(double t, int n, double p);

/// Writes pmf(0..n) into `out` (size n + 1). The row is anchored at the mode
/// in log space and filled outward with the ratio recurrence, so it stays
/// finite where (1 - p)^n underflows.
void binom_pmf_row(int n, double p, std::span<double> out);

}  // namespace wsci
