#include "wsci/binom.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

namespace wsci {

namespace {

constexpr long kLogFactorialTable = 4096;

double log_factorial(long n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLogFactorialTable);
    for (long i = 1; i < kLogFactorialTable; ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
    return t;
  }();
  return n < kLogFactorialTable ? table[static_cast<std::size_t>(n)] : std::lgamma(n + 1.0);
}

double log_choose(int n, long k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_pmf(long k, int n, double p) {
  return log_choose(n, k) + k * std::log(p) + (n - k) * std::log1p(-p);
}

// Largest k with pmf summed, or -1 / n for the saturated cases.
long floor_index(double t) {
  if (auto m = as_integer(t)) return *m;
  return static_cast<long>(std::floor(t));
}

double sum_pmf_upto(long m, int n, double p) {
  if (m < 0) return 0.0;
  if (m >= n) return 1.0;
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return 0.0;
  std::vector<double> row(static_cast<std::size_t>(n) + 1);
  binom_pmf_row(n, p, row);
  double s = 0.0;
  for (long k = 0; k <= m; ++k) s += row[static_cast<std::size_t>(k)];
  return std::min(s, 1.0);
}

}  // namespace

std::optional<long> as_integer(double t) {
  const double r = std::round(t);
  if (std::abs(t - r) <= kIntegralTol) return static_cast<long>(r);
  return std::nullopt;
}

double binom_pmf(long k, int n, double p) {
  if (k < 0 || k > n) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  return std::exp(log_pmf(k, n, p));
}

double binom_cdf(double t, int n, double p) {
  return sum_pmf_upto(floor_index(t), n, p);
}

double binom_cdf_strict(double t, int n, double p) {
  if (auto m = as_integer(t)) return sum_pmf_upto(*m - 1, n, p);
  return sum_pmf_upto(static_cast<long>(std::floor(t)), n, p);
}

void binom_pmf_row(int n, double p, std::span<double> out) {
  assert(out.size() == static_cast<std::size_t>(n) + 1);
  std::fill(out.begin(), out.end(), 0.0);
  if (p <= 0.0) {
    out.front() = 1.0;
    return;
  }
  if (p >= 1.0) {
    out.back() = 1.0;
    return;
  }
  const long mode = std::min<long>(n, static_cast<long>(std::floor((n + 1) * p)));
  const double odds = p / (1.0 - p);
  out[static_cast<std::size_t>(mode)] = std::exp(log_pmf(mode, n, p));
  for (long k = mode; k < n; ++k) {
    out[k + 1] = out[k] * (static_cast<double>(n - k) / (k + 1)) * odds;
  }
  for (long k = mode; k > 0; --k) {
    out[k - 1] = out[k] * (static_cast<double>(k) / (n - k + 1)) / odds;
  }
  // The anchor carries the rounding of the log-factorials (about 1e-12 at
  // n = 1000); the row itself must sum to one.
  double total = 0.0;
  for (double v : out) total += v;
  for (double& v : out) v /= total;
}

}  // namespace wsci
