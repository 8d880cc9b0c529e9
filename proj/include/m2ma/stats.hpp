#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace m2ma {

/// sup_x |F_a(x) - F_b(x)| for the two empirical distribution functions.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// sup_u |F(u) - u| for a sample that should be uniform on (0, 1).
double ks_uniform(std::span<const double> sample);

/// Asymptotic Kolmogorov quantile c(level): P(sup|B| > c) = level.
/// Only 0.05 and 0.01 are tabulated; other levels throw.
double kolmogorov_quantile(double level);

/// c(level) sqrt((n + m) / (n m)).
double ks_two_sample_critical(std::size_t n, std::size_t m, double level = 0.01);

/// c(level) / sqrt(n).
double ks_one_sample_critical(std::size_t n, double level = 0.01);

/// (1/N) sum_j exp(i t x_j).
std::complex<double> empirical_cf(std::span<const double> sample, double t);

/// A Monte Carlo estimate with its standard error.
struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  friend bool operator==(const Estimate&, const Estimate&) = default;
};

/// Fraction of hits with stderr sqrt(f (1 - f) / reps).
Estimate proportion(std::size_t hits, std::size_t reps);

/// Sample mean with stderr s / sqrt(N), s the sample standard deviation.
Estimate mean_estimate(std::span<const double> sample);

}  // namespace m2ma
