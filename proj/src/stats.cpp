#include "m2ma/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace m2ma {

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double worst = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  return worst;
}

double ks_uniform(std::span<const double> sample) {
  if (sample.empty()) throw std::invalid_argument("ks_uniform: empty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = std::clamp(x[i], 0.0, 1.0);
    worst = std::max({worst, static_cast<double>(i + 1) / n - u, u - static_cast<double>(i) / n});
  }
  return worst;
}

double kolmogorov_quantile(double level) {
  if (level == 0.05) return 1.358;
  if (level == 0.01) return 1.628;
  throw std::invalid_argument("kolmogorov_quantile: only levels 0.05 and 0.01 are tabulated");
}

double ks_two_sample_critical(std::size_t n, std::size_t m, double level) {
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return kolmogorov_quantile(level) * std::sqrt((nn + mm) / (nn * mm));
}

double ks_one_sample_critical(std::size_t n, double level) {
  return kolmogorov_quantile(level) / std::sqrt(static_cast<double>(n));
}

std::complex<double> empirical_cf(std::span<const double> sample, double t) {
  if (sample.empty()) throw std::invalid_argument("empirical_cf: empty sample");
  double re = 0.0;
  double im = 0.0;
  for (double x : sample) {
    re += std::cos(t * x);
    im += std::sin(t * x);
  }
  const double n = static_cast<double>(sample.size());
  return {re / n, im / n};
}

Estimate proportion(std::size_t hits, std::size_t reps) {
  if (reps == 0) throw std::invalid_argument("proportion: reps must be positive");
  const double f = static_cast<double>(hits) / static_cast<double>(reps);
  return {f, std::sqrt(f * (1.0 - f) / static_cast<double>(reps))};
}

Estimate mean_estimate(std::span<const double> sample) {
  if (sample.empty()) throw std::invalid_argument("mean_estimate: empty sample");
  const double n = static_cast<double>(sample.size());
  double mean = 0.0;
  for (double x : sample) mean += x;
  mean /= n;
  if (sample.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double x : sample) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace m2ma
