#include <cmath>
#include <stdexcept>
#include <string>

#include "m2ma/exact_sum.hpp"
#include "m2ma/ma.hpp"

namespace m2ma {

namespace {

std::int64_t order_of(const Coefficients& coeffs) {
  return static_cast<std::int64_t>(coeffs.order());
}

NoiseWindow effective_noise(const Coefficients& coeffs, const NoiseWindow& noise) {
  return coeffs.noise_flipped() ? noise.negated() : noise;
}

void require_cover(const NoiseWindow& noise, std::int64_t first, std::int64_t last) {
  if (!noise.contains(first) || !noise.contains(last)) {
    throw std::invalid_argument("noise window must cover Z_" + std::to_string(first) + "..Z_" +
                                std::to_string(last));
  }
}

// X_1..X_m on noise that is already in the reduced sign convention.
std::vector<double> convolve(const Coefficients& coeffs, const NoiseWindow& z, std::int64_t m) {
  const auto phis = coeffs.phis();
  std::vector<double> x(static_cast<std::size_t>(m));
  for (std::int64_t t = 1; t <= m; ++t) {
    double sum = 0.0;
    for (std::size_t i = 0; i < phis.size(); ++i) sum += phis[i] * z[t - static_cast<std::int64_t>(i)];
    x[static_cast<std::size_t>(t - 1)] = sum;
  }
  return x;
}

}  // namespace

std::vector<double> ma_series(const Coefficients& coeffs, const NoiseWindow& noise, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("ma_series: n must be at least 1");
  require_cover(noise, 1 - order_of(coeffs), m);
  return convolve(coeffs, effective_noise(coeffs, noise), m);
}

MaSeries ma_series(const TailModel& model, const Coefficients& coeffs, std::int64_t n, Seed seed,
                   bool extended) {
  if (n < 1) throw std::invalid_argument("ma_series: n must be at least 1");
  const std::int64_t q = order_of(coeffs);
  const std::int64_t m = extended ? n + q : n;
  auto noise = NoiseWindow::sample(model, seed, 1 - q, m);
  auto x = ma_series(coeffs, noise, m);
  return {std::move(x), std::move(noise)};
}

CoupledPaths build_paths(const Coefficients& coeffs, const NoiseWindow& noise, std::int64_t n,
                         double scale, double drift) {
  const auto x = ma_series(coeffs, noise, n);
  const NoiseWindow z = effective_noise(coeffs, noise);
  std::vector<double> proxy(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i) proxy[static_cast<std::size_t>(i - 1)] = coeffs.total() * z[i];
  return {partial_sum_path(x, scale, drift), partial_sum_path(proxy, scale, drift)};
}

CoupledPaths build_paths(const TailModel& model, const Coefficients& coeffs, std::int64_t n,
                         Seed seed) {
  if (n < 1) throw std::invalid_argument("build_paths: n must be at least 1");
  const auto noise = NoiseWindow::sample(model, seed, 1 - order_of(coeffs), n);
  // With the reduced filter the noise is -Z, whose mean is -E(Z).
  const TailModel law = coeffs.noise_flipped() ? model.flipped() : model;
  const double drift = centering_constant(law, coeffs.total());
  return build_paths(coeffs, noise, n, norming_constant(model, n).value(), drift);
}

const char* to_string(CouplingCase c) noexcept {
  switch (c) {
    case CouplingCase::short_prefix:
      return "i";
    case CouplingCase::long_prefix:
      return "ii";
    case CouplingCase::lagged:
      return "iii";
  }
  return "?";
}

CouplingResult coupling_decomposition(const Coefficients& coeffs, const NoiseWindow& noise,
                                  std::int64_t n, std::int64_t k, CouplingCase which, double scale) {
  const std::int64_t q = order_of(coeffs);
  if (q == 0) throw std::invalid_argument("coupling identity: needs q >= 1");
  if (k < 1 || k > n) throw std::invalid_argument("coupling identity: need 1 <= k <= n");
  switch (which) {
    case CouplingCase::short_prefix:
      if (k >= q) throw std::invalid_argument("coupling identity case i: needs k < q");
      break;
    case CouplingCase::long_prefix:
      if (k < q) throw std::invalid_argument("coupling identity case ii: needs k >= q");
      break;
    case CouplingCase::lagged:
      if (k < q || k > n - q) throw std::invalid_argument("coupling identity case iii: needs q <= k <= n - q");
      break;
  }
  if (!(scale > 0.0)) throw std::invalid_argument("coupling identity: scale must be positive");
  require_cover(noise, 1 - q, n);

  const NoiseWindow z = effective_noise(coeffs, noise);
  const auto phis = coeffs.phis();
  const double total = coeffs.total();
  auto phi = [&](std::int64_t s) { return phis[static_cast<std::size_t>(s)]; };

  // sum_{s=from}^{to} phi_s, rounded once.
  auto coefficient_sum = [&](std::int64_t from, std::int64_t to) {
    ExactSum sum;
    for (std::int64_t s = from; s <= to; ++s) sum.add(phi(s));
    return sum.value();
  };

  ExactSum lhs;
  for (std::int64_t i = 1; i <= k; ++i) lhs.add_product(total, z[i]);
  const std::int64_t x_terms = which == CouplingCase::lagged ? k + q : k;
  for (std::int64_t i = 1; i <= x_terms; ++i) {
    for (std::int64_t j = 0; j <= q; ++j) lhs.add_product(-phi(j), z[i - j]);
  }

  CouplingResult result{which, lhs.value() / scale, 0.0, std::nullopt, std::nullopt, std::nullopt};

  ExactSum g;
  for (std::int64_t u = 0; u < q; ++u) g.add_product(z[-u], coefficient_sum(u + 1, q));

  switch (which) {
    case CouplingCase::short_prefix: {
      ExactSum rhs;
      for (std::int64_t u = 0; u < k; ++u) rhs.add_product(z[k - u], coefficient_sum(u + 1, q));
      for (std::int64_t u = q - k; u < q; ++u) rhs.add_product(-z[-u], coefficient_sum(u + 1, q));
      for (std::int64_t u = 0; u < q - k; ++u) rhs.add_product(-z[-u], coefficient_sum(u + 1, u + k));
      result.rhs = rhs.value() / scale;
      break;
    }
    case CouplingCase::long_prefix: {
      ExactSum h;
      for (std::int64_t u = 0; u < q; ++u) h.add_product(z[k - u], coefficient_sum(u + 1, q));
      ExactSum rhs = h;
      ExactSum minus_g = g;
      minus_g.negate();
      rhs += minus_g;
      result.h = h.value() / scale;
      result.g = g.value() / scale;
      result.rhs = rhs.value() / scale;
      break;
    }
    case CouplingCase::lagged: {
      ExactSum t;
      for (std::int64_t u = 1; u <= q; ++u) t.add_product(z[k + u], coefficient_sum(0, q - u));
      ExactSum rhs = g;
      rhs += t;
      rhs.negate();
      result.g = g.value() / scale;
      result.t = t.value() / scale;
      result.rhs = rhs.value() / scale;
      break;
    }
  }
  return result;
}

CouplingResult coupling_decomposition(const TailModel& model, const Coefficients& coeffs,
                                  std::int64_t n, std::int64_t k, CouplingCase which, Seed seed) {
  if (n < 1) throw std::invalid_argument("coupling identity: n must be at least 1");
  const auto noise = NoiseWindow::sample(model, seed, 1 - order_of(coeffs), n);
  return coupling_decomposition(coeffs, noise, n, k, which, norming_constant(model, n).value());
}

CouplingResult coupling_decomposition(const TailModel& model, const Coefficients& coeffs,
                                  std::int64_t n, std::int64_t k, Seed seed) {
  const auto which =
      k < order_of(coeffs) ? CouplingCase::short_prefix : CouplingCase::long_prefix;
  return coupling_decomposition(model, coeffs, n, k, which, seed);
}

ResidualWeights::ResidualWeights(const InfiniteCoefficients& coeffs, std::int64_t n,
                                 std::size_t q, std::int64_t past_window)
    : n_(n), q_(q), window_(past_window) {
  if (n < 1) throw std::invalid_argument("truncation_residual: n must be at least 1");
  if (q < 1) throw std::invalid_argument("truncation_residual: q must be at least 1");
  if (past_window < 1) throw std::invalid_argument("truncation_residual: past window must be at least 1");

  head_ = 2.0 * coeffs.abs_tail_sum(q + 1);
  neglected_ = coeffs.abs_tail_sum(q + static_cast<std::size_t>(past_window) + 2);

  // tail[m - first] = sum_{j >= m} |phi_j| for m in [q + 1, q + W + n + 1].
  const std::size_t first = q + 1;
  const std::size_t last = q + static_cast<std::size_t>(past_window + n) + 1;
  std::vector<long double> tail(last - first + 1);
  tail.back() = coeffs.abs_tail_sum(last);
  for (std::size_t m = last - 1; m >= first; --m) {
    tail[m - first] = tail[m + 1 - first] + std::abs(coeffs(m));
  }
  past_.resize(static_cast<std::size_t>(past_window) + 1);
  for (std::int64_t w = 0; w <= past_window; ++w) {
    // i = -w: sum_{j=1}^{n} |phi_{q + w + j}|.
    const std::size_t lo = q + static_cast<std::size_t>(w) + 1;
    const std::size_t hi = lo + static_cast<std::size_t>(n);
    const long double weight = tail[lo - first] - tail[hi - first];
    past_[static_cast<std::size_t>(w)] = weight > 0.0L ? static_cast<double>(weight) : 0.0;
  }
}

Residual truncation_residual(const TailModel& model, const ResidualWeights& weights,
                             const NoiseWindow& noise) {
  require_cover(noise, weights.first_index(), weights.last_index());
  const std::int64_t n = weights.n();
  const auto q = static_cast<std::int64_t>(weights.q());

  double recent = 0.0;
  for (std::int64_t i = 1; i <= n; ++i) recent += std::abs(noise[i - q]);
  double past = 0.0;
  for (std::int64_t i = 0; i >= -weights.past_window(); --i) {
    past += std::abs(noise[i - q]) * weights.past_weight(i);
  }
  const double scale = norming_constant(model, n).value();
  const double typical = model.alpha() > 1.0 ? model.alpha() / (model.alpha() - 1.0)
                                             : std::pow(2.0, 1.0 / model.alpha());
  return {(weights.head_factor() * recent + past) / scale,
          static_cast<double>(n) * weights.neglected_mass() * typical / scale};
}

Residual truncation_residual(const TailModel& model, const InfiniteCoefficients& coeffs,
                             std::int64_t n, std::size_t q, std::int64_t past_window, Seed seed) {
  const ResidualWeights weights(coeffs, n, q, past_window);
  const auto noise = NoiseWindow::sample(model, seed, weights.first_index(), weights.last_index());
  return truncation_residual(model, weights, noise);
}

}  // namespace m2ma
