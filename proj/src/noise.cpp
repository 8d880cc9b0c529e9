#include "m2ma/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace m2ma {

namespace {

constexpr std::uint64_t kMagnitudeLane = 0;
constexpr std::uint64_t kSignLane = 1;

}  // namespace

TailModel make_tail_model(double alpha, double p) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::invalid_argument("alpha must lie in (0, 2), got " + std::to_string(alpha));
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("p must lie in [0, 1], got " + std::to_string(p));
  }
  if (alpha == 1.0 && p != 0.5) {
    throw std::invalid_argument(
        "alpha = 1 requires a symmetric noise law (p = 1/2), got p = " + std::to_string(p));
  }
  return TailModel(alpha, p, 1.0 - p);
}

double noise_at(const TailModel& model, Seed seed, std::int64_t index) noexcept {
  const double u = open_closed_unit(counter_word(seed, index, kMagnitudeLane));
  const double v = closed_open_unit(counter_word(seed, index, kSignLane));
  const double magnitude = std::pow(u, -1.0 / model.alpha());
  return v < model.p() ? magnitude : -magnitude;
}

std::vector<double> sample_noise(const TailModel& model, std::size_t count,
                                 std::int64_t start, Seed seed) {
  if (count == 0) {
    throw std::invalid_argument("sample_noise: count must be at least 1");
  }
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = noise_at(model, seed, start + static_cast<std::int64_t>(k));
  }
  return out;
}

NoiseWindow::NoiseWindow(std::int64_t first, std::vector<double> values)
    : first_(first), values_(std::move(values)) {}

NoiseWindow NoiseWindow::sample(const TailModel& model, Seed seed, std::int64_t first,
                                std::int64_t last) {
  if (last < first) {
    throw std::invalid_argument("NoiseWindow::sample: empty index range");
  }
  return NoiseWindow(first,
                     sample_noise(model, static_cast<std::size_t>(last - first + 1), first, seed));
}

double NoiseWindow::at(std::int64_t index) const {
  if (!contains(index)) {
    throw std::out_of_range("noise index " + std::to_string(index) + " outside window [" +
                            std::to_string(first_) + ", " + std::to_string(last()) + "]");
  }
  return (*this)[index];
}

NoiseWindow NoiseWindow::negated() const {
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = -values_[i];
  return NoiseWindow(first_, std::move(v));
}

double NormingConstant::value() const noexcept {
  return static_cast<double>(std::exp(log_value_));
}

NormingConstant norming_constant(const TailModel& model, std::int64_t n) {
  if (n < 1) {
    throw std::invalid_argument("norming_constant: n must be at least 1");
  }
  const long double log_n = std::log(static_cast<long double>(n));
  return NormingConstant(log_n / static_cast<long double>(model.alpha()), n);
}

double tail_probability(const TailModel& model, double x) {
  if (x < 1.0) return 1.0;
  return static_cast<double>(
      std::exp(-static_cast<long double>(model.alpha()) * std::log(static_cast<long double>(x))));
}

double tail_probability(const TailModel& model, const NormingConstant& a_n) {
  if (a_n.log_value() <= 0.0L) return 1.0;
  return static_cast<double>(std::exp(-static_cast<long double>(model.alpha()) * a_n.log_value()));
}

double expected_exceedances(const TailModel& model, const NormingConstant& a_n) {
  const long double tail =
      a_n.log_value() <= 0.0L
          ? 1.0L
          : std::exp(-static_cast<long double>(model.alpha()) * a_n.log_value());
  return static_cast<double>(static_cast<long double>(a_n.n()) * tail);
}

double noise_mean(const TailModel& model) {
  if (!(model.alpha() > 1.0)) {
    throw std::domain_error("noise_mean: E(Z) is infinite or undefined for alpha <= 1");
  }
  return (model.p() - model.r()) * model.alpha() / (model.alpha() - 1.0);
}

double centering_constant(const TailModel& model, double phi_total) {
  if (model.alpha() <= 1.0) return 0.0;
  return phi_total * noise_mean(model);
}

}  // namespace m2ma
