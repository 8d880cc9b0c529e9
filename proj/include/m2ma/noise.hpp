#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "m2ma/seeding.hpp"

namespace m2ma {

/**
 * Law of a single innovation Z.
 *
 * The magnitude is pure Pareto, P(|Z| > x) = x^-alpha for x >= 1, and the
 * sign is positive with probability p and negative with probability r = 1 - p.
 * Because the slowly varying part is identically one, the tail balance
 * constants equal p and r exactly and every normalising quantity has a closed
 * form.
 */
class TailModel {
 public:
  double alpha() const noexcept { return alpha_; }
  double p() const noexcept { return p_; }
  double r() const noexcept { return r_; }
  bool symmetric() const noexcept { return p_ == r_; }

  /// Law of -Z.
  TailModel flipped() const noexcept { return TailModel(alpha_, r_, p_); }

  // r is derived from p, so it does not take part in equality.
  friend bool operator==(const TailModel& a, const TailModel& b) noexcept {
    return a.alpha_ == b.alpha_ && a.p_ == b.p_;
  }

 private:
  TailModel(double alpha, double p, double r) noexcept : alpha_(alpha), p_(p), r_(r) {}
  friend TailModel make_tail_model(double alpha, double p);

  double alpha_;
  double p_;
  double r_;
};

/// Throws std::invalid_argument unless 0 < alpha < 2 and 0 <= p <= 1. At
/// alpha = 1 only the symmetric law (p = 1/2) is accepted.
TailModel make_tail_model(double alpha, double p);

/// Z at absolute index `index`; a pure function of (model, seed, index).
double noise_at(const TailModel& model, Seed seed, std::int64_t index) noexcept;

/// Z_start, ..., Z_{start+count-1}.
std::vector<double> sample_noise(const TailModel& model, std::size_t count,
                                 std::int64_t start, Seed seed);

/// A contiguous block Z_first, ..., Z_last of a noise sequence.
class NoiseWindow {
 public:
  NoiseWindow() = default;
  NoiseWindow(std::int64_t first, std::vector<double> values);

  static NoiseWindow sample(const TailModel& model, Seed seed, std::int64_t first,
                            std::int64_t last);

  std::int64_t first() const noexcept { return first_; }
  std::int64_t last() const noexcept {
    return first_ + static_cast<std::int64_t>(values_.size()) - 1;
  }
  bool contains(std::int64_t index) const noexcept {
    return index >= first_ && index <= last();
  }

  /// Z_index; throws std::out_of_range outside [first, last].
  double at(std::int64_t index) const;
  double operator[](std::int64_t index) const noexcept {
    return values_[static_cast<std::size_t>(index - first_)];
  }

  std::span<const double> values() const noexcept { return values_; }

  /// The same window with every value negated.
  NoiseWindow negated() const;

 private:
  std::int64_t first_ = 0;
  std::vector<double> values_;
};

/// a_n with n P(|Z| > a_n) = 1. Carried in log form so that the identity
/// survives floating point: the stored logarithm is log(n) / alpha in
/// extended precision.
class NormingConstant {
 public:
  NormingConstant(long double log_value, std::int64_t n) noexcept
      : log_value_(log_value), n_(n) {}

  double value() const noexcept;
  long double log_value() const noexcept { return log_value_; }
  std::int64_t n() const noexcept { return n_; }

 private:
  long double log_value_;
  std::int64_t n_;
};

/// a_n = n^(1/alpha). Requires n >= 1.
NormingConstant norming_constant(const TailModel& model, std::int64_t n);

/// P(|Z| > x).
double tail_probability(const TailModel& model, double x);

/// P(|Z| > a_n), evaluated from the logarithm of a_n.
double tail_probability(const TailModel& model, const NormingConstant& a_n);

/// n P(|Z| > a_n), the expected number of exceedances of a_n among n draws.
/// Evaluated in extended precision and rounded once.
double expected_exceedances(const TailModel& model, const NormingConstant& a_n);

/// E(Z) = (p - r) alpha / (alpha - 1); requires alpha > 1.
double noise_mean(const TailModel& model);

/// b_n: 0 for alpha <= 1, phi_total * E(Z) for alpha in (1, 2).
double centering_constant(const TailModel& model, double phi_total);

}  // namespace m2ma
