#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "m2ma/cadlag.hpp"
#include "m2ma/noise.hpp"

namespace m2ma {

/// First index s at which the partial-sum ratio S_s / Phi leaves [0, 1].
struct CoefficientViolation {
  std::size_t s;
  double ratio;
  std::string describe() const;
};

/// Checks 0 <= (phi_0 + ... + phi_s) / Phi <= 1 for s = 0..q with no
/// tolerance; partial sums are exact. Throws std::invalid_argument when the
/// list is empty or Phi = 0.
std::optional<CoefficientViolation> validate_coefficients(std::span<const double> phis);

class CoefficientError : public std::invalid_argument {
 public:
  explicit CoefficientError(const CoefficientViolation& v)
      : std::invalid_argument(v.describe()), violation_(v) {}
  const CoefficientViolation& violation() const noexcept { return violation_; }

 private:
  CoefficientViolation violation_;
};

/**
 * Finite moving-average filter phi_0..phi_q with Phi > 0.
 *
 * A vector with negative total is stored negated and noise_flipped() is set;
 * running the negated filter on -Z reproduces the original series exactly.
 */
class Coefficients {
 public:
  /// Throws CoefficientError when the partial-sum condition fails.
  explicit Coefficients(std::vector<double> phis);

  /// Skips the partial-sum condition (exploratory runs). Still rejects Phi = 0.
  static Coefficients unchecked(std::vector<double> phis);

  std::span<const double> phis() const noexcept { return phis_; }
  double operator[](std::size_t i) const noexcept { return phis_[i]; }
  std::size_t order() const noexcept { return phis_.size() - 1; }
  /// Phi of the stored (reduced) filter; always positive.
  double total() const noexcept { return total_; }
  double abs_total() const noexcept { return abs_total_; }
  bool noise_flipped() const noexcept { return flipped_; }
  /// Phi of the filter as given.
  double original_total() const noexcept { return flipped_ ? -total_ : total_; }
  std::vector<double> original() const;

  friend bool operator==(const Coefficients&, const Coefficients&) = default;

 private:
  Coefficients(std::vector<double> phis, bool check);

  std::vector<double> phis_;
  double total_ = 0.0;
  double abs_total_ = 0.0;
  bool flipped_ = false;
};

/// Reads one value per line (commas and blank lines allowed, # starts a comment).
std::vector<double> parse_coefficient_list(const std::string& text);
std::vector<double> load_coefficient_file(const std::string& path);

/// An infinite coefficient sequence phi_0, phi_1, ...
class InfiniteCoefficients {
 public:
  using Generator = std::function<double(std::size_t)>;

  /// phi_j = (1 - rho) rho^j, 0 < |rho| < 1; Phi = 1 for rho > 0.
  static InfiniteCoefficients geometric(double rho);
  /// phi_j = c (j + 1)^-exponent, exponent > 1.
  static InfiniteCoefficients polynomial(double c, double exponent);
  /// The given values followed by zeros.
  static InfiniteCoefficients finite(std::vector<double> phis);
  /// Arbitrary rule; tail sums are found numerically and rejected when the
  /// partial sums fail to settle.
  static InfiniteCoefficients custom(std::string name, Generator rule);

  double operator()(std::size_t j) const { return rule_(j); }
  const std::string& name() const noexcept { return name_; }

  /// sum_{j >= q} phi_j and sum_{j >= q} |phi_j|. Throw std::domain_error when
  /// the series does not settle within 1e-12.
  double tail_sum(std::size_t q) const;
  double abs_tail_sum(std::size_t q) const;

  /// Whether sum |phi_j|^delta < infinity is known to hold.
  bool delta_summable(double delta) const;
  /// A delta in (0, min(1, alpha)) with sum |phi_j|^delta finite, if any.
  std::optional<double> admissible_delta(double alpha) const;

 private:
  enum class Kind { geometric, polynomial, finite, custom };
  InfiniteCoefficients(Kind kind, std::string name, Generator rule)
      : kind_(kind), name_(std::move(name)), rule_(std::move(rule)) {}

  double tail(std::size_t q, bool absolute) const;

  Kind kind_;
  std::string name_;
  Generator rule_;
  double rho_ = 0.0;
  double c_ = 0.0;
  double exponent_ = 0.0;
  std::size_t support_ = 0;
};

/// (phi_0, ..., phi_{q-1}, phi'_q) with phi'_q = sum_{j >= q} phi_j, unchecked.
std::vector<double> truncation_vector(const InfiniteCoefficients& coeffs, std::size_t q);

/// The lumped truncation as a checked filter. Requires q >= 1.
Coefficients truncate_infinite(const InfiniteCoefficients& coeffs, std::size_t q);

/// X_1..X_m together with the raw noise Z_{1-q}..Z_m. When the filter was
/// reduced the convolution runs on the negated noise. m = n, or n + q when
/// extended.
struct MaSeries {
  std::vector<double> x;
  NoiseWindow noise;
};

MaSeries ma_series(const TailModel& model, const Coefficients& coeffs, std::int64_t n, Seed seed,
                   bool extended = false);

/// The same convolution on caller-supplied raw noise, which must cover
/// Z_{1-q}..Z_m.
std::vector<double> ma_series(const Coefficients& coeffs, const NoiseWindow& noise, std::int64_t m);

/// V_n and V_n^Z built on one noise realisation.
struct CoupledPaths {
  StepFunction vn;
  StepFunction vnz;
};

CoupledPaths build_paths(const TailModel& model, const Coefficients& coeffs, std::int64_t n,
                         Seed seed);

/// Coupled paths from explicit noise (covering Z_{1-q}..Z_n), scale a_n and
/// centering b_n.
CoupledPaths build_paths(const Coefficients& coeffs, const NoiseWindow& noise, std::int64_t n,
                         double scale, double drift);

enum class CouplingCase { short_prefix, long_prefix, lagged };

const char* to_string(CouplingCase c) noexcept;

struct CouplingResult {
  CouplingCase which;
  double lhs;
  double rhs;
  std::optional<double> h;
  std::optional<double> g;
  std::optional<double> t;
};

/**
 * Evaluates both sides of the coupling identities for V_n^Z - V_n at lattice
 * time k:
 *   short_prefix  (k < q):        sum_{i<=k} (Phi Z_i - X_i) / a_n
 *   long_prefix   (k >= q):       same left side, = H_n(k) - G_n
 *   lagged        (q <= k <= n-q): sum_{i<=k} Phi Z_i - sum_{i<=k+q} X_i, = -G_n - T_n(k)
 * Both sides are evaluated with exact summation and divided by a_n once.
 * Throws std::invalid_argument for q = 0 or k outside the case's range.
 */
CouplingResult coupling_decomposition(const TailModel& model, const Coefficients& coeffs,
                                  std::int64_t n, std::int64_t k, CouplingCase which, Seed seed);

/// Picks short_prefix for k < q and long_prefix otherwise.
CouplingResult coupling_decomposition(const TailModel& model, const Coefficients& coeffs,
                                  std::int64_t n, std::int64_t k, Seed seed);

/// Explicit-noise form. The window must cover Z_{1-q}..Z_n.
CouplingResult coupling_decomposition(const Coefficients& coeffs, const NoiseWindow& noise,
                                  std::int64_t n, std::int64_t k, CouplingCase which, double scale);

/// Coefficient weights of O_n(q) for fixed (n, q, W), independent of noise.
class ResidualWeights {
 public:
  ResidualWeights(const InfiniteCoefficients& coeffs, std::int64_t n, std::size_t q,
                  std::int64_t past_window);

  std::int64_t n() const noexcept { return n_; }
  std::size_t q() const noexcept { return q_; }
  std::int64_t past_window() const noexcept { return window_; }
  /// 2 sum_{j > q} |phi_j|.
  double head_factor() const noexcept { return head_; }
  /// sum_{j=1}^n |phi_{q-i+j}| for i = 0, -1, ..., -W.
  double past_weight(std::int64_t i) const { return past_.at(static_cast<std::size_t>(-i)); }
  /// sum_{m > q + W + 1} |phi_m|, the coefficient mass left out by the window.
  double neglected_mass() const noexcept { return neglected_; }
  /// Noise indices touched: Z_{-W-q}..Z_{n-q}.
  std::int64_t first_index() const noexcept { return -window_ - static_cast<std::int64_t>(q_); }
  std::int64_t last_index() const noexcept { return n_ - static_cast<std::int64_t>(q_); }

 private:
  std::int64_t n_;
  std::size_t q_;
  std::int64_t window_;
  double head_ = 0.0;
  double neglected_ = 0.0;
  std::vector<double> past_;
};

struct Residual {
  /// O_n(q) / a_n with the past truncated at -W.
  double value;
  /// n * neglected_mass * m / a_n where m is E|Z| (alpha > 1) or the median
  /// of |Z| otherwise: a rough size of what the window leaves out.
  double neglected_bound;
};

Residual truncation_residual(const TailModel& model, const InfiniteCoefficients& coeffs,
                             std::int64_t n, std::size_t q, std::int64_t past_window, Seed seed);

/// Evaluation on |Z| values from a window covering weights.first_index()..last_index().
Residual truncation_residual(const TailModel& model, const ResidualWeights& weights,
                             const NoiseWindow& noise);

}  // namespace m2ma
