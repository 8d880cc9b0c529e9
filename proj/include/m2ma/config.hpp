#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "m2ma/ma.hpp"
#include "m2ma/noise.hpp"
#include "m2ma/seeding.hpp"
#include "m2ma/stablelim.hpp"

namespace m2ma {

/// A named infinite coefficient family: geometric(rho) or polynomial(c, exponent).
struct CoefficientFamily {
  std::string name;
  std::vector<double> params;
  friend bool operator==(const CoefficientFamily&, const CoefficientFamily&) = default;
};

/**
 * One Monte Carlo run description.
 *
 * Text form is flat `key = value` lines with `#` comments. Keys: alpha
 * (required), p, coeffs | coeff_family | coeffs_file, delta, n_grid, q_grid,
 * reps, epsilon, seed, past_window, t_grid, n_big, functional,
 * allow_invalid_coeffs. Lists are comma separated.
 */
struct ExperimentConfig {
  double alpha = 0.0;
  double p = 0.5;
  /// Finite filter; empty when a family is given.
  std::vector<double> coeffs{1.0};
  std::optional<CoefficientFamily> family;
  std::optional<double> delta;
  std::vector<std::int64_t> n_grid{256, 1024, 4096, 16384};
  std::vector<std::int64_t> q_grid{2, 4, 8, 16};
  std::int64_t reps = 500;
  double epsilon = 0.1;
  Seed seed = 1;
  std::int64_t past_window = 1000;
  std::vector<double> t_grid{-2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0};
  std::int64_t n_big = 65536;
  Functional functional = Functional::supremum;
  /// Lets a filter that fails the partial-sum condition through (exploratory).
  bool allow_invalid_coeffs = false;

  TailModel model() const;
  /// The finite filter. Throws std::invalid_argument when only a family is set.
  Coefficients coefficients() const;
  /// The family, or the finite filter followed by zeros.
  InfiniteCoefficients infinite() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// A constraint violation or malformed entry. line() is 0 when the problem is
/// not tied to one line (a missing key, say).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, std::string key, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  std::size_t line_;
  std::string key_;
};

/// The config file could not be read at all.
class ConfigUnreadable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// coeffs_file entries resolve against base_dir.
ExperimentConfig parse_config(const std::string& text,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Text form that parses back to an equal config. A coefficient file is
/// echoed as its values.
std::string echo_config(const ExperimentConfig& config);

CoefficientFamily parse_family(const std::string& text);
InfiniteCoefficients make_family(const CoefficientFamily& family);
std::string format_family(const CoefficientFamily& family);

}  // namespace m2ma
