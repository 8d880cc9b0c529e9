#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "m2ma/exact_sum.hpp"
#include "m2ma/format.hpp"
#include "m2ma/ma.hpp"

namespace m2ma {

std::string CoefficientViolation::describe() const {
  return "partial-sum condition violated at s=" + std::to_string(s) +
         ", ratio=" + format_double(ratio);
}

namespace {

// Exact partial sums S_0..S_q, each rounded once.
std::vector<double> partial_sums(std::span<const double> phis) {
  std::vector<double> sums;
  sums.reserve(phis.size());
  ExactSum acc;
  for (double phi : phis) {
    acc.add(phi);
    sums.push_back(acc.value());
  }
  return sums;
}

void require_usable(std::span<const double> phis) {
  if (phis.empty()) throw std::invalid_argument("coefficients: empty list");
  for (double phi : phis) {
    if (!std::isfinite(phi)) throw std::invalid_argument("coefficients: values must be finite");
  }
}

}  // namespace

std::optional<CoefficientViolation> validate_coefficients(std::span<const double> phis) {
  require_usable(phis);
  const auto sums = partial_sums(phis);
  const double total = sums.back();
  if (total == 0.0) throw std::invalid_argument("coefficients: Phi = 0, condition undefined");
  const double sign = total > 0.0 ? 1.0 : -1.0;
  for (std::size_t s = 0; s < sums.size(); ++s) {
    const double reduced = sign * sums[s];
    if (reduced < 0.0 || reduced > sign * total) {
      return CoefficientViolation{s, sums[s] / total};
    }
  }
  return std::nullopt;
}

Coefficients::Coefficients(std::vector<double> phis) : Coefficients(std::move(phis), true) {}

Coefficients Coefficients::unchecked(std::vector<double> phis) {
  return Coefficients(std::move(phis), false);
}

Coefficients::Coefficients(std::vector<double> phis, bool check) {
  require_usable(phis);
  if (check) {
    if (auto violation = validate_coefficients(phis)) throw CoefficientError(*violation);
  }
  ExactSum total;
  for (double phi : phis) total.add(phi);
  double phi_total = total.value();
  if (phi_total == 0.0) throw std::invalid_argument("coefficients: Phi = 0, condition undefined");
  if (phi_total < 0.0) {
    for (double& phi : phis) phi = -phi;
    phi_total = -phi_total;
    flipped_ = true;
  }
  ExactSum abs_total;
  for (double phi : phis) abs_total.add(std::abs(phi));
  phis_ = std::move(phis);
  total_ = phi_total;
  abs_total_ = abs_total.value();
}

std::vector<double> Coefficients::original() const {
  std::vector<double> out(phis_.begin(), phis_.end());
  if (flipped_) {
    for (double& phi : out) phi = -phi;
  }
  return out;
}

std::vector<double> parse_coefficient_list(const std::string& text) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::string field;
    while (fields >> field) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(field, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != field.size() || !std::isfinite(value)) {
        throw std::invalid_argument("coefficient list line " + std::to_string(line_no) +
                                    ": bad number '" + field + "'");
      }
      values.push_back(value);
    }
  }
  if (values.empty()) throw std::invalid_argument("coefficient list: no values");
  return values;
}

std::vector<double> load_coefficient_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coefficient file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_coefficient_list(text.str());
}

InfiniteCoefficients InfiniteCoefficients::geometric(double rho) {
  if (!(std::abs(rho) < 1.0) || rho == 0.0) {
    throw std::invalid_argument("geometric coefficients need 0 < |rho| < 1");
  }
  InfiniteCoefficients out(Kind::geometric, "geometric(" + format_double(rho) + ")",
                           [rho](std::size_t j) {
                             return (1.0 - rho) * std::pow(rho, static_cast<double>(j));
                           });
  out.rho_ = rho;
  return out;
}

InfiniteCoefficients InfiniteCoefficients::polynomial(double c, double exponent) {
  if (!std::isfinite(c) || c == 0.0) throw std::invalid_argument("polynomial coefficients need c != 0");
  if (!(exponent > 1.0) || !std::isfinite(exponent)) {
    throw std::invalid_argument("polynomial coefficients need exponent > 1");
  }
  InfiniteCoefficients out(
      Kind::polynomial, "polynomial(" + format_double(c) + "," + format_double(exponent) + ")",
      [c, exponent](std::size_t j) { return c * std::pow(static_cast<double>(j + 1), -exponent); });
  out.c_ = c;
  out.exponent_ = exponent;
  return out;
}

InfiniteCoefficients InfiniteCoefficients::finite(std::vector<double> phis) {
  require_usable(phis);
  const std::size_t support = phis.size();
  InfiniteCoefficients out(Kind::finite, "finite",
                           [values = std::move(phis)](std::size_t j) {
                             return j < values.size() ? values[j] : 0.0;
                           });
  out.support_ = support;
  return out;
}

InfiniteCoefficients InfiniteCoefficients::custom(std::string name, Generator rule) {
  return InfiniteCoefficients(Kind::custom, std::move(name), std::move(rule));
}

double InfiniteCoefficients::tail_sum(std::size_t q) const { return tail(q, false); }

double InfiniteCoefficients::abs_tail_sum(std::size_t q) const { return tail(q, true); }

double InfiniteCoefficients::tail(std::size_t q, bool absolute) const {
  switch (kind_) {
    case Kind::geometric: {
      const long double rho = rho_;
      const long double head = std::pow(absolute ? std::abs(rho) : rho, static_cast<long double>(q));
      if (!absolute) return static_cast<double>(head);
      return static_cast<double>(std::abs(1.0L - rho) * head / (1.0L - std::abs(rho)));
    }
    case Kind::polynomial: {
      // sum_{m >= q+1} m^-e: direct terms up to M, Euler-Maclaurin beyond.
      const long double e = exponent_;
      const std::size_t cut = std::max<std::size_t>(q + 1, 2000);
      long double sum = 0.0L;
      for (std::size_t m = cut - 1; m >= q + 1; --m) sum += std::pow(static_cast<long double>(m), -e);
      const long double big = static_cast<long double>(cut);
      sum += std::pow(big, 1.0L - e) / (e - 1.0L) + std::pow(big, -e) / 2.0L +
             e * std::pow(big, -e - 1.0L) / 12.0L -
             e * (e + 1.0L) * (e + 2.0L) * std::pow(big, -e - 3.0L) / 720.0L;
      const long double c = absolute ? std::abs(static_cast<long double>(c_)) : c_;
      return static_cast<double>(c * sum);
    }
    case Kind::finite: {
      ExactSum sum;
      for (std::size_t j = q; j < support_; ++j) sum.add(absolute ? std::abs(rule_(j)) : rule_(j));
      return sum.value();
    }
    case Kind::custom:
      break;
  }
  // Doubling blocks until a block contributes nothing visible.
  constexpr std::size_t kLimit = std::size_t{1} << 26;
  long double sum = 0.0L;
  std::size_t j = q;
  for (std::size_t block = 1;; block *= 2) {
    long double block_sum = 0.0L;
    long double block_abs = 0.0L;
    for (std::size_t i = 0; i < block; ++i, ++j) {
      const double phi = rule_(j);
      if (!std::isfinite(phi)) throw std::domain_error(name_ + ": coefficient is not finite");
      block_sum += absolute ? std::abs(phi) : phi;
      block_abs += std::abs(phi);
    }
    sum += block_sum;
    if (block_abs <= 1e-14L) break;
    if (j - q >= kLimit) {
      throw std::domain_error(name_ + ": tail sum does not settle within 1e-12");
    }
  }
  return static_cast<double>(sum);
}

bool InfiniteCoefficients::delta_summable(double delta) const {
  if (!(delta > 0.0)) return false;
  switch (kind_) {
    case Kind::geometric:
    case Kind::finite:
      return true;
    case Kind::polynomial:
      return exponent_ * delta > 1.0;
    case Kind::custom:
      return false;
  }
  return false;
}

std::optional<double> InfiniteCoefficients::admissible_delta(double alpha) const {
  const double cap = std::min(1.0, alpha);
  switch (kind_) {
    case Kind::geometric:
    case Kind::finite:
      return cap / 2.0;
    case Kind::polynomial:
      if (1.0 / exponent_ < cap) return (1.0 / exponent_ + cap) / 2.0;
      return std::nullopt;
    case Kind::custom:
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<double> truncation_vector(const InfiniteCoefficients& coeffs, std::size_t q) {
  if (q < 1) throw std::invalid_argument("truncation needs q >= 1");
  std::vector<double> phis;
  phis.reserve(q + 1);
  for (std::size_t j = 0; j < q; ++j) phis.push_back(coeffs(j));
  phis.push_back(coeffs.tail_sum(q));
  return phis;
}

Coefficients truncate_infinite(const InfiniteCoefficients& coeffs, std::size_t q) {
  return Coefficients(truncation_vector(coeffs, q));
}

}  // namespace m2ma
