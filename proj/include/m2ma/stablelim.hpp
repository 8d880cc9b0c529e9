#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "m2ma/noise.hpp"

namespace m2ma {

/**
 * Levy triple (0, mu, b) of the limiting alpha-stable process, where
 * mu(dx) = (p 1{x > 0} + r 1{x < 0}) alpha |x|^(-alpha-1) dx.
 */
struct LevyTriple {
  double gaussian = 0.0;
  double alpha;
  double p;
  double r;
  double b;
};

/// b = 0 at alpha = 1, else (p - r) alpha / (1 - alpha).
LevyTriple levy_triple(const TailModel& model);

/// psi(t) = i b t + integral (e^{itx} - 1 - itx 1{|x| <= 1}) mu(dx).
/// Absolute error around 1e-10 for |t| up to a few hundred.
std::complex<double> lk_exponent(const LevyTriple& triple, double t);

/// exp(psi(phi_total t)), the characteristic function of Phi V(1).
std::complex<double> limit_cf(const LevyTriple& triple, double phi_total, double t);

enum class Functional { terminal, supremum };

const char* to_string(Functional f) noexcept;
/// Throws std::invalid_argument for anything but "terminal" or "supremum".
Functional parse_functional(const std::string& name);

/// Terminal value or supremum of a partial-sum path with increments y.
double evaluate_functional(Functional f, const std::vector<double>& y, double scale, double drift);

/**
 * reps draws of the chosen functional of sum_{i <= floor(N t)} Phi Z'_i / a_N,
 * with Z' = Z - E(Z) for alpha > 1. Replicate r uses the seed derived from
 * (seed, r); jobs only changes scheduling.
 */
std::vector<double> reference_limit_sample(const TailModel& model, double phi_total,
                                           std::int64_t n_big, std::size_t reps,
                                           Functional functional, Seed seed, unsigned jobs = 1);

}  // namespace m2ma
