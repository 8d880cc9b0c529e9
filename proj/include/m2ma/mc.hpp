#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "m2ma/config.hpp"
#include "m2ma/ma.hpp"
#include "m2ma/stats.hpp"

namespace m2ma {

// Every experiment is a pure function of the config: replicate r of cell c
// draws its noise from derive_seed(seed, {stream, c, r}), and results land in
// per-replicate slots that are reduced in index order. `jobs` only changes
// how replicates are scheduled.

struct SlutskyRow {
  std::int64_t n;
  std::int64_t reps;
  Estimate p_m2;
  Estimate p_unif;
  Estimate mean_m2;
  Estimate mean_unif;
};

/// P(d(V_n^Z, V_n) > epsilon) for the M2 and uniform distances, per n.
std::vector<SlutskyRow> slutsky_gap(const ExperimentConfig& cfg, unsigned jobs = 1);

struct TruncationRow {
  std::int64_t q;
  std::int64_t n;
  std::int64_t reps;
  Estimate p_o;
  Estimate mean_residual;
  /// Largest per-replicate size of the part of O_n(q) cut off by the window.
  double neglected_bound;
};

/// P(O_n(q) / a_n > epsilon) per q at n = max(n_grid).
std::vector<TruncationRow> truncation_decay(const ExperimentConfig& cfg, unsigned jobs = 1);

struct MarginalRow {
  double t;
  std::int64_t n;
  std::int64_t reps;
  std::complex<double> empirical;
  std::complex<double> limit;
  double discrepancy;
  /// 4 / sqrt(reps).
  double radius;
};

/// Empirical characteristic function of V_n(1) against exp(psi(Phi t)) at
/// n = max(n_grid).
std::vector<MarginalRow> marginal_cf_check(const ExperimentConfig& cfg, unsigned jobs = 1);

struct FunctionalRow {
  std::int64_t n;
  std::int64_t reps;
  std::int64_t n_big;
  double ks;
  /// Asymptotic two-sample 1% critical value.
  double critical;
};

/// Two-sample KS between the functional of V_n and reference_limit_sample.
std::vector<FunctionalRow> functional_convergence(const ExperimentConfig& cfg, unsigned jobs = 1);

/// Sample of the configured functional of V_n over reps replicates.
std::vector<double> functional_sample(const ExperimentConfig& cfg, std::int64_t n, unsigned jobs = 1);

struct IdentityRow {
  CouplingCase which;
  std::int64_t checked;
  std::int64_t skipped;
  double max_discrepancy;
  bool pass;
};

inline constexpr double kIdentityTolerance = 1e-10;

/**
 * Randomised checks of the coupling identities: `reps` tuples in total,
 * cycling through the three cases, with alpha in {0.5, 0.8, 1, 1.5}, q <= 8
 * and n <= 512. Coefficients are multiples of 2^-10 satisfying the
 * partial-sum condition, with a random overall sign. A draw whose case has no
 * admissible k (q = 1 for case i) is counted as skipped and redrawn.
 * Discrepancy is |lhs - rhs| / (1 + |lhs|).
 */
std::vector<IdentityRow> identity_fuzz(const ExperimentConfig& cfg);

}  // namespace m2ma
