#include "m2ma/mc.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "m2ma/cadlag.hpp"
#include "m2ma/parallel.hpp"
#include "m2ma/stablelim.hpp"

namespace m2ma {

namespace {

Seed replicate_seed(Seed seed, Stream stream, std::int64_t cell, std::size_t r) {
  return derive_seed(seed, {key(stream), static_cast<std::uint64_t>(cell), static_cast<std::uint64_t>(r)});
}

std::size_t reps_of(const ExperimentConfig& cfg) { return static_cast<std::size_t>(cfg.reps); }

// Increments X_1..X_n of one replicate, with a_n and b_n.
struct Increments {
  std::vector<double> x;
  double scale;
  double drift;
};

Increments ma_increments(const TailModel& model, const Coefficients& coeffs, std::int64_t n, Seed seed) {
  const TailModel law = coeffs.noise_flipped() ? model.flipped() : model;
  auto series = ma_series(model, coeffs, n, seed);
  return {std::move(series.x), norming_constant(model, n).value(),
          centering_constant(law, coeffs.total())};
}

}  // namespace

std::vector<SlutskyRow> slutsky_gap(const ExperimentConfig& cfg, unsigned jobs) {
  const TailModel model = cfg.model();
  const Coefficients coeffs = cfg.coefficients();
  const std::size_t reps = reps_of(cfg);
  std::vector<SlutskyRow> rows;
  for (const std::int64_t n : cfg.n_grid) {
    std::vector<double> m2(reps);
    std::vector<double> unif(reps);
    parallel_for(reps, jobs, [&](std::size_t r) {
      const auto paths = build_paths(model, coeffs, n, replicate_seed(cfg.seed, Stream::slutsky, n, r));
      m2[r] = m2_distance(paths.vnz, paths.vn);
      unif[r] = uniform_distance(paths.vnz, paths.vn);
    });
    const auto above = [&](const std::vector<double>& d) {
      return static_cast<std::size_t>(
          std::count_if(d.begin(), d.end(), [&](double v) { return v > cfg.epsilon; }));
    };
    rows.push_back({n, cfg.reps, proportion(above(m2), reps), proportion(above(unif), reps),
                    mean_estimate(m2), mean_estimate(unif)});
  }
  return rows;
}

std::vector<TruncationRow> truncation_decay(const ExperimentConfig& cfg, unsigned jobs) {
  const TailModel model = cfg.model();
  const InfiniteCoefficients coeffs = cfg.infinite();
  const std::int64_t n = cfg.n_grid.back();
  const std::size_t reps = reps_of(cfg);
  std::vector<TruncationRow> rows;
  for (const std::int64_t q : cfg.q_grid) {
    const ResidualWeights weights(coeffs, n, static_cast<std::size_t>(q), cfg.past_window);
    std::vector<double> value(reps);
    std::vector<double> neglected(reps);
    parallel_for(reps, jobs, [&](std::size_t r) {
      const auto noise = NoiseWindow::sample(model, replicate_seed(cfg.seed, Stream::truncation, q, r),
                                             weights.first_index(), weights.last_index());
      const auto residual = truncation_residual(model, weights, noise);
      value[r] = residual.value;
      neglected[r] = residual.neglected_bound;
    });
    const auto hits = static_cast<std::size_t>(
        std::count_if(value.begin(), value.end(), [&](double v) { return v > cfg.epsilon; }));
    rows.push_back({q, n, cfg.reps, proportion(hits, reps), mean_estimate(value),
                    *std::max_element(neglected.begin(), neglected.end())});
  }
  return rows;
}

std::vector<MarginalRow> marginal_cf_check(const ExperimentConfig& cfg, unsigned jobs) {
  const TailModel model = cfg.model();
  const Coefficients coeffs = cfg.coefficients();
  const std::int64_t n = cfg.n_grid.back();
  const std::size_t reps = reps_of(cfg);
  std::vector<double> terminal(reps);
  parallel_for(reps, jobs, [&](std::size_t r) {
    const auto inc = ma_increments(model, coeffs, n, replicate_seed(cfg.seed, Stream::marginal, n, r));
    terminal[r] = evaluate_functional(Functional::terminal, inc.x, inc.scale, inc.drift);
  });
  const LevyTriple triple = levy_triple(model);
  std::vector<MarginalRow> rows;
  for (const double t : cfg.t_grid) {
    const auto emp = empirical_cf(terminal, t);
    const auto lim = limit_cf(triple, coeffs.original_total(), t);
    rows.push_back({t, n, cfg.reps, emp, lim, std::abs(emp - lim),
                    4.0 / std::sqrt(static_cast<double>(reps))});
  }
  return rows;
}

std::vector<double> functional_sample(const ExperimentConfig& cfg, std::int64_t n, unsigned jobs) {
  const TailModel model = cfg.model();
  const Coefficients coeffs = cfg.coefficients();
  const std::size_t reps = reps_of(cfg);
  std::vector<double> sample(reps);
  parallel_for(reps, jobs, [&](std::size_t r) {
    const auto inc = ma_increments(model, coeffs, n, replicate_seed(cfg.seed, Stream::functional, n, r));
    sample[r] = evaluate_functional(cfg.functional, inc.x, inc.scale, inc.drift);
  });
  return sample;
}

std::vector<FunctionalRow> functional_convergence(const ExperimentConfig& cfg, unsigned jobs) {
  const TailModel model = cfg.model();
  const Coefficients coeffs = cfg.coefficients();
  const auto reference = reference_limit_sample(model, coeffs.original_total(), cfg.n_big,
                                                reps_of(cfg), cfg.functional, cfg.seed, jobs);
  std::vector<FunctionalRow> rows;
  for (const std::int64_t n : cfg.n_grid) {
    const auto sample = functional_sample(cfg, n, jobs);
    rows.push_back({n, cfg.reps, cfg.n_big, ks_two_sample(sample, reference),
                    ks_two_sample_critical(sample.size(), reference.size())});
  }
  return rows;
}

namespace {

constexpr std::int64_t kFuzzMaxQ = 8;
constexpr std::int64_t kFuzzMaxN = 512;
constexpr double kFuzzGrid = 0x1.0p-10;

// Coefficients on the 2^-10 grid whose partial sums stay inside [0, Phi]:
// draw Phi and the interior partial sums on the grid, then difference them.
std::vector<double> fuzz_coefficients(std::mt19937_64& rng, std::int64_t q) {
  std::uniform_int_distribution<int> total_units(256, 2048);
  const int units = total_units(rng);
  std::uniform_int_distribution<int> partial_units(0, units);
  std::vector<double> sums(static_cast<std::size_t>(q + 1));
  for (std::int64_t s = 0; s < q; ++s) sums[static_cast<std::size_t>(s)] = partial_units(rng) * kFuzzGrid;
  sums.back() = units * kFuzzGrid;
  std::vector<double> phis(sums.size());
  phis[0] = sums[0];
  for (std::size_t s = 1; s < sums.size(); ++s) phis[s] = sums[s] - sums[s - 1];
  if (std::bernoulli_distribution(0.5)(rng)) {
    for (double& phi : phis) phi = -phi;
  }
  return phis;
}

}  // namespace

std::vector<IdentityRow> identity_fuzz(const ExperimentConfig& cfg) {
  static constexpr double kAlphas[] = {0.5, 0.8, 1.0, 1.5};
  static constexpr CouplingCase kCases[] = {CouplingCase::short_prefix, CouplingCase::long_prefix,
                                          CouplingCase::lagged};
  std::vector<IdentityRow> rows;
  for (const auto which : kCases) rows.push_back({which, 0, 0, 0.0, true});

  std::int64_t checked = 0;
  for (std::uint64_t attempt = 0; checked < cfg.reps; ++attempt) {
    const std::size_t slot = static_cast<std::size_t>(checked % 3);
    IdentityRow& row = rows[slot];
    std::mt19937_64 rng(derive_seed(cfg.seed, {key(Stream::identity), attempt}));

    const double alpha = kAlphas[std::uniform_int_distribution<int>(0, 3)(rng)];
    const double p = alpha == 1.0 ? 0.5 : std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto q = std::uniform_int_distribution<std::int64_t>(1, kFuzzMaxQ)(rng);
    std::int64_t n = 0;
    std::int64_t k = 0;
    switch (row.which) {
      case CouplingCase::short_prefix:
        if (q < 2) {
          ++row.skipped;
          continue;
        }
        n = std::uniform_int_distribution<std::int64_t>(q, kFuzzMaxN)(rng);
        k = std::uniform_int_distribution<std::int64_t>(1, q - 1)(rng);
        break;
      case CouplingCase::long_prefix:
        n = std::uniform_int_distribution<std::int64_t>(q, kFuzzMaxN)(rng);
        k = std::uniform_int_distribution<std::int64_t>(q, n)(rng);
        break;
      case CouplingCase::lagged:
        n = std::uniform_int_distribution<std::int64_t>(1, kFuzzMaxN)(rng);
        if (n < 2 * q) {
          ++row.skipped;
          continue;
        }
        k = std::uniform_int_distribution<std::int64_t>(q, n - q)(rng);
        break;
    }
    const Coefficients coeffs(fuzz_coefficients(rng, q));
    const Seed noise_seed = rng();
    const auto result =
        coupling_decomposition(make_tail_model(alpha, p), coeffs, n, k, row.which, noise_seed);
    const double discrepancy = std::abs(result.lhs - result.rhs) / (1.0 + std::abs(result.lhs));
    row.max_discrepancy = std::max(row.max_discrepancy, discrepancy);
    row.pass = row.pass && discrepancy <= kIdentityTolerance;
    ++row.checked;
    ++checked;
  }
  return rows;
}

}  // namespace m2ma
