// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "m2ma/cadlag.hpp"
#include "m2ma/config.hpp"
#include "m2ma/mc.hpp"
#include "m2ma/noise.hpp"
#include "m2ma/report.hpp"
#include "m2ma/stablelim.hpp"
#include "random_paths.hpp"

#ifdef M2MA_HAVE_CLI
#include "cli.hpp"
#endif

using namespace m2ma;
namespace fs = std::filesystem;

namespace {

// All Monte Carlo criteria use this seed; it is fixed ahead of the run.
constexpr Seed kSeed = 1;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string estimates(const std::vector<Estimate>& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? " " : "") + fmt(e[i].value) + "(" + fmt(e[i].stderr_) + ")";
  return s;
}

// Each step may rise by at most k standard errors of the difference.
bool nonincreasing_within(const std::vector<Estimate>& e, double k) {
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    if (e[i + 1].value > e[i].value + k * std::hypot(e[i].stderr_, e[i + 1].stderr_)) return false;
  }
  return true;
}

ExperimentConfig base(double alpha) {
  ExperimentConfig cfg;
  cfg.alpha = alpha;
  cfg.p = 0.5;
  cfg.coeffs = {0.5, -0.5, 1.0};
  cfg.seed = kSeed;
  return cfg;
}

Outcome identities() {
  auto cfg = base(0.8);
  cfg.reps = 500;
  const auto rows = identity_fuzz(cfg);
  bool pass = true;
  std::int64_t checked = 0;
  double worst = 0.0;
  std::string per_case;
  for (const auto& row : rows) {
    pass = pass && row.pass;
    checked += row.checked;
    worst = std::max(worst, row.max_discrepancy);
    per_case += std::string(" ") + to_string(row.which) + ":" + std::to_string(row.checked);
  }
  pass = pass && checked == 500;
  return {pass, std::to_string(checked) + " tuples" + per_case + ", max rel discrepancy " + fmt(worst)};
}

Outcome metric_checks() {
  std::mt19937_64 rng(kSeed);
  double worst_oracle = 0.0;
  double worst_triangle = 0.0;
  double worst_order = -INFINITY;
  bool symmetric = true;
  for (int i = 0; i < 200; ++i) {
    const auto x = testing::random_step(rng, 50);
    const auto y = testing::random_step(rng, 50);
    const auto z = testing::random_step(rng, 50);
    const double dxy = m2_distance(x, y);
    symmetric = symmetric && dxy == m2_distance(y, x) && m2_distance(x, x) == 0.0;
    worst_oracle = std::max(worst_oracle, std::abs(dxy - sampled_hausdorff(x, y, 1e-3)));
    worst_triangle = std::max(worst_triangle, dxy - (m2_distance(x, z) + m2_distance(z, y)));
    worst_order = std::max(worst_order, dxy - uniform_distance(x, y));
  }
  const bool pass = symmetric && worst_oracle <= 1e-3 && worst_triangle <= 1e-9 && worst_order <= 1e-12;
  return {pass, "200 pairs: max |exact - sampled| " + fmt(worst_oracle) + ", symmetry " +
                    (symmetric ? "exact" : "broken") + ", max triangle excess " + fmt(worst_triangle) +
                    ", max (m2 - uniform) " + fmt(worst_order)};
}

Outcome normalization() {
  std::int64_t failures = 0;
  for (const double alpha : {0.5, 0.8, 1.0, 1.5, 1.9}) {
    const auto model = make_tail_model(alpha, 0.5);
    for (std::int64_t n = 1; n <= 10000; ++n) {
      failures += expected_exceedances(model, norming_constant(model, n)) != 1.0;
    }
  }
  return {failures == 0, "n P(|Z| > a_n) == 1 for n = 1..10000, alpha in {0.5, 0.8, 1, 1.5, 1.9}; " +
                             std::to_string(failures) + " mismatches"};
}

Outcome slutsky() {
  auto cfg = base(0.8);
  cfg.epsilon = 0.1;
  cfg.reps = 500;
  cfg.n_grid = {256, 1024, 4096, 16384};
  const auto rows = slutsky_gap(cfg);
  std::vector<Estimate> p;
  std::vector<Estimate> unif;
  for (const auto& row : rows) {
    p.push_back(row.p_m2);
    unif.push_back(row.p_unif);
  }
  const bool trend = nonincreasing_within(p, 2.0);
  const bool halved = p.back().value < 0.5 * p.front().value;
  // The uniform-distance column is reported, not asserted.
  return {trend && halved, "P(d_M2 > 0.1) at n = 2^8..2^14: " + estimates(p) + (trend ? "" : " [not nonincreasing]") +
                               (halved ? "" : " [final not below half of first]") +
                               "; uniform for comparison: " + estimates(unif)};
}

Outcome truncation() {
  auto cfg = base(0.8);
  cfg.coeffs.clear();
  cfg.family = CoefficientFamily{"geometric", {0.5}};
  cfg.epsilon = 0.1;
  cfg.reps = 500;
  cfg.n_grid = {4096};
  cfg.q_grid = {2, 4, 8, 16};
  const auto rows = truncation_decay(cfg);
  std::vector<Estimate> p;
  for (const auto& row : rows) p.push_back(row.p_o);
  const bool trend = nonincreasing_within(p, 2.0);
  const bool drop = p.back().value < p.front().value;
  return {trend && drop, "P(O_n(q)/a_n > 0.1) at q = 2,4,8,16: " + estimates(p) +
                             (trend ? "" : " [not nonincreasing]") + (drop ? "" : " [final not below first]")};
}

Outcome marginal() {
  auto cfg = base(0.8);
  cfg.reps = 2000;
  cfg.n_grid = {16384};
  cfg.t_grid = {-2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0};
  const auto rows = marginal_cf_check(cfg);
  const double tolerance = 4.0 / std::sqrt(2000.0) + 0.02;
  double worst = 0.0;
  for (const auto& row : rows) worst = std::max(worst, row.discrepancy);
  bool cf_ok = worst <= tolerance;

  // Exponent self-checks.
  bool zero = true;
  double hermitian = 0.0;
  double scaling = 0.0;
  for (const double alpha : {0.5, 0.8, 1.0, 1.5}) {
    for (const double p : {0.5, 0.2, 0.9}) {
      if (alpha == 1.0 && p != 0.5) continue;
      const auto triple = levy_triple(make_tail_model(alpha, p));
      zero = zero && lk_exponent(triple, 0.0) == std::complex<double>(0.0, 0.0);
      for (const double t : {0.25, 0.5, 1.0, 2.0, 5.0}) {
        hermitian = std::max(hermitian, std::abs(lk_exponent(triple, -t) - std::conj(lk_exponent(triple, t))));
      }
      if (p != 0.5) continue;
      for (const double t : {0.5, 1.0, 2.0}) {
        for (const double c : {2.0, 3.0}) {
          scaling = std::max(scaling, std::abs(lk_exponent(triple, c * t) - std::pow(c, alpha) * lk_exponent(triple, t)));
        }
      }
    }
  }
  const bool self_ok = zero && hermitian <= 1e-8 && scaling <= 1e-6;
  return {cf_ok && self_ok, "max |cf_n - exp(psi)| " + fmt(worst) + " (tolerance " + fmt(tolerance) +
                                "); psi(0) " + (zero ? "exact" : "nonzero") + ", hermitian " + fmt(hermitian) +
                                ", scaling " + fmt(scaling)};
}

Outcome functional() {
  auto cfg = base(0.8);
  cfg.reps = 1000;
  cfg.n_grid = {256, 16384};
  cfg.n_big = 65536;
  cfg.functional = Functional::supremum;
  const auto rows = functional_convergence(cfg);
  const auto& small = rows.front();
  const auto& large = rows.back();
  const bool below = large.ks < large.critical;
  const bool improves = large.ks < small.ks;
  return {below && improves, "KS(2^8) " + fmt(small.ks) + ", KS(2^14) " + fmt(large.ks) + ", 1% critical " +
                                 fmt(large.critical)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const fs::path& workdir) {
  auto cfg = base(1.5);
  cfg.p = 0.7;
  cfg.reps = 200;
  cfg.n_grid = {256, 2048};
  cfg.q_grid = {1, 2, 4};
  cfg.past_window = 200;
  cfg.n_big = 4096;
  std::vector<std::string> names{"slutsky", "truncation", "marginal", "functional", "identity"};
  std::vector<unsigned> jobs{1, 2, 4};
  std::string mismatched;
  std::size_t compared = 0;
  fs::remove_all(workdir);
  fs::create_directories(workdir);
#ifdef M2MA_HAVE_CLI
  {
    std::ofstream(workdir / "run.cfg") << echo_config(cfg);
  }
  for (const auto& name : names) {
    std::vector<std::string> reference;
    for (const unsigned j : jobs) {
      const auto dir = workdir / ("jobs" + std::to_string(j));
      std::ostringstream out;
      std::ostringstream err;
      const int code = cli::run({"experiment", name, "--config", (workdir / "run.cfg").string(), "--out", dir.string(),
                                 "--jobs", std::to_string(j), "--force"},
                                out, err);
      if (code != 0) return {false, name + " exited " + std::to_string(code) + ": " + err.str()};
      std::vector<std::string> files{slurp(dir / (name + ".csv")), slurp(dir / (name + ".json"))};
      if (fs::exists(dir / (name + "_plot.csv"))) files.push_back(slurp(dir / (name + "_plot.csv")));
      if (reference.empty()) {
        reference = files;
      } else {
        compared += files.size();
        if (files != reference) mismatched += " " + name + "@jobs" + std::to_string(j);
      }
    }
  }
  const std::string how = "via the command line";
#else
  for (const auto& name : names) {
    std::vector<std::string> reference;
    for (const unsigned j : jobs) {
      Table table;
      if (name == "slutsky") table = to_table(slutsky_gap(cfg, j));
      else if (name == "truncation") table = to_table(truncation_decay(cfg, j));
      else if (name == "marginal") table = to_table(marginal_cf_check(cfg, j));
      else if (name == "functional") table = to_table(functional_convergence(cfg, j));
      else table = to_table(identity_fuzz(cfg));
      std::vector<std::string> files{to_csv(table), to_json(table, name, cfg)};
      if (reference.empty()) {
        reference = files;
      } else {
        compared += files.size();
        if (files != reference) mismatched += " " + name + "@jobs" + std::to_string(j);
      }
    }
  }
  const std::string how = "via the library";
#endif
  if (!mismatched.empty()) return {false, "reports differ:" + mismatched};
  return {true, "5 experiments at jobs 1, 2, 4 " + how + "; " + std::to_string(compared) +
                    " report files byte-identical to the jobs=1 run"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"m2ma acceptance run"};
  std::string workdir = "acceptance_work";
  app.add_option("--workdir", workdir, "Scratch directory for report files");
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    const char* label;
    double budget_seconds;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {"coupling identities exact", 10.0, identities},
      {"M2 metric correctness", 60.0, metric_checks},
      {"normalization exactness", 0.0, normalization},
      {"Slutsky gap shrinks", 600.0, slutsky},
      {"truncation decay", 300.0, truncation},
      {"marginal law and exponent checks", 0.0, marginal},
      {"functional convergence", 0.0, functional},
      {"determinism across --jobs", 0.0, [&] { return determinism(workdir); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::string timing = fmt(elapsed.count()) + "s";
    if (c.budget_seconds > 0.0) {
      timing += " of " + fmt(c.budget_seconds) + "s";
      if (elapsed.count() > c.budget_seconds) {
        outcome.pass = false;
        outcome.detail += " [over time budget]";
      }
    }
    failed += !outcome.pass;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << c.label << ": " << outcome.detail
              << " (" << timing << ")" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
