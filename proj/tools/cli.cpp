#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "m2ma/cadlag.hpp"
#include "m2ma/config.hpp"
#include "m2ma/format.hpp"
#include "m2ma/ma.hpp"
#include "m2ma/mc.hpp"
#include "m2ma/report.hpp"
#include "m2ma/seeding.hpp"

namespace m2ma::cli {
namespace {

namespace fs = std::filesystem;

// A named input file that could not be opened.
class InputUnreadable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string out = ".";
  std::optional<Seed> seed;
  unsigned jobs = 1;
  bool force = false;
};

ExperimentConfig load(const Options& opts) {
  if (opts.config.empty()) throw CLI::RequiredError("--config");
  auto cfg = load_config(opts.config);
  if (opts.seed) cfg.seed = *opts.seed;
  return cfg;
}

void require_readable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputUnreadable("cannot open " + path);
}

int simulate(const Options& opts, std::ostream& out) {
  const auto cfg = load(opts);
  if (cfg.family) throw std::invalid_argument("simulate needs a finite filter (coeffs or coeffs_file)");
  const std::int64_t n = cfg.n_grid.front();
  const auto paths = build_paths(cfg.model(), cfg.coefficients(), n, derive_seed(cfg.seed, {key(Stream::simulate)}));

  const fs::path dir(opts.out);
  const fs::path vn = dir / "vn.csv";
  const fs::path vnz = dir / "vnz.csv";
  if (!opts.force) {
    for (const auto& p : {vn, vnz}) {
      if (fs::exists(p)) throw ReportExists(p.string() + " exists (use --force to overwrite)");
    }
  }
  fs::create_directories(dir);
  save_csv(vn, paths.vn);
  save_csv(vnz, paths.vnz);
  out << "n " << n << "\n"
      << "m2 " << format_double(m2_distance(paths.vnz, paths.vn)) << "\n"
      << "uniform " << format_double(uniform_distance(paths.vnz, paths.vn)) << "\n"
      << "wrote " << vn.string() << "\n"
      << "wrote " << vnz.string() << "\n";
  return kOk;
}

int metric(const std::string& a_path, const std::string& b_path, std::ostream& out) {
  require_readable(a_path);
  require_readable(b_path);
  const auto a = load_csv(a_path);
  const auto b = load_csv(b_path);
  out << "m2 " << format_double(m2_distance(a, b)) << "\n"
      << "uniform " << format_double(uniform_distance(a, b)) << "\n";
  return kOk;
}

Table run_experiment(const std::string& name, const ExperimentConfig& cfg, unsigned jobs) {
  if (name == "slutsky") return to_table(slutsky_gap(cfg, jobs));
  if (name == "truncation") return to_table(truncation_decay(cfg, jobs));
  if (name == "marginal") return to_table(marginal_cf_check(cfg, jobs));
  if (name == "functional") return to_table(functional_convergence(cfg, jobs));
  return to_table(identity_fuzz(cfg));
}

int experiment(const std::string& name, const Options& opts, std::ostream& out) {
  const auto cfg = load(opts);
  const auto start = std::chrono::steady_clock::now();
  const auto table = run_experiment(name, cfg, opts.jobs);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  for (const auto& p : write_report(opts.out, name, table, cfg, opts.force)) {
    out << "wrote " << p.string() << "\n";
  }
  write_run_info(opts.out, name, elapsed.count(), opts.jobs);
  return kOk;
}

int validate(const std::string& file, const Options& opts, std::ostream& out, std::ostream& err) {
  std::vector<std::vector<double>> filters;
  if (!file.empty()) {
    require_readable(file);
    filters.push_back(load_coefficient_file(file));
  } else if (!opts.config.empty()) {
    const auto cfg = load(opts);
    if (cfg.family) {
      const auto inf = cfg.infinite();
      for (const auto q : cfg.q_grid) filters.push_back(truncation_vector(inf, static_cast<std::size_t>(q)));
    } else {
      filters.push_back(cfg.coeffs);
    }
  } else {
    throw CLI::RequiredError("FILE or --config");
  }
  for (const auto& phis : filters) {
    if (const auto violation = validate_coefficients(phis)) {
      err << "error: " << violation->describe() << "\n";
      return kInvalid;
    }
  }
  out << "ok\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moving-average partial sums under the M2 metric", "m2ma"};
  app.set_version_flag("--version", library_version());
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  app.add_option("--config", opts.config, "Experiment config file");
  app.add_option("--out", opts.out, "Output directory")->capture_default_str();
  app.add_option("--seed", opts.seed, "Override the config seed");
  app.add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--force", opts.force, "Overwrite existing outputs");

  auto* sim = app.add_subcommand("simulate", "Write one coupled path pair (vn.csv, vnz.csv) at the first n");

  std::string a_path;
  std::string b_path;
  auto* met = app.add_subcommand("metric", "M2 and uniform distance between two path CSVs");
  met->add_option("a", a_path, "First path CSV")->required();
  met->add_option("b", b_path, "Second path CSV")->required();

  std::string name;
  auto* exp = app.add_subcommand("experiment", "Run a Monte Carlo experiment and write its report");
  exp->add_option("name", name, "slutsky | truncation | marginal | functional | identity")
      ->required()
      ->check(CLI::IsMember({"slutsky", "truncation", "marginal", "functional", "identity"}));

  std::string coeff_file;
  auto* val = app.add_subcommand("validate-coeffs", "Check a coefficient file (or the config filter)");
  val->add_option("file", coeff_file, "Coefficient file, one value per line or comma separated");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (sim->parsed()) return simulate(opts, out);
    if (met->parsed()) return metric(a_path, b_path, out);
    if (exp->parsed()) return experiment(name, opts, out);
    return validate(coeff_file, opts, out, err);
  } catch (const CLI::RequiredError& e) {
    err << "error: " << e.what() << " is required\n";
    return kUsage;
  } catch (const ConfigUnreadable& e) {
    err << "error: " << e.what() << "\n";
    return kNoInput;
  } catch (const InputUnreadable& e) {
    err << "error: " << e.what() << "\n";
    return kNoInput;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ReportExists& e) {
    err << "error: " << e.what() << "\n";
    return kCantCreate;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace m2ma::cli
