#include "m2ma/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "m2ma/format.hpp"

namespace m2ma {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = value.find(',', start);
    items.push_back(trim(std::string_view(value).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

struct Entry {
  std::size_t line;
  std::string value;
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::size_t line(const std::string& key) const { return has(key) ? entries_.at(key).line : 0; }
  const std::string& text(const std::string& key) const { return entries_.at(key).value; }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    throw ConfigError(line(key), key, message);
  }

  double real(const std::string& key, const std::string& item) const {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size() || !std::isfinite(value)) {
      fail(key, "expected a real number, got '" + item + "'");
    }
    return value;
  }

  template <class Int>
  Int integer(const std::string& key, const std::string& item) const {
    Int value = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      fail(key, "expected an integer, got '" + item + "'");
    }
    return value;
  }

  double real(const std::string& key) const { return real(key, text(key)); }
  template <class Int>
  Int integer(const std::string& key) const {
    return integer<Int>(key, text(key));
  }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_list(text(key))) out.push_back(real(key, item));
    return out;
  }

  std::vector<std::int64_t> integers(const std::string& key) const {
    std::vector<std::int64_t> out;
    for (const auto& item : split_list(text(key))) out.push_back(integer<std::int64_t>(key, item));
    return out;
  }

  bool boolean(const std::string& key) const {
    const auto& v = text(key);
    if (v == "true") return true;
    if (v == "false") return false;
    fail(key, "expected true or false, got '" + v + "'");
  }

 private:
  std::map<std::string, Entry> entries_;
};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "alpha", "p", "coeffs", "coeff_family", "coeffs_file", "delta", "n_grid",
      "q_grid", "reps", "epsilon", "seed", "past_window", "t_grid", "n_big",
      "functional", "allow_invalid_coeffs"};
  return keys;
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += format_double(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::size_t line, std::string key, const std::string& message)
    : std::runtime_error((line > 0 ? "config line " + std::to_string(line) + ": " : "config: ") +
                         key + ": " + message),
      line_(line),
      key_(std::move(key)) {}

TailModel ExperimentConfig::model() const { return make_tail_model(alpha, p); }

Coefficients ExperimentConfig::coefficients() const {
  if (family) {
    throw std::invalid_argument("this experiment needs a finite coefficient list, not coeff_family");
  }
  return allow_invalid_coeffs ? Coefficients::unchecked(coeffs) : Coefficients(coeffs);
}

InfiniteCoefficients ExperimentConfig::infinite() const {
  return family ? make_family(*family) : InfiniteCoefficients::finite(coeffs);
}

CoefficientFamily parse_family(const std::string& text) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open ||
      trim(std::string_view(text).substr(close + 1)) != "") {
    throw std::invalid_argument("expected name(params), got '" + text + "'");
  }
  CoefficientFamily family{trim(std::string_view(text).substr(0, open)), {}};
  for (const auto& item : split_list(text.substr(open + 1, close - open - 1))) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw std::invalid_argument("bad family parameter '" + item + "'");
    }
    family.params.push_back(value);
  }
  make_family(family);
  return family;
}

InfiniteCoefficients make_family(const CoefficientFamily& family) {
  if (family.name == "geometric") {
    if (family.params.size() != 1) throw std::invalid_argument("geometric takes one parameter (rho)");
    return InfiniteCoefficients::geometric(family.params[0]);
  }
  if (family.name == "polynomial") {
    if (family.params.size() != 2) {
      throw std::invalid_argument("polynomial takes two parameters (c, exponent)");
    }
    return InfiniteCoefficients::polynomial(family.params[0], family.params[1]);
  }
  throw std::invalid_argument("unknown family '" + family.name + "' (geometric or polynomial)");
}

std::string format_family(const CoefficientFamily& family) {
  return family.name + "(" + join(family.params) + ")";
}

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  std::map<std::string, Entry> entries;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line_no, trim(line), "expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!known_keys().count(key)) throw ConfigError(line_no, key, "unknown key");
    if (entries.count(key)) {
      throw ConfigError(line_no, key, "repeated (first set on line " +
                                          std::to_string(entries[key].line) + ")");
    }
    if (value.empty()) throw ConfigError(line_no, key, "missing value");
    entries[key] = {line_no, value};
  }
  const Reader r(std::move(entries));

  ExperimentConfig cfg;
  if (!r.has("alpha")) throw ConfigError(0, "alpha", "required key is missing");
  cfg.alpha = r.real("alpha");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 2.0)) r.fail("alpha", "must lie in (0, 2), got " + r.text("alpha"));
  if (r.has("p")) cfg.p = r.real("p");
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) r.fail("p", "must lie in [0, 1]");
  if (cfg.alpha == 1.0 && cfg.p != 0.5) {
    r.fail(r.has("p") ? "p" : "alpha",
           "alpha = 1 requires a symmetric noise law (p = 1/2); the limit theorem assumes symmetry there");
  }

  if (r.has("allow_invalid_coeffs")) cfg.allow_invalid_coeffs = r.boolean("allow_invalid_coeffs");

  const int sources = static_cast<int>(r.has("coeffs")) + static_cast<int>(r.has("coeff_family")) +
                      static_cast<int>(r.has("coeffs_file"));
  if (sources > 1) {
    const std::string key = r.has("coeffs_file") ? "coeffs_file" : "coeff_family";
    r.fail(key, "give only one of coeffs, coeff_family, coeffs_file");
  }
  auto check_finite = [&](const std::string& key) {
    try {
      if (auto violation = validate_coefficients(cfg.coeffs); violation && !cfg.allow_invalid_coeffs) {
        r.fail(key, violation->describe());
      }
    } catch (const std::invalid_argument& e) {
      r.fail(key, e.what());
    }
  };
  if (r.has("coeffs")) {
    cfg.coeffs = r.reals("coeffs");
    check_finite("coeffs");
  } else if (r.has("coeffs_file")) {
    const std::filesystem::path file = base_dir / r.text("coeffs_file");
    try {
      cfg.coeffs = load_coefficient_file(file.string());
    } catch (const std::exception& e) {
      r.fail("coeffs_file", e.what());
    }
    check_finite("coeffs_file");
  } else if (r.has("coeff_family")) {
    try {
      cfg.family = parse_family(r.text("coeff_family"));
    } catch (const std::exception& e) {
      r.fail("coeff_family", e.what());
    }
    cfg.coeffs.clear();
  }

  if (r.has("n_grid")) cfg.n_grid = r.integers("n_grid");
  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    if (cfg.n_grid[i] < 1) r.fail("n_grid", "entries must be at least 1");
    if (i > 0 && cfg.n_grid[i] <= cfg.n_grid[i - 1]) r.fail("n_grid", "must be strictly ascending");
  }
  if (r.has("q_grid")) cfg.q_grid = r.integers("q_grid");
  for (auto q : cfg.q_grid) {
    if (q < 1) r.fail("q_grid", "entries must be at least 1");
  }
  if (r.has("reps")) cfg.reps = r.integer<std::int64_t>("reps");
  if (cfg.reps < 1) r.fail("reps", "must be at least 1");
  if (r.has("epsilon")) cfg.epsilon = r.real("epsilon");
  if (!(cfg.epsilon > 0.0)) r.fail("epsilon", "must be positive");
  if (r.has("seed")) cfg.seed = r.integer<std::uint64_t>("seed");
  if (r.has("past_window")) cfg.past_window = r.integer<std::int64_t>("past_window");
  if (cfg.past_window < 1) r.fail("past_window", "must be at least 1");
  if (r.has("t_grid")) cfg.t_grid = r.reals("t_grid");
  if (r.has("n_big")) cfg.n_big = r.integer<std::int64_t>("n_big");
  if (cfg.n_big < 1) r.fail("n_big", "must be at least 1");
  if (r.has("functional")) {
    try {
      cfg.functional = parse_functional(r.text("functional"));
    } catch (const std::invalid_argument& e) {
      r.fail("functional", e.what());
    }
  }

  if (r.has("delta")) {
    cfg.delta = r.real("delta");
    const double cap = std::min(1.0, cfg.alpha);
    if (!(*cfg.delta > 0.0 && *cfg.delta < cap)) r.fail("delta", "must lie in (0, min(1, alpha))");
    if (!cfg.infinite().delta_summable(*cfg.delta)) {
      r.fail("delta", "sum |phi_j|^delta diverges for this coefficient family");
    }
  }
  if (cfg.family) {
    const std::string key = "coeff_family";
    if (!cfg.delta && !cfg.infinite().admissible_delta(cfg.alpha)) {
      r.fail(key, "no delta in (0, min(1, alpha)) makes sum |phi_j|^delta finite");
    }
    for (auto q : cfg.q_grid) {
      try {
        const auto phis = truncation_vector(cfg.infinite(), static_cast<std::size_t>(q));
        if (auto violation = validate_coefficients(phis); violation && !cfg.allow_invalid_coeffs) {
          r.fail(key, "truncation at q=" + std::to_string(q) + ": " + violation->describe());
        }
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        r.fail(key, e.what());
      }
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigUnreadable("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw ConfigUnreadable("cannot read config file " + path.string());
  return parse_config(text.str(), path.parent_path());
}

std::string echo_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "alpha = " << format_double(c.alpha) << '\n';
  out << "p = " << format_double(c.p) << '\n';
  if (c.family) {
    out << "coeff_family = " << format_family(*c.family) << '\n';
  } else {
    out << "coeffs = " << join(c.coeffs) << '\n';
  }
  if (c.delta) out << "delta = " << format_double(*c.delta) << '\n';
  out << "n_grid = " << join(c.n_grid) << '\n';
  out << "q_grid = " << join(c.q_grid) << '\n';
  out << "reps = " << c.reps << '\n';
  out << "epsilon = " << format_double(c.epsilon) << '\n';
  out << "seed = " << c.seed << '\n';
  out << "past_window = " << c.past_window << '\n';
  out << "t_grid = " << join(c.t_grid) << '\n';
  out << "n_big = " << c.n_big << '\n';
  out << "functional = " << to_string(c.functional) << '\n';
  out << "allow_invalid_coeffs = " << (c.allow_invalid_coeffs ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace m2ma
