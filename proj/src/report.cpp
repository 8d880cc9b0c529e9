#include "m2ma/report.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "m2ma/format.hpp"

namespace m2ma {

namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  return std::get<std::string>(cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  return std::get<std::string>(cell);
}

std::size_t column_index(const Table& table, const std::string& name) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (table.columns[i] == name) return i;
  }
  throw std::logic_error("no column " + name);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

const char* library_version() noexcept { return "0.1.0"; }

Table to_table(const std::vector<SlutskyRow>& rows) {
  Table t{{"n", "reps", "p_m2", "p_m2_se", "p_unif", "p_unif_se", "mean_m2", "mean_m2_se",
           "mean_unif", "mean_unif_se"},
          {},
          std::vector<std::string>{"n", "p_m2", "p_m2_se"}};
  for (const auto& r : rows) {
    t.rows.push_back({r.n, r.reps, r.p_m2.value, r.p_m2.stderr_, r.p_unif.value, r.p_unif.stderr_,
                      r.mean_m2.value, r.mean_m2.stderr_, r.mean_unif.value, r.mean_unif.stderr_});
  }
  return t;
}

Table to_table(const std::vector<TruncationRow>& rows) {
  Table t{{"q", "n", "reps", "p_o", "p_o_se", "mean_residual", "mean_residual_se", "neglected_bound"},
          {},
          std::vector<std::string>{"q", "p_o", "p_o_se"}};
  for (const auto& r : rows) {
    t.rows.push_back({r.q, r.n, r.reps, r.p_o.value, r.p_o.stderr_, r.mean_residual.value,
                      r.mean_residual.stderr_, r.neglected_bound});
  }
  return t;
}

Table to_table(const std::vector<MarginalRow>& rows) {
  Table t{{"t", "n", "reps", "empirical_re", "empirical_im", "limit_re", "limit_im", "discrepancy",
           "radius"},
          {},
          std::vector<std::string>{"t", "discrepancy", "radius"}};
  for (const auto& r : rows) {
    t.rows.push_back({r.t, r.n, r.reps, r.empirical.real(), r.empirical.imag(), r.limit.real(),
                      r.limit.imag(), r.discrepancy, r.radius});
  }
  return t;
}

Table to_table(const std::vector<FunctionalRow>& rows) {
  Table t{{"n", "reps", "n_big", "ks", "critical_1pct"}, {}, std::nullopt};
  for (const auto& r : rows) t.rows.push_back({r.n, r.reps, r.n_big, r.ks, r.critical});
  return t;
}

Table to_table(const std::vector<IdentityRow>& rows) {
  Table t{{"case", "checked", "skipped", "max_discrepancy", "pass"}, {}, std::nullopt};
  for (const auto& r : rows) {
    t.rows.push_back({std::string(to_string(r.which)), r.checked, r.skipped, r.max_discrepancy,
                      std::string(r.pass ? "true" : "false")});
  }
  return t;
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
  return out.str();
}

std::string plot_csv(const Table& table) {
  if (!table.plot) throw std::logic_error("table has no plot columns");
  const auto& names = *table.plot;
  std::vector<std::size_t> index;
  for (const auto& name : names) index.push_back(column_index(table, name));
  std::ostringstream out;
  out << names[0] << ",estimate,stderr\n";
  for (const auto& row : table.rows) {
    out << cell_text(row[index[0]]) << ',' << cell_text(row[index[1]]) << ','
        << cell_text(row[index[2]]) << '\n';
  }
  return out.str();
}

std::string to_json(const Table& table, const std::string& experiment, const ExperimentConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["experiment"] = experiment;
  doc["version"] = library_version();
  doc["config"] = echo_config(cfg);
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_report(const std::filesystem::path& dir, const std::string& name,
                                                const Table& table, const ExperimentConfig& cfg,
                                                bool force) {
  std::vector<std::pair<std::filesystem::path, std::string>> files{
      {dir / (name + ".csv"), to_csv(table)}, {dir / (name + ".json"), to_json(table, name, cfg)}};
  if (table.plot) files.emplace_back(dir / (name + "_plot.csv"), plot_csv(table));
  if (!force) {
    for (const auto& [path, text] : files) {
      if (std::filesystem::exists(path)) {
        throw ReportExists(path.string() + " exists; pass --force to overwrite");
      }
    }
  }
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& [path, text] : files) {
    write_file(path, text);
    written.push_back(path);
  }
  return written;
}

void write_run_info(const std::filesystem::path& dir, const std::string& name, double seconds,
                    unsigned jobs) {
  nlohmann::ordered_json doc;
  doc["experiment"] = name;
  doc["wall_seconds"] = seconds;
  doc["jobs"] = jobs;
  std::filesystem::create_directories(dir);
  write_file(dir / (name + ".run.json"), doc.dump(2) + "\n");
}

}  // namespace m2ma
