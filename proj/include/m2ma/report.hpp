#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "m2ma/config.hpp"
#include "m2ma/mc.hpp"

namespace m2ma {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Rows of one experiment, ready for CSV and JSON output. plot names the
/// columns (x, estimate, stderr) of the plot-data file, if there is one.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::optional<std::vector<std::string>> plot;
};

Table to_table(const std::vector<SlutskyRow>& rows);
Table to_table(const std::vector<TruncationRow>& rows);
Table to_table(const std::vector<MarginalRow>& rows);
Table to_table(const std::vector<FunctionalRow>& rows);
Table to_table(const std::vector<IdentityRow>& rows);

std::string to_csv(const Table& table);
std::string plot_csv(const Table& table);
/// Experiment name, library version, config echo and rows. No timing, so
/// identical runs give identical bytes.
std::string to_json(const Table& table, const std::string& experiment, const ExperimentConfig& cfg);

class ReportExists : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes <name>.csv, <name>.json and <name>_plot.csv (when the table has a
/// plot) under dir, creating dir. Throws ReportExists if any target exists
/// and force is false. Returns the files written.
std::vector<std::filesystem::path> write_report(const std::filesystem::path& dir, const std::string& name,
                                                const Table& table, const ExperimentConfig& cfg,
                                                bool force);

/// Wall time and parallelism, kept apart from the reports.
void write_run_info(const std::filesystem::path& dir, const std::string& name, double seconds,
                    unsigned jobs);

const char* library_version() noexcept;

}  // namespace m2ma
