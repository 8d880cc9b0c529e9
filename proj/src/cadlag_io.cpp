#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

#include "m2ma/cadlag.hpp"
#include "m2ma/format.hpp"

namespace m2ma {

namespace {

double parse_field(std::string_view field, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  double value = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw std::invalid_argument("path csv line " + std::to_string(line) + ": bad number '" +
                                std::string(field) + "'");
  }
  return value;
}

}  // namespace

void write_csv(std::ostream& out, const StepFunction& x) {
  out << "t,value\n";
  out << "0," << format_double(x.initial()) << '\n';
  const auto times = x.jump_times();
  const auto values = x.values();
  for (std::size_t k = 0; k < times.size(); ++k) {
    out << format_double(times[k]) << ',' << format_double(values[k + 1]) << '\n';
  }
}

StepFunction read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("path csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,value") throw std::invalid_argument("path csv: expected header 't,value'");

  std::vector<double> times;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("path csv line " + std::to_string(line_no) + ": expected t,value");
    }
    const std::string_view view(line);
    const double t = parse_field(view.substr(0, comma), line_no);
    const double v = parse_field(view.substr(comma + 1), line_no);
    if (values.empty()) {
      if (t != 0.0) throw std::invalid_argument("path csv: first row must be at t = 0");
    } else {
      times.push_back(t);
    }
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("path csv: no rows");
  return StepFunction(std::move(times), std::move(values));
}

std::string to_csv(const StepFunction& x) {
  std::ostringstream out;
  write_csv(out, x);
  return out.str();
}

StepFunction from_csv(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

void save_csv(const std::filesystem::path& path, const StepFunction& x) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(out, x);
}

StepFunction load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace m2ma
