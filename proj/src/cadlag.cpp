#include "m2ma/cadlag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace m2ma {

StepFunction::StepFunction(double constant) : values_{constant} {
  if (!std::isfinite(constant)) {
    throw std::invalid_argument("StepFunction: value must be finite");
  }
}

StepFunction::StepFunction(std::vector<double> jump_times, std::vector<double> values) {
  if (values.size() != jump_times.size() + 1) {
    throw std::invalid_argument("StepFunction: need exactly one more value than jump times");
  }
  double previous = 0.0;
  for (std::size_t k = 0; k < jump_times.size(); ++k) {
    const double t = jump_times[k];
    if (!(t > 0.0 && t <= 1.0)) {
      throw std::invalid_argument("StepFunction: jump time " + std::to_string(t) +
                                  " outside (0, 1]");
    }
    if (!(t > previous)) {
      throw std::invalid_argument("StepFunction: jump times must be strictly increasing");
    }
    previous = t;
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("StepFunction: values must be finite");
  }

  times_.reserve(jump_times.size());
  values_.reserve(values.size());
  values_.push_back(values.front());
  for (std::size_t k = 0; k < jump_times.size(); ++k) {
    if (values[k + 1] == values_.back()) continue;
    times_.push_back(jump_times[k]);
    values_.push_back(values[k + 1]);
  }
}

double StepFunction::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("StepFunction: t outside [0, 1]");
  const auto k = std::upper_bound(times_.begin(), times_.end(), t) - times_.begin();
  return values_[static_cast<std::size_t>(k)];
}

double StepFunction::left_limit(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("StepFunction: t outside [0, 1]");
  const auto k = std::lower_bound(times_.begin(), times_.end(), t) - times_.begin();
  return values_[static_cast<std::size_t>(k)];
}

StepFunction partial_sum_path(std::span<const double> y, double scale, double drift) {
  if (y.empty()) throw std::invalid_argument("partial_sum_path: empty sequence");
  if (!(scale > 0.0)) throw std::invalid_argument("partial_sum_path: scale must be positive");
  const std::size_t n = y.size();
  std::vector<double> times(n);
  std::vector<double> values(n + 1);
  values[0] = 0.0;
  double sum = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    sum += y[i - 1];
    times[i - 1] = static_cast<double>(i) / static_cast<double>(n);
    values[i] = partial_sum_value(sum, i, drift, scale);
  }
  return StepFunction(std::move(times), std::move(values));
}

double Segment::length() const noexcept {
  return std::abs(to.t - from.t) + std::abs(to.z - from.z);
}

CompletedGraph::CompletedGraph(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("CompletedGraph: no segments");
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    if (!(segments_[i].from == segments_[i - 1].to)) {
      throw std::invalid_argument("CompletedGraph: segments are not connected");
    }
  }
}

CompletedGraph completed_graph(const StepFunction& x) {
  std::vector<Segment> segments;
  segments.reserve(2 * x.piece_count());
  const auto times = x.jump_times();
  const auto values = x.values();
  double t = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    segments.push_back({{t, values[k]}, {times[k], values[k]}});
    segments.push_back({{times[k], values[k]}, {times[k], values[k + 1]}});
    t = times[k];
  }
  if (t < 1.0) segments.push_back({{t, values.back()}, {1.0, values.back()}});
  return CompletedGraph(std::move(segments));
}

double uniform_distance(const StepFunction& x1, const StepFunction& x2) {
  const auto t1 = x1.jump_times();
  const auto t2 = x2.jump_times();
  const auto v1 = x1.values();
  const auto v2 = x2.values();
  std::size_t i = 0;
  std::size_t j = 0;
  double best = std::abs(v1[0] - v2[0]);
  while (i < t1.size() || j < t2.size()) {
    const double next1 = i < t1.size() ? t1[i] : 2.0;
    const double next2 = j < t2.size() ? t2[j] : 2.0;
    const double t = std::min(next1, next2);
    if (next1 == t) ++i;
    if (next2 == t) ++j;
    best = std::max(best, std::abs(v1[i] - v2[j]));
  }
  return best;
}

double sup_functional(const StepFunction& x) {
  const auto v = x.values();
  return *std::max_element(v.begin(), v.end());
}

}  // namespace m2ma
