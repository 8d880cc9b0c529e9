#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace m2ma {

/**
 * A right-continuous piecewise-constant path on [0, 1].
 *
 * values()[0] holds on [0, t_1), values()[k] on [t_k, t_{k+1}) and the last
 * value on [t_m, 1]. Jump times are strictly increasing in (0, 1]; adjacent
 * equal values are merged at construction so every stored jump has nonzero
 * height. The left limit at 0 is taken to be x(0).
 */
class StepFunction {
 public:
  explicit StepFunction(double constant = 0.0);

  /// Throws std::invalid_argument if values.size() != jump_times.size() + 1,
  /// a jump time lies outside (0, 1], jump times repeat or decrease, or any
  /// coordinate is not finite.
  StepFunction(std::vector<double> jump_times, std::vector<double> values);

  std::span<const double> jump_times() const noexcept { return times_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t jump_count() const noexcept { return times_.size(); }

  /// Constancy pieces: piece k occupies the closed interval
  /// [piece_start(k), piece_end(k)] at height values()[k]. The final piece is
  /// degenerate ([1, 1]) when the last jump happens at t = 1.
  std::size_t piece_count() const noexcept { return values_.size(); }
  double piece_start(std::size_t k) const noexcept { return k == 0 ? 0.0 : times_[k - 1]; }
  double piece_end(std::size_t k) const noexcept { return k < times_.size() ? times_[k] : 1.0; }

  double operator()(double t) const;
  double left_limit(double t) const;
  double initial() const noexcept { return values_.front(); }
  double terminal() const noexcept { return values_.back(); }

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

/// x(t) = (sum_{i <= floor(n t)} y_i - floor(n t) drift) / scale, with jumps
/// at i / n. Requires a nonempty y and scale > 0.
StepFunction partial_sum_path(std::span<const double> y, double scale, double drift);

/// The value the partial-sum path takes after `count` increments whose raw sum
/// is `running_sum`. Shared by every code path that evaluates such paths.
inline double partial_sum_value(double running_sum, std::size_t count, double drift,
                                double scale) noexcept {
  return (running_sum - static_cast<double>(count) * drift) / scale;
}

struct Point {
  double t;
  double z;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Segment {
  Point from;
  Point to;
  bool vertical() const noexcept { return from.t == to.t && from.z != to.z; }
  double length() const noexcept;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Completed graph: the graph of x together with the vertical segments that
/// bridge every jump, as a connected chain from (0, x(0)) to (1, x(1)).
class CompletedGraph {
 public:
  explicit CompletedGraph(std::vector<Segment> segments);
  std::span<const Segment> segments() const noexcept { return segments_; }
  std::size_t size() const noexcept { return segments_.size(); }
  const Segment& operator[](std::size_t i) const noexcept { return segments_[i]; }

 private:
  std::vector<Segment> segments_;
};

CompletedGraph completed_graph(const StepFunction& x);

/// Hausdorff distance between completed graphs under the max-norm point
/// metric |t1 - t2| v |z1 - z2|. Exact up to rounding.
double m2_distance(const StepFunction& x1, const StepFunction& x2);

/// sup over a in graph(source) of inf over b in graph(target) of d(a, b).
double directed_m2_distance(const StepFunction& source, const StepFunction& target);

/// sup_t |x1(t) - x2(t)|.
double uniform_distance(const StepFunction& x1, const StepFunction& x2);

/// Hausdorff distance between h-nets of the two completed graphs. Each graph
/// point lies within h/2 of its net, so the result is within h of the exact
/// value. Independent of m2_distance; used to check it.
double sampled_hausdorff(const StepFunction& x1, const StepFunction& x2, double h);

/// Largest spatial coordinate of the completed graph.
double sup_functional(const StepFunction& x);

// CSV with header "t,value": first row (0, x(0)), then one row per jump
// (t_k, x(t_k)). Values are written in shortest round-trip form.
void write_csv(std::ostream& out, const StepFunction& x);
StepFunction read_csv(std::istream& in);
std::string to_csv(const StepFunction& x);
StepFunction from_csv(const std::string& text);
void save_csv(const std::filesystem::path& path, const StepFunction& x);
StepFunction load_csv(const std::filesystem::path& path);

}  // namespace m2ma
