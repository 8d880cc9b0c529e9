// Exact Hausdorff distance between completed graphs of step functions.
//
// For a point (t, z) and a target path y, the max-norm distance to the
// completed graph is at most r iff z lies in [m - r, M + r], where m and M are
// the extreme values of y over pieces whose closed time interval meets
// [t - r, t + r] (the graph restricted to a vertical strip is connected).
// Hence d = max(d_above, d_below) with
//
//   d_above(t) = min_k max((z - y_k)^+, dist(t, I_k))
//   d_below(t) = min_k max((y_k - z)^+, dist(t, I_k)).
//
// The distance is quasiconvex in z along a vertical source segment, so the
// directed supremum is attained on the closed constancy pieces of the source.
// On one source piece [a, b] x {z}, with level costs c_k and
// S(theta) = union of I_k with c_k <= theta, the largest d over [a, b] is
//
//   min_j max(theta_j, reach(S(theta_j)))
//
// where theta_j runs over the distinct costs and reach(S) is
// max_{t in [a, b]} dist(t, S). reach is nonincreasing in theta, so the
// minimiser is found by bisection over the sorted costs. Only target pieces
// within the time window of an upper bound U can matter.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "m2ma/cadlag.hpp"

namespace m2ma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Side { above, below };

double level_cost(Side side, double z, double y) noexcept {
  return side == Side::above ? std::max(0.0, z - y) : std::max(0.0, y - z);
}

double point_to_interval(double t, double s, double e) noexcept {
  if (t < s) return s - t;
  if (t > e) return t - e;
  return 0.0;
}

class PieceReach {
 public:
  explicit PieceReach(const StepFunction& target) : target_(target) {}

  // Largest distance from {(t, z) : t in [a, b]} to the target graph, on one
  // side. Returns an upper bound no larger than `enough` as soon as one is
  // known, since callers only need values above it.
  double operator()(double a, double b, double z, Side side, double enough) {
    const auto times = target_.jump_times();
    const std::size_t last_piece = target_.piece_count() - 1;

    std::size_t lo = static_cast<std::size_t>(
        std::lower_bound(times.begin(), times.end(), a) - times.begin());
    std::size_t hi = static_cast<std::size_t>(
        std::upper_bound(times.begin(), times.end(), b) - times.begin());
    lo = std::min(lo, last_piece);
    hi = std::min(hi, last_piece);

    double bound = kInf;
    for (std::size_t k = lo; k <= hi; ++k) bound = std::min(bound, piece_bound(k, a, b, z, side));
    if (bound <= enough) return bound;

    while (true) {
      const double left_gap = lo > 0 ? a - target_.piece_end(lo - 1) : kInf;
      const double right_gap = hi < last_piece ? target_.piece_start(hi + 1) - b : kInf;
      if (std::min(left_gap, right_gap) > bound) break;
      if (left_gap <= right_gap) {
        --lo;
        bound = std::min(bound, piece_bound(lo, a, b, z, side));
      } else {
        ++hi;
        bound = std::min(bound, piece_bound(hi, a, b, z, side));
      }
      if (bound <= enough) return bound;
    }
    return exact(lo, hi, a, b, z, side);
  }

 private:
  double piece_bound(std::size_t k, double a, double b, double z, Side side) const noexcept {
    const double s = target_.piece_start(k);
    const double e = target_.piece_end(k);
    const double far = std::max(point_to_interval(a, s, e), point_to_interval(b, s, e));
    return std::max(level_cost(side, z, target_.values()[k]), far);
  }

  double exact(std::size_t lo, std::size_t hi, double a, double b, double z, Side side) {
    costs_.resize(hi - lo + 1);
    for (std::size_t k = lo; k <= hi; ++k) costs_[k - lo] = level_cost(side, z, target_.values()[k]);
    levels_ = costs_;
    std::sort(levels_.begin(), levels_.end());
    levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());

    // Smallest j with reach(theta_j) <= theta_j; the full window always
    // covers [a, b], so j = size - 1 qualifies.
    std::size_t first = 0;
    std::size_t last = levels_.size() - 1;
    while (first < last) {
      const std::size_t mid = first + (last - first) / 2;
      if (reach(lo, hi, a, b, levels_[mid]) <= levels_[mid]) {
        last = mid;
      } else {
        first = mid + 1;
      }
    }
    if (first == 0) return levels_[0];
    return std::min(levels_[first], reach(lo, hi, a, b, levels_[first - 1]));
  }

  // max over t in [a, b] of the distance from t to the union of window pieces
  // whose cost is at most theta.
  double reach(std::size_t lo, std::size_t hi, double a, double b, double theta) const {
    bool any = false;
    double worst = 0.0;
    double covered_to = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) {
      if (costs_[k - lo] > theta) continue;
      const double s = target_.piece_start(k);
      const double e = target_.piece_end(k);
      if (!any) {
        if (a < s) worst = std::max(worst, s - a);
        any = true;
        covered_to = e;
      } else if (s > covered_to) {
        const double from = std::max(a, covered_to);
        const double to = std::min(b, s);
        if (from <= to) {
          const double mid = std::clamp(0.5 * (covered_to + s), from, to);
          worst = std::max(worst, std::min(mid - covered_to, s - mid));
        }
        covered_to = e;
      } else {
        covered_to = std::max(covered_to, e);
      }
    }
    if (!any) return kInf;
    if (b > covered_to) worst = std::max(worst, b - covered_to);
    return worst;
  }

  const StepFunction& target_;
  std::vector<double> costs_;
  std::vector<double> levels_;
};

}  // namespace

double directed_m2_distance(const StepFunction& source, const StepFunction& target) {
  PieceReach reach(target);
  double best = 0.0;
  for (std::size_t k = 0; k < source.piece_count(); ++k) {
    const double a = source.piece_start(k);
    const double b = source.piece_end(k);
    const double z = source.values()[k];
    best = std::max(best, reach(a, b, z, Side::above, best));
    best = std::max(best, reach(a, b, z, Side::below, best));
  }
  return best;
}

double m2_distance(const StepFunction& x1, const StepFunction& x2) {
  return std::max(directed_m2_distance(x1, x2), directed_m2_distance(x2, x1));
}

}  // namespace m2ma
