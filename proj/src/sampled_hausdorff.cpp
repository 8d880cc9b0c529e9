#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "m2ma/cadlag.hpp"

namespace m2ma {

namespace {

std::vector<Point> graph_net(const CompletedGraph& graph, double h) {
  std::vector<Point> net;
  net.push_back(graph[0].from);
  for (const Segment& s : graph.segments()) {
    const double steps = std::max(1.0, std::ceil(s.length() / h));
    const auto m = static_cast<std::size_t>(steps);
    for (std::size_t i = 1; i <= m; ++i) {
      const double f = static_cast<double>(i) / steps;
      net.push_back({s.from.t + f * (s.to.t - s.from.t), s.from.z + f * (s.to.z - s.from.z)});
    }
  }
  return net;
}

double chebyshev(const Point& p, const Point& q) noexcept {
  return std::max(std::abs(p.t - q.t), std::abs(p.z - q.z));
}

// Static 2-d tree answering nearest-neighbour distance queries in the max norm.
class ChebyshevTree {
 public:
  explicit ChebyshevTree(std::vector<Point> points) : points_(std::move(points)) {
    build(0, points_.size(), 0);
  }

  double nearest(const Point& q) const {
    double best = std::numeric_limits<double>::infinity();
    search(q, 0, points_.size(), 0, best);
    return best;
  }

 private:
  static double coord(const Point& p, int axis) noexcept { return axis == 0 ? p.t : p.z; }

  void build(std::size_t lo, std::size_t hi, int axis) {
    if (hi - lo <= kLeaf) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(points_.begin() + static_cast<std::ptrdiff_t>(lo),
                     points_.begin() + static_cast<std::ptrdiff_t>(mid),
                     points_.begin() + static_cast<std::ptrdiff_t>(hi),
                     [axis](const Point& a, const Point& b) { return coord(a, axis) < coord(b, axis); });
    build(lo, mid, 1 - axis);
    build(mid + 1, hi, 1 - axis);
  }

  void search(const Point& q, std::size_t lo, std::size_t hi, int axis, double& best) const {
    if (hi - lo <= kLeaf) {
      for (std::size_t i = lo; i < hi; ++i) best = std::min(best, chebyshev(q, points_[i]));
      return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    const Point& pivot = points_[mid];
    best = std::min(best, chebyshev(q, pivot));
    const double diff = coord(q, axis) - coord(pivot, axis);
    if (diff < 0.0) {
      search(q, lo, mid, 1 - axis, best);
      if (-diff < best) search(q, mid + 1, hi, 1 - axis, best);
    } else {
      search(q, mid + 1, hi, 1 - axis, best);
      if (diff < best) search(q, lo, mid, 1 - axis, best);
    }
  }

  static constexpr std::size_t kLeaf = 8;
  std::vector<Point> points_;
};

double directed(const std::vector<Point>& from, const ChebyshevTree& to) {
  double worst = 0.0;
  for (const Point& p : from) worst = std::max(worst, to.nearest(p));
  return worst;
}

}  // namespace

double sampled_hausdorff(const StepFunction& x1, const StepFunction& x2, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("sampled_hausdorff: h must be positive");
  const auto net1 = graph_net(completed_graph(x1), h);
  const auto net2 = graph_net(completed_graph(x2), h);
  const ChebyshevTree tree1(net1);
  const ChebyshevTree tree2(net2);
  return std::max(directed(net1, tree2), directed(net2, tree1));
}

}  // namespace m2ma
