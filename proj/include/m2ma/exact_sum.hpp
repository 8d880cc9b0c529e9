#pragma once

#include <cmath>
#include <vector>

namespace m2ma {

/**
 * Running sum of doubles kept as a list of non-overlapping partials
 * (Shewchuk), so value() is the correctly rounded exact sum. add_product
 * splits a*b into its rounded part and the exact error via fma.
 */
class ExactSum {
 public:
  void add(double x) {
    std::size_t i = 0;
    for (double y : partials_) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials_[i++] = lo;
      x = hi;
    }
    partials_.resize(i);
    partials_.push_back(x);
  }

  void add_product(double a, double b) {
    const double p = a * b;
    add(p);
    add(std::fma(a, b, -p));
  }

  ExactSum& operator+=(const ExactSum& other) {
    for (double x : other.partials_) add(x);
    return *this;
  }

  void negate() {
    for (double& x : partials_) x = -x;
  }

  double value() const {
    if (partials_.empty()) return 0.0;
    auto i = partials_.size() - 1;
    double hi = partials_[i];
    double lo = 0.0;
    while (i > 0) {
      const double x = hi;
      const double y = partials_[--i];
      hi = x + y;
      lo = y - (hi - x);
      if (lo != 0.0) break;
    }
    // Round half to even across the remaining partials.
    if (i > 0 && ((lo < 0.0 && partials_[i - 1] < 0.0) || (lo > 0.0 && partials_[i - 1] > 0.0))) {
      const double y = lo * 2.0;
      const double x = hi + y;
      if (y == x - hi) hi = x;
    }
    return hi;
  }

 private:
  std::vector<double> partials_;
};

}  // namespace m2ma
