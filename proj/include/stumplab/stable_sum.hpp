#pragma once

#include <cmath>

namespace stumplab {

// Neumaier compensated accumulator; keeps the rounding error of each partial
// sum in a running correction term.
class StableSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_{0.0};
  double comp_{0.0};
};

}  // namespace stumplab
