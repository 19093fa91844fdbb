#pragma once

#include <compare>
#include <span>
#include <vector>

#include "stumplab/distribution.hpp"

namespace stumplab {

// A stump is identified with its threshold: x is positive iff x <= value.
struct Threshold {
  double value{0.0};
  friend constexpr auto operator<=>(const Threshold&, const Threshold&) = default;
};

struct LabeledExample {
  double point;
  bool label;
  friend constexpr bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

// Positive iff x <= target; exact comparison, boundary inclusive.
LabeledExample label(Threshold target, double x);

// Pointwise labeling, order preserving; rejects an empty sample.
std::vector<LabeledExample> label_sample(Threshold target, std::span<const double> xs);

// Positives keep their point, negatives map to 0.
std::vector<double> filter(std::span<const LabeledExample> labeled);

// The training rule: the largest positively labeled point, 0 when there is
// none. Rejects an empty sample (no examples, as opposed to no positives).
Threshold choose(std::span<const LabeledExample> labeled);

// Generalization error: the mass of the half-open interval between the
// hypothesis and the target, mu(min(h,t), max(h,t)].
double error(const Distribution& dist, Threshold target, Threshold h);

}  // namespace stumplab
