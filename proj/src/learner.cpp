#include "stumplab/learner.hpp"

#include <algorithm>
#include <stdexcept>

namespace stumplab {

LabeledExample label(Threshold target, double x) { return {x, x <= target.value}; }

std::vector<LabeledExample> label_sample(Threshold target, std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("label_sample: empty sample");
  std::vector<LabeledExample> labeled;
  labeled.reserve(xs.size());
  for (double x : xs) labeled.push_back(label(target, x));
  return labeled;
}

std::vector<double> filter(std::span<const LabeledExample> labeled) {
  if (labeled.empty()) throw std::invalid_argument("filter: empty sample");
  std::vector<double> mapped;
  mapped.reserve(labeled.size());
  for (const auto& ex : labeled) mapped.push_back(ex.label ? ex.point : 0.0);
  return mapped;
}

Threshold choose(std::span<const LabeledExample> labeled) {
  if (labeled.empty()) throw std::invalid_argument("choose: empty sample");
  const std::vector<double> mapped = filter(labeled);
  return Threshold{*std::max_element(mapped.begin(), mapped.end())};
}

double error(const Distribution& dist, Threshold target, Threshold h) {
  const double lo = std::min(h.value, target.value);
  const double hi = std::max(h.value, target.value);
  return measure_interval(dist, interval_oc(lo, hi));
}

}  // namespace stumplab
