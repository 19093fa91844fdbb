#pragma once

#include <stdexcept>
#include <string>

namespace stumplab {

// The four interval kinds on the nonnegative reals:
// oo = (lo, hi), oc = (lo, hi], co = [lo, hi), cc = [lo, hi].
enum class IntervalKind { oo, oc, co, cc };

struct Interval {
  IntervalKind kind;
  double lo;
  double hi;
};

constexpr Interval interval_oo(double lo, double hi) { return {IntervalKind::oo, lo, hi}; }
constexpr Interval interval_oc(double lo, double hi) { return {IntervalKind::oc, lo, hi}; }
constexpr Interval interval_co(double lo, double hi) { return {IntervalKind::co, lo, hi}; }
constexpr Interval interval_cc(double lo, double hi) { return {IntervalKind::cc, lo, hi}; }

inline void check_interval(const Interval& iv) {
  if (!(iv.lo >= 0.0) || !(iv.hi >= 0.0))
    throw std::invalid_argument("interval endpoints must be nonnegative (lo = " +
                                std::to_string(iv.lo) + ", hi = " + std::to_string(iv.hi) + ")");
  if (!(iv.lo <= iv.hi))
    throw std::invalid_argument("interval has lo > hi (lo = " + std::to_string(iv.lo) +
                                ", hi = " + std::to_string(iv.hi) + ")");
}

}  // namespace stumplab
