#pragma once

// Shared randomized-mixture generators for the property suites. Snapped
// decimal locations (multiples of 0.1) are mixed with continuous draws so
// atoms, targets and interval endpoints collide exactly often enough to
// exercise the jump paths.

#include <optional>
#include <utility>
#include <vector>

#include "stumplab/distribution.hpp"
#include "stumplab/learner.hpp"
#include "stumplab/random.hpp"

namespace stumplab::testutil {

inline Distribution uniform01() {
  return Distribution({{1.0, UniformInterval{0.0, 1.0}}});
}

struct MixtureOptions {
  bool allow_exp = true;
  bool atoms_only = false;
  bool no_atoms = false;
  int max_components = 5;
};

inline double snapped_or_continuous(StreamRng& rng, double span) {
  if (rng.next_u64() % 2 == 0) return static_cast<double>(rng.next_u64() % 21) / 10.0;
  return rng.next_unit() * span;
}

inline Distribution random_mixture(StreamRng& rng, const MixtureOptions& opt = {}) {
  const int n = 1 + static_cast<int>(rng.next_u64() % opt.max_components);
  std::vector<WeightedComponent> comps;
  std::vector<double> weights;
  double weight_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double roll = rng.next_unit();
    Component component;
    if (opt.atoms_only || (!opt.no_atoms && roll < 0.45)) {
      component = Atom{snapped_or_continuous(rng, 2.0)};
    } else if (!opt.allow_exp || roll < 0.85) {
      const double lo = rng.next_unit() * 1.5;
      component = UniformInterval{lo, lo + 0.05 + rng.next_unit()};
    } else {
      component = Exponential{0.2 + 4.8 * rng.next_unit()};
    }
    const double w = 0.05 + rng.next_unit();
    weights.push_back(w);
    weight_sum += w;
    comps.push_back({0.0, component});
  }
  for (int i = 0; i < n; ++i) comps[static_cast<std::size_t>(i)].weight = weights[static_cast<std::size_t>(i)] / weight_sum;
  return Distribution(std::move(comps));
}

inline Threshold random_target(StreamRng& rng) {
  if (rng.next_u64() % 2 == 0)
    return Threshold{static_cast<double>(1 + rng.next_u64() % 20) / 10.0};
  return Threshold{0.05 + 2.0 * rng.next_unit()};
}

// A (target, eps) pair with a nonempty sup set: mu[0, target] >= eps > 0.
inline std::optional<std::pair<Threshold, double>> random_theta_scenario(
    const Distribution& dist, StreamRng& rng) {
  for (int tries = 0; tries < 64; ++tries) {
    const Threshold target = random_target(rng);
    const double mass = measure_interval(dist, interval_cc(0.0, target.value));
    if (mass < 1e-6) continue;
    const double eps = mass * (0.05 + 0.9 * rng.next_unit());
    if (eps > 0.0 && eps < 1.0) return std::make_pair(target, eps);
  }
  return std::nullopt;
}

inline bool interval_contains(const Interval& iv, double x) {
  switch (iv.kind) {
    case IntervalKind::oo: return iv.lo < x && x < iv.hi;
    case IntervalKind::oc: return iv.lo < x && x <= iv.hi;
    case IntervalKind::co: return iv.lo <= x && x < iv.hi;
    case IntervalKind::cc: return iv.lo <= x && x <= iv.hi;
  }
  return false;
}

}  // namespace stumplab::testutil
