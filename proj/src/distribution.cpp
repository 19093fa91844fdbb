#include "stumplab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace stumplab {

namespace {

constexpr double kWeightSumTolerance = 1e-12;
// Exponential tails are searched up to quantile(1 - 1e-15).
constexpr double kExpTailLogMass = 34.538776394910684;  // -ln(1e-15)

// Contribution of one component to F(x-): mass strictly below x for atoms,
// the plain CDF for continuous components.
struct LeftLimitCdfAt {
  double x;
  double operator()(const Atom& a) const { return x > a.location ? 1.0 : 0.0; }
  double operator()(const UniformInterval& u) const {
    if (x <= u.lo) return 0.0;
    if (x >= u.hi) return 1.0;
    return (x - u.lo) / (u.hi - u.lo);
  }
  double operator()(const Exponential& e) const {
    return x <= 0.0 ? 0.0 : -std::expm1(-e.rate * x);
  }
};

struct SampleComponent {
  StreamRng& rng;
  double operator()(const Atom& a) const { return a.location; }
  double operator()(const UniformInterval& u) const {
    return u.lo + rng.next_unit() * (u.hi - u.lo);
  }
  double operator()(const Exponential& e) const {
    return -std::log1p(-rng.next_unit()) / e.rate;
  }
};

struct SupportMax {
  double operator()(const Atom& a) const { return a.location; }
  double operator()(const UniformInterval& u) const { return u.hi; }
  double operator()(const Exponential& e) const { return kExpTailLogMass / e.rate; }
};

double clamp_probability(double p) { return std::min(1.0, std::max(0.0, p)); }

// One accumulation scheme shared by cdf, left_limit_cdf and atom_mass_at:
// continuous terms first, then merged atoms in location order, finally the
// mass at x itself. F(x) = F(x-) + mu{x} is then a computed identity, and
// F(x) literally occurs as a fold state inside F(y) for x <= y.
struct CdfParts {
  double below;     // F(x-)
  double at_atoms;  // mu{x}
};

CdfParts cdf_parts(const Distribution& dist, double x) {
  CdfParts parts{0.0, 0.0};
  for (const auto& wc : dist.components())
    if (!std::holds_alternative<Atom>(wc.component))
      parts.below += wc.weight * std::visit(LeftLimitCdfAt{x}, wc.component);
  for (const auto& atom : dist.sorted_atoms()) {
    if (atom.location < x)
      parts.below += atom.weight;
    else if (atom.location == x)
      parts.at_atoms = atom.weight;
    else
      break;
  }
  return parts;
}

}  // namespace

Distribution::Distribution(std::vector<WeightedComponent> components)
    : components_(std::move(components)) {
  for (const auto& wc : components_)
    if (const auto* a = std::get_if<Atom>(&wc.component))
      sorted_atoms_.push_back({a->location, wc.weight});
  std::stable_sort(sorted_atoms_.begin(), sorted_atoms_.end(),
                   [](const MergedAtom& a, const MergedAtom& b) { return a.location < b.location; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < sorted_atoms_.size(); ++i) {
    if (out > 0 && sorted_atoms_[out - 1].location == sorted_atoms_[i].location)
      sorted_atoms_[out - 1].weight += sorted_atoms_[i].weight;
    else
      sorted_atoms_[out++] = sorted_atoms_[i];
  }
  sorted_atoms_.resize(out);
}

bool Distribution::pure_atomic() const {
  for (const auto& wc : components_)
    if (wc.weight > 0.0 && !std::holds_alternative<Atom>(wc.component)) return false;
  return true;
}

double Distribution::atom_mass_at(double x) const {
  for (const auto& atom : sorted_atoms_)
    if (atom.location == x) return atom.weight;
  return 0.0;
}

double Distribution::support_max() const {
  double hi = 0.0;
  for (const auto& wc : components_)
    if (wc.weight > 0.0) hi = std::max(hi, std::visit(SupportMax{}, wc.component));
  return hi;
}

std::vector<std::string> validate(const Distribution& dist) {
  std::vector<std::string> violations;
  const auto& comps = dist.components();
  if (comps.empty()) violations.push_back("distribution has no components");

  double weight_sum = 0.0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& wc = comps[i];
    const std::string tag = "component " + std::to_string(i) + ": ";
    if (!std::isfinite(wc.weight) || wc.weight < 0.0 || wc.weight > 1.0)
      violations.push_back(tag + "weight " + std::to_string(wc.weight) + " outside [0, 1]");
    else
      weight_sum += wc.weight;

    if (const auto* a = std::get_if<Atom>(&wc.component)) {
      if (!std::isfinite(a->location) || a->location < 0.0)
        violations.push_back(tag + "negative support (atom at " + std::to_string(a->location) + ")");
    } else if (const auto* u = std::get_if<UniformInterval>(&wc.component)) {
      if (!std::isfinite(u->lo) || !std::isfinite(u->hi) || u->lo < 0.0)
        violations.push_back(tag + "negative support (uniform lo " + std::to_string(u->lo) + ")");
      if (!(u->lo < u->hi))
        violations.push_back(tag + "uniform lo >= hi (" + std::to_string(u->lo) + " >= " +
                             std::to_string(u->hi) + ")");
    } else if (const auto* e = std::get_if<Exponential>(&wc.component)) {
      if (!std::isfinite(e->rate) || !(e->rate > 0.0))
        violations.push_back(tag + "exponential rate must be positive (got " +
                             std::to_string(e->rate) + ")");
    }
  }
  if (!comps.empty() && std::abs(weight_sum - 1.0) > kWeightSumTolerance) {
    std::ostringstream msg;
    msg << "weights sum " << weight_sum << ", expected 1 within 1e-12";
    violations.push_back(msg.str());
  }
  return violations;
}

void require_valid(const Distribution& dist) {
  const auto violations = validate(dist);
  if (violations.empty()) return;
  std::string msg = "invalid distribution:";
  for (const auto& v : violations) msg += " [" + v + "]";
  throw std::invalid_argument(msg);
}

// Unclamped: a valid distribution keeps both within 1e-12 of [0, 1], and
// clamping here would break the exact jump identity at atoms.
double cdf(const Distribution& dist, double x) {
  const CdfParts parts = cdf_parts(dist, x);
  return parts.below + parts.at_atoms;
}

double left_limit_cdf(const Distribution& dist, double x) { return cdf_parts(dist, x).below; }

double measure_interval(const Distribution& dist, const Interval& iv) {
  check_interval(iv);
  double hi_part = 0.0;
  double lo_part = 0.0;
  switch (iv.kind) {
    case IntervalKind::oc:
      hi_part = cdf(dist, iv.hi);
      lo_part = cdf(dist, iv.lo);
      break;
    case IntervalKind::cc:
      hi_part = cdf(dist, iv.hi);
      lo_part = left_limit_cdf(dist, iv.lo);
      break;
    case IntervalKind::co:
      hi_part = left_limit_cdf(dist, iv.hi);
      lo_part = left_limit_cdf(dist, iv.lo);
      break;
    case IntervalKind::oo:
      hi_part = left_limit_cdf(dist, iv.hi);
      lo_part = cdf(dist, iv.lo);
      break;
  }
  return clamp_probability(hi_part - lo_part);
}

double sample(const Distribution& dist, StreamRng& rng) {
  const auto& comps = dist.components();
  if (comps.empty()) throw std::invalid_argument("sample: distribution has no components");
  const double u = rng.next_unit();
  double cum = 0.0;
  const WeightedComponent* picked = nullptr;
  for (const auto& wc : comps) {
    if (wc.weight <= 0.0) continue;
    picked = &wc;
    cum += wc.weight;
    if (u < cum) break;
  }
  if (picked == nullptr) throw std::invalid_argument("sample: all component weights are zero");
  return std::visit(SampleComponent{rng}, picked->component);
}

std::vector<double> sample_vector(const Distribution& dist, std::int64_t m, StreamRng& rng) {
  if (m < 1) throw std::invalid_argument("sample_vector: m must be >= 1");
  std::vector<double> xs(static_cast<std::size_t>(m));
  for (auto& x : xs) x = sample(dist, rng);
  return xs;
}

Distribution point_mass(double location) {
  return Distribution({{1.0, Atom{location}}});
}

Distribution bernoulli(double p) {
  return Distribution({{1.0 - p, Atom{0.0}}, {p, Atom{1.0}}});
}

}  // namespace stumplab
