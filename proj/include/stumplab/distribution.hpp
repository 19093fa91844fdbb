#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "stumplab/interval.hpp"
#include "stumplab/random.hpp"

namespace stumplab {

struct Atom {
  double location;
};

struct UniformInterval {
  double lo;
  double hi;
};

struct Exponential {
  double rate;
};

using Component = std::variant<Atom, UniformInterval, Exponential>;

struct WeightedComponent {
  double weight;
  Component component;
};

// A finite mixture on [0, inf): point masses, uniform pieces and exponential
// tails. Closed-form CDFs keep interval measures exact, atoms included.
//
// CDF evaluation folds the continuous components first and then the atoms in
// ascending location order, with co-located atoms merged up front. F(x) is
// then a fold prefix of F(y) for x <= y, which makes monotonicity and the
// jump identity F(x) = F(x-) + mu{x} hold exactly in floating point, not
// just in the reals.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::vector<WeightedComponent> components);

  const std::vector<WeightedComponent>& components() const { return components_; }

  struct MergedAtom {
    double location;
    double weight;  // in-order sum of the co-located atom weights
  };
  const std::vector<MergedAtom>& sorted_atoms() const { return sorted_atoms_; }

  // True when every positively weighted component is an atom.
  bool pure_atomic() const;

  // Total weight of atoms sitting exactly at x.
  double atom_mass_at(double x) const;

  // Upper end of the searchable support; exponential tails are truncated at
  // their quantile(1 - 1e-15).
  double support_max() const;

 private:
  std::vector<WeightedComponent> components_;
  std::vector<MergedAtom> sorted_atoms_;
};

// All invariant violations, empty when the distribution is valid.
std::vector<std::string> validate(const Distribution& dist);

// Throws std::invalid_argument listing every violation.
void require_valid(const Distribution& dist);

// F(x) = mu[0, x]; monotone nondecreasing and right-continuous.
double cdf(const Distribution& dist, double x);

// lim_{y -> x-} F(y), i.e. F(x) minus the atom mass at x; 0 at x = 0.
double left_limit_cdf(const Distribution& dist, double x);

// mu(iv) via CDF differences with explicit left limits:
//   mu(a,b] = F(b) - F(a)      mu[a,b] = F(b) - F(a-)
//   mu[a,b) = F(b-) - F(a-)    mu(a,b) = F(b-) - F(a)
double measure_interval(const Distribution& dist, const Interval& iv);

// Inverse-transform draw: pick a component by weight, then sample it.
double sample(const Distribution& dist, StreamRng& rng);

// m independent draws in stream order; rejects m < 1.
std::vector<double> sample_vector(const Distribution& dist, std::int64_t m, StreamRng& rng);

// Convenience mixtures used by the CLI and the tests.
Distribution point_mass(double location);
Distribution bernoulli(double p);  // mass p at 1 and 1-p at 0

}  // namespace stumplab
