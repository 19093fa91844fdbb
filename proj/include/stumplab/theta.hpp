#pragma once

#include <optional>

#include "stumplab/distribution.hpp"
#include "stumplab/learner.hpp"

namespace stumplab {

struct ThetaCertificate {
  double theta{0.0};
  double lower_measure{0.0};  // mu[theta, target]
  double upper_measure{0.0};  // mu(theta, target]
  double epsilon{0.0};
  bool lower_ok{false};  // lower_measure >= epsilon - 1e-9
  bool upper_ok{false};  // upper_measure <= epsilon + 1e-9

  bool ok() const { return lower_ok && upper_ok; }
};

// theta = sup { d in [0, target] : mu[d, target] >= eps }.
//
// g(d) = mu[d, target] = F(target) - F(d-) is nonincreasing and
// left-continuous in d, so the supremum is attained. The mixture family has
// finitely many breakpoints (0, target, atom locations, uniform endpoints)
// and g is continuous between them, so the supremum is computed exactly:
// locate the crossing piece, then solve in closed form, falling back to
// bisection only when exponential components contribute density.
//
// Requires 0 < eps < 1 and a nonempty sup set, i.e. mu[0, target] >= eps;
// otherwise throws std::domain_error naming the failed hypothesis. Note the
// sup set can be nonempty even when the case split's strict hypothesis
// mu(0, target] > eps fails, e.g. when an atom at 0 carries the mass.
double theta(const Distribution& dist, Threshold target, double eps);

// Evaluates both defining inequalities at the computed theta:
// mu[theta, target] >= eps and mu(theta, target] <= eps, at tolerance 1e-9.
ThetaCertificate certify_theta(const Distribution& dist, Threshold target, double eps);

// Some d in [0, target] with mu[d, target] = eps (within 1e-12) when one
// exists, else nullopt. Decided from the breakpoint/piece structure of g, so
// a jump discontinuity past eps yields nullopt rather than a near miss.
std::optional<double> exact_theta_exists(const Distribution& dist, Threshold target,
                                         double eps);

}  // namespace stumplab
