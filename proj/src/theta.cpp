#include "stumplab/theta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace stumplab {

namespace {

constexpr double kCertifyTolerance = 1e-9;
constexpr double kExactTolerance = 1e-12;

// Breakpoints of F inside [0, target]. Piece interiors are atom-free and see
// a fixed set of active density components, so F is continuous and
// invertible there.
std::vector<double> breakpoints(const Distribution& dist, double target) {
  std::vector<double> bps{0.0, target};
  for (const auto& wc : dist.components()) {
    if (wc.weight <= 0.0) continue;
    if (const auto* a = std::get_if<Atom>(&wc.component)) {
      if (a->location > 0.0 && a->location < target) bps.push_back(a->location);
    } else if (const auto* u = std::get_if<UniformInterval>(&wc.component)) {
      if (u->lo > 0.0 && u->lo < target) bps.push_back(u->lo);
      if (u->hi > 0.0 && u->hi < target) bps.push_back(u->hi);
    }
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  return bps;
}

bool has_exponential(const Distribution& dist) {
  for (const auto& wc : dist.components())
    if (wc.weight > 0.0 && std::holds_alternative<Exponential>(wc.component)) return true;
  return false;
}

// Combined density of the uniform components covering (lo, hi).
double uniform_density_on(const Distribution& dist, double lo, double hi) {
  double density = 0.0;
  for (const auto& wc : dist.components()) {
    if (wc.weight <= 0.0) continue;
    if (const auto* u = std::get_if<UniformInterval>(&wc.component))
      if (u->lo <= lo && hi <= u->hi) density += wc.weight / (u->hi - u->lo);
  }
  return density;
}

// Root of F(d) = y on a piece [lo, hi] where F is continuous and strictly
// increasing. Uniform-only pieces invert in closed form; exponential density
// forces bisection, run to ~1e-15 on d (the contract is 1e-12).
double invert_cdf_on_piece(const Distribution& dist, double lo, double hi, double y,
                           bool exponential) {
  if (!exponential) {
    const double density = uniform_density_on(dist, lo, hi);
    if (density > 0.0) {
      const double d = lo + (y - cdf(dist, lo)) / density;
      return std::clamp(d, lo, hi);
    }
  }
  double a = lo;
  double b = hi;
  for (int iter = 0; iter < 200 && b - a > 1e-15; ++iter) {
    const double mid = 0.5 * (a + b);
    if (cdf(dist, mid) < y)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace

double theta(const Distribution& dist, Threshold target, double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw std::domain_error("theta: eps must lie in (0, 1)");
  const double t = target.value;
  if (!(t >= 0.0)) throw std::domain_error("theta: target must be nonnegative");

  const double target_cdf = cdf(dist, t);
  // g(d) = mu[d, target] = F(target) - F(d-), nonincreasing, left-continuous.
  const auto g_at = [&](double d) { return target_cdf - left_limit_cdf(dist, d); };
  const auto g_after = [&](double d) { return target_cdf - cdf(dist, d); };

  if (g_at(0.0) < eps) {
    std::ostringstream msg;
    msg << "theta: sup set {d : mu[d, target] >= eps} is empty: mu[0, target] = " << g_at(0.0)
        << " < eps = " << eps << " (case-split hypothesis mu(0, target] > eps fails: mu(0, target] = "
        << g_after(0.0) << ")";
    throw std::domain_error(msg.str());
  }

  if (g_at(t) >= eps) return t;

  const std::vector<double> bps = breakpoints(dist, t);
  // Last breakpoint still inside the sup set; exists because g(0) >= eps and
  // bps.front() == 0.
  std::size_t k = 0;
  for (std::size_t i = 0; i < bps.size(); ++i)
    if (g_at(bps[i]) >= eps) k = i;

  const double b = bps[k];
  // An atom at b can drop g below eps immediately to the right of b; the sup
  // then sits on the jump itself.
  if (g_after(b) < eps) return b;

  // g crosses eps inside (b, bps[k+1]]: solve F(d) = F(target) - eps there.
  return invert_cdf_on_piece(dist, b, bps[k + 1], target_cdf - eps, has_exponential(dist));
}

ThetaCertificate certify_theta(const Distribution& dist, Threshold target, double eps) {
  ThetaCertificate cert;
  cert.theta = theta(dist, target, eps);
  cert.epsilon = eps;
  cert.lower_measure = measure_interval(dist, interval_cc(cert.theta, target.value));
  cert.upper_measure = measure_interval(dist, interval_oc(cert.theta, target.value));
  cert.lower_ok = cert.lower_measure >= eps - kCertifyTolerance;
  cert.upper_ok = cert.upper_measure <= eps + kCertifyTolerance;
  return cert;
}

std::optional<double> exact_theta_exists(const Distribution& dist, Threshold target,
                                         double eps) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::domain_error("exact_theta_exists: eps must lie in (0, 1)");
  const double t = target.value;
  if (!(t >= 0.0)) throw std::domain_error("exact_theta_exists: target must be nonnegative");

  const double target_cdf = cdf(dist, t);
  const auto g_at = [&](double d) { return target_cdf - left_limit_cdf(dist, d); };
  const auto g_after = [&](double d) { return target_cdf - cdf(dist, d); };

  const std::vector<double> bps = breakpoints(dist, t);
  for (double b : bps)
    if (std::abs(g_at(b) - eps) <= kExactTolerance) return b;

  const bool exponential = has_exponential(dist);
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    // On the piece (b, bn] the function g attains [g(bn), g_after(b)); the
    // upper end is only a limit, so strict comparison decides attainability.
    const double ghi = g_after(bps[i]);
    const double glo = g_at(bps[i + 1]);
    if (glo <= eps && eps < ghi)
      return invert_cdf_on_piece(dist, bps[i], bps[i + 1], target_cdf - eps, exponential);
  }
  return std::nullopt;
}

}  // namespace stumplab
