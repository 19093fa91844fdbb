#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stumplab/distribution.hpp"
#include "stumplab/learner.hpp"
#include "stumplab/random.hpp"

namespace stumplab {

struct ExperimentConfig {
  Distribution dist;
  Threshold target{0.0};
  double epsilon{0.0};
  double delta{0.0};
  std::int64_t sample_count{1};  // m, the actual number of training examples
  std::int64_t trials{1};
  Seed seed{};
};

// All invariant violations, empty when the config is valid.
std::vector<std::string> validate(const ExperimentConfig& config);

struct TrialReport {
  std::int64_t trial_index{0};
  Threshold chosen{0.0};
  double err{0.0};
  bool success{false};  // err <= epsilon, exact comparison on the exact error
};

struct RuntimeStats {
  double wall_ms{0.0};
  std::int64_t total_samples{0};
  int workers{1};
};

struct VerificationReport {
  ExperimentConfig config;
  std::int64_t min_m{0};
  bool theorem_applicable{false};     // sample_count >= min_m
  bool always_succeed_regime{false};  // mu(0, target] <= epsilon
  double empirical_success{0.0};
  std::optional<double> exact_success;  // pure-atomic dists within budget
  double bound{0.0};             // 1 - (1 - epsilon)^m
  double guarantee_target{0.0};  // 1 - delta
  std::optional<double> theta_value;  // case-split theta when mu(0, target] > epsilon
  std::optional<double> miss_freq;    // per-example frequency of (label ? point : 0) < theta
  std::optional<bool> all_missed_holds;  // failing trials had every example mapped below theta
  std::int64_t failing_trials{0};
  bool verdict_bound{true};
  std::optional<bool> verdict_exact;
  RuntimeStats stats;
  std::vector<TrialReport> trials;  // filled only when requested

  bool pass() const { return verdict_bound && verdict_exact.value_or(true); }
};

// ln(delta) / ln(1 - eps) - 1; both arguments must lie in (0, 1).
double complexity(double eps, double delta);

// Smallest m >= 1 with (1 - eps)^m <= delta, settled by direct power
// evaluation around the log-formula estimate, never by the logs alone.
std::int64_t min_sample_count(double eps, double delta);

// One pass of the training pipeline: sample -> label -> choose -> exact error.
TrialReport run_trial(const Distribution& dist, Threshold target, std::int64_t m,
                      double epsilon, std::int64_t trial_index, StreamRng rng);

// Runs config.trials independent trials, trial i on substream i of the seed.
// Results are invariant under the worker count.
VerificationReport verify_pac(const ExperimentConfig& config, int workers = 1,
                              bool keep_trials = false);

inline constexpr std::int64_t kDefaultEnumerationBudget = 10'000'000;

// Exact P(error(choose(...)) <= eps) for a pure-atomic distribution, summing
// the product measure over all k^m ordered outcomes with compensated
// summation. Throws when k^m exceeds the budget.
double exact_success_probability(const Distribution& dist, Threshold target, std::int64_t m,
                                 double eps, std::int64_t budget = kDefaultEnumerationBudget);

struct SweepEntry {
  std::size_t config_index{0};
  std::optional<VerificationReport> report;
  std::string error;  // nonempty when the config was rejected
};

// verify_pac over a grid; per-config failures are collected, not fatal.
std::vector<SweepEntry> sweep(const std::vector<ExperimentConfig>& configs, int workers = 1);

}  // namespace stumplab
