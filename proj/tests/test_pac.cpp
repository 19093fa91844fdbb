#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "stumplab/pac.hpp"
#include "stumplab/reports.hpp"
#include "testutil.hpp"

using namespace stumplab;
namespace tu = stumplab::testutil;

namespace {

// Extended-precision oracle for the complexity formula.
long double complexity_oracle(double eps, double delta) {
  return std::log(static_cast<long double>(delta)) /
             std::log(1.0L - static_cast<long double>(eps)) -
         1.0L;
}

// Direct power evaluation by repeated long double multiplication.
long double power_oracle(double base, std::int64_t m) {
  long double p = 1.0L;
  for (std::int64_t i = 0; i < m; ++i) p *= static_cast<long double>(base);
  return p;
}

Distribution three_atoms() {
  const double third = 1.0 / 3.0;
  return Distribution({{third, Atom{0.1}}, {third, Atom{0.3}}, {third, Atom{0.6}}});
}

// Independent enumeration oracle: an iterative odometer over outcomes, the
// public learner pipeline per outcome, and naive summation. The
// implementation under test uses recursive prefix products and compensated
// summation instead.
double enumeration_oracle(const Distribution& dist, Threshold target, std::int64_t m,
                          double eps) {
  std::vector<double> locs;
  std::vector<double> weights;
  for (const auto& wc : dist.components()) {
    if (wc.weight <= 0.0) continue;
    locs.push_back(std::get<Atom>(wc.component).location);
    weights.push_back(wc.weight);
  }
  const std::size_t k = locs.size();
  std::vector<std::size_t> odometer(static_cast<std::size_t>(m), 0);
  double total = 0.0;
  while (true) {
    std::vector<double> outcome;
    double prob = 1.0;
    for (std::size_t idx : odometer) {
      outcome.push_back(locs[idx]);
      prob *= weights[idx];
    }
    const Threshold chosen = choose(label_sample(target, outcome));
    if (error(dist, target, chosen) <= eps) total += prob;

    std::size_t pos = odometer.size();
    while (pos > 0) {
      --pos;
      if (++odometer[pos] < k) break;
      odometer[pos] = 0;
      if (pos == 0) return total;
    }
  }
}

ExperimentConfig uniform_config(std::int64_t trials, std::uint64_t seed) {
  ExperimentConfig config;
  config.dist = tu::uniform01();
  config.target = Threshold{0.5};
  config.epsilon = 0.1;
  config.delta = 0.1;
  config.sample_count = 22;
  config.trials = trials;
  config.seed = Seed{seed};
  return config;
}

}  // namespace

TEST_CASE("complexity closed forms against the extended-precision oracle") {
  CHECK(complexity(0.5, 0.5) == 0.0);
  CHECK(std::abs(complexity(0.1, 0.1) - 20.8543) <= 5e-4);
  CHECK(std::abs(static_cast<long double>(complexity(0.1, 0.1)) -
                 complexity_oracle(0.1, 0.1)) <= 1e-10L);
  CHECK(std::abs(complexity(0.01, 0.05) - 297.07) <= 5e-3);
  CHECK(std::abs(static_cast<long double>(complexity(0.01, 0.05)) -
                 complexity_oracle(0.01, 0.05)) <= 1e-9L);
  CHECK_THROWS_AS(complexity(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(complexity(0.5, 1.0), std::domain_error);
}

TEST_CASE("min_sample_count settles the boundary by direct powers") {
  CHECK(min_sample_count(0.1, 0.1) == 22);
  CHECK(std::pow(0.9, 22.0) <= 0.1);
  CHECK(std::pow(0.9, 21.0) > 0.1);
  CHECK(min_sample_count(0.5, 0.5) == 1);
  CHECK(min_sample_count(0.9, 0.01) == 2);
}

TEST_CASE("property: min_sample_count is minimal on an (eps, delta) grid") {
  for (int i = 1; i <= 10; ++i) {
    for (int j = 1; j <= 10; ++j) {
      const double eps = 0.05 * i;
      const double delta = 0.01 * j;
      const std::int64_t m = min_sample_count(eps, delta);
      const double base = 1.0 - eps;
      CHECK(std::pow(base, static_cast<double>(m)) <= delta);
      if (m > 1) CHECK(std::pow(base, static_cast<double>(m - 1)) > delta);
      CHECK(power_oracle(base, m) <= static_cast<long double>(delta) + 1e-17L);
    }
  }
}

TEST_CASE("run_trial on deterministic distributions") {
  const TrialReport below = run_trial(point_mass(0.2), Threshold{0.5}, 5, 0.1, 0, Seed{1}.stream(0));
  CHECK(below.chosen.value == 0.2);
  CHECK(below.err == 0.0);
  CHECK(below.success);

  const TrialReport above = run_trial(point_mass(0.8), Threshold{0.5}, 5, 0.1, 0, Seed{1}.stream(0));
  CHECK(above.chosen.value == 0.0);
  CHECK(above.err == 0.0);
  CHECK(above.success);
}

TEST_CASE("run_trial is bit-reproducible under an equal substream") {
  const TrialReport a = run_trial(tu::uniform01(), Threshold{0.5}, 22, 0.1, 3, Seed{9}.stream(3));
  const TrialReport b = run_trial(tu::uniform01(), Threshold{0.5}, 22, 0.1, 3, Seed{9}.stream(3));
  CHECK(a.chosen.value == b.chosen.value);
  CHECK(a.err == b.err);
  CHECK(a.success == b.success);
}

TEST_CASE("verify_pac on Uniform(0,1) tracks the closed-form success rate") {
  const std::int64_t trials = 5000;
  const VerificationReport rep = verify_pac(uniform_config(trials, 7));
  const double closed_form = 1.0 - std::pow(0.9, 22.0);
  const double sigma = std::sqrt(closed_form * (1.0 - closed_form) / trials);
  CHECK(std::abs(rep.empirical_success - closed_form) <= 4.0 * sigma);
  CHECK(rep.theorem_applicable);
  CHECK(rep.verdict_bound);
  CHECK(!rep.always_succeed_regime);
  REQUIRE(rep.theta_value.has_value());
  CHECK(std::abs(*rep.theta_value - 0.4) <= 1e-12);
  REQUIRE(rep.all_missed_holds.has_value());
  CHECK(*rep.all_missed_holds);
  REQUIRE(rep.miss_freq.has_value());
  CHECK(*rep.miss_freq <=
        0.9 + 4.0 * std::sqrt(0.1 * 0.9 / static_cast<double>(trials * 22)));
  CHECK(!rep.exact_success.has_value());
}

TEST_CASE("property: failing-trial frequency stays under (1-eps)^m plus slack") {
  StreamRng rng = Seed{53}.stream(0);
  int exercised = 0;
  for (int i = 0; i < 25; ++i) {
    ExperimentConfig config;
    config.dist = tu::random_mixture(rng);
    config.target = tu::random_target(rng);
    config.epsilon = 0.1 + 0.5 * rng.next_unit();
    config.delta = 0.05 + 0.3 * rng.next_unit();
    config.sample_count = min_sample_count(config.epsilon, config.delta);
    config.trials = 400;
    config.seed = Seed{rng.next_u64()};
    if (!validate(config).empty()) continue;
    ++exercised;
    const VerificationReport rep = verify_pac(config);
    const double q = std::pow(1.0 - config.epsilon, static_cast<double>(config.sample_count));
    const double failure_freq =
        static_cast<double>(rep.failing_trials) / static_cast<double>(config.trials);
    CHECK(failure_freq <=
          q + 4.0 * std::sqrt(q * (1.0 - q) / static_cast<double>(config.trials)) + 1e-12);
  }
  CHECK(exercised > 15);
}

TEST_CASE("verify_pac in the always-succeed regime is exact") {
  ExperimentConfig config;
  config.dist = point_mass(0.9);
  config.target = Threshold{0.5};
  config.epsilon = 0.1;
  config.delta = 0.1;
  config.sample_count = min_sample_count(0.1, 0.1);
  config.trials = 2000;
  config.seed = Seed{5};
  const VerificationReport rep = verify_pac(config);
  CHECK(rep.always_succeed_regime);
  CHECK(rep.empirical_success == 1.0);
  CHECK(rep.failing_trials == 0);
  CHECK(rep.pass());
}

TEST_CASE("verify_pac fills the exact probability for atomic distributions") {
  ExperimentConfig config;
  config.dist = bernoulli(0.5);
  config.target = Threshold{0.5};
  config.epsilon = 0.25;
  config.delta = 0.1;
  config.sample_count = min_sample_count(0.25, 0.1);
  config.trials = 500;
  config.seed = Seed{6};
  CHECK(config.sample_count == 9);
  const VerificationReport rep = verify_pac(config);
  REQUIRE(rep.exact_success.has_value());
  CHECK(*rep.exact_success == 1.0);
  CHECK(*rep.exact_success >= 0.9);
  REQUIRE(rep.verdict_exact.has_value());
  CHECK(*rep.verdict_exact);
}

TEST_CASE("verify_pac results are invariant under the worker count") {
  const ExperimentConfig config = uniform_config(3000, 17);
  const VerificationReport serial = verify_pac(config, 1);
  const VerificationReport parallel = verify_pac(config, 5);
  CHECK(serial.empirical_success == parallel.empirical_success);
  CHECK(summary_record(serial) == summary_record(parallel));
}

TEST_CASE("verify_pac keeps per-trial reports when asked") {
  const VerificationReport rep = verify_pac(uniform_config(50, 3), 1, true);
  REQUIRE(rep.trials.size() == 50);
  for (std::size_t i = 0; i < rep.trials.size(); ++i)
    CHECK(rep.trials[i].trial_index == static_cast<std::int64_t>(i));
}

TEST_CASE("verify_pac rejects invalid configs") {
  ExperimentConfig config = uniform_config(10, 1);
  config.epsilon = 0.0;
  CHECK_THROWS_AS(verify_pac(config), std::invalid_argument);
  config = uniform_config(10, 1);
  config.trials = 0;
  CHECK_THROWS_AS(verify_pac(config), std::invalid_argument);
}

TEST_CASE("exact enumeration reproduces the 9-outcome case") {
  const double p = exact_success_probability(three_atoms(), Threshold{0.4}, 2, 0.25);
  CHECK(std::abs(p - 5.0 / 9.0) <= 1e-12);
}

TEST_CASE("exact enumeration on Bernoulli: every outcome succeeds") {
  CHECK(exact_success_probability(bernoulli(0.5), Threshold{0.5}, 1, 0.25) == 1.0);
}

TEST_CASE("exact enumeration with one atom short-circuits for any m") {
  CHECK(exact_success_probability(point_mass(0.3), Threshold{0.5}, 1'000'000, 0.01) == 1.0);
}

TEST_CASE("exact enumeration rejects non-atomic input and blown budgets") {
  CHECK_THROWS_AS(exact_success_probability(tu::uniform01(), Threshold{0.5}, 2, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_WITH_AS(exact_success_probability(three_atoms(), Threshold{0.4}, 20, 0.25),
                       doctest::Contains("Monte Carlo"), std::runtime_error);
}

TEST_CASE("property: enumeration agrees with the odometer oracle") {
  StreamRng rng = Seed{51}.stream(0);
  tu::MixtureOptions opt;
  opt.atoms_only = true;
  opt.max_components = 3;
  for (int i = 0; i < 60; ++i) {
    const Distribution dist = tu::random_mixture(rng, opt);
    const Threshold target = tu::random_target(rng);
    const auto m = static_cast<std::int64_t>(1 + rng.next_u64() % 6);
    const double eps = 0.05 + 0.9 * rng.next_unit();
    const double impl = exact_success_probability(dist, target, m, eps);
    const double oracle = enumeration_oracle(dist, target, m, eps);
    CHECK(std::abs(impl - oracle) <= 1e-10);
  }
}

TEST_CASE("property: with m >= min_sample_count the exact success meets 1 - delta") {
  StreamRng rng = Seed{52}.stream(0);
  tu::MixtureOptions opt;
  opt.atoms_only = true;
  opt.max_components = 3;
  int exercised = 0;
  for (int i = 0; i < 80; ++i) {
    const Distribution dist = tu::random_mixture(rng, opt);
    const Threshold target = tu::random_target(rng);
    const double eps = 0.2 + 0.6 * rng.next_unit();
    const double delta = 0.05 + 0.4 * rng.next_unit();
    const std::int64_t m = min_sample_count(eps, delta);
    if (std::pow(3.0, static_cast<double>(m)) > 1e6) continue;
    ++exercised;
    const double exact = exact_success_probability(dist, target, m, eps);
    CHECK(exact >= 1.0 - delta);
    CHECK(exact >= (1.0 - std::pow(1.0 - eps, static_cast<double>(m))) - 1e-12);
  }
  CHECK(exercised > 40);
}

TEST_CASE("sweep preserves order and collects per-config failures") {
  CHECK(sweep({}).empty());

  std::vector<ExperimentConfig> grid;
  grid.push_back(uniform_config(200, 1));
  ExperimentConfig broken = uniform_config(200, 2);
  broken.epsilon = 0.0;
  grid.push_back(broken);
  grid.push_back(uniform_config(200, 3));

  const std::vector<SweepEntry> entries = sweep(grid);
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].report.has_value());
  CHECK(entries[0].config_index == 0);
  CHECK(!entries[1].report.has_value());
  CHECK(!entries[1].error.empty());
  CHECK(entries[2].report.has_value());
  CHECK(entries[2].config_index == 2);
}
