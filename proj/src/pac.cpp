#include "stumplab/pac.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "stumplab/stable_sum.hpp"
#include "stumplab/theta.hpp"

namespace stumplab {

namespace {

void check_open_unit(double value, const char* name) {
  if (!(value > 0.0) || !(value < 1.0)) {
    std::ostringstream msg;
    msg << name << " must lie in (0, 1), got " << value;
    throw std::domain_error(msg.str());
  }
}

struct TrialOutcome {
  TrialReport report;
  std::int64_t mapped_below_theta{0};
  bool all_mapped_below_theta{true};
};

TrialOutcome run_trial_impl(const Distribution& dist, Threshold target, std::int64_t m,
                            double epsilon, std::int64_t trial_index, StreamRng rng,
                            const std::optional<double>& theta_value) {
  TrialOutcome out;
  const std::vector<double> xs = sample_vector(dist, m, rng);
  const std::vector<LabeledExample> labeled = label_sample(target, xs);
  const Threshold chosen = choose(labeled);
  const double err = error(dist, target, chosen);
  out.report = TrialReport{trial_index, chosen, err, err <= epsilon};
  if (theta_value) {
    for (const auto& ex : labeled) {
      const double mapped = ex.label ? ex.point : 0.0;
      if (mapped < *theta_value)
        ++out.mapped_below_theta;
      else
        out.all_mapped_below_theta = false;
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> validate(const ExperimentConfig& config) {
  std::vector<std::string> violations;
  for (const auto& v : validate(config.dist)) violations.push_back("dist: " + v);
  if (!std::isfinite(config.target.value) || config.target.value < 0.0)
    violations.push_back("target must be a nonnegative real");
  if (!(config.epsilon > 0.0) || !(config.epsilon < 1.0))
    violations.push_back("epsilon must lie in (0, 1)");
  if (!(config.delta > 0.0) || !(config.delta < 1.0))
    violations.push_back("delta must lie in (0, 1)");
  if (config.sample_count < 1) violations.push_back("sample count m must be >= 1");
  if (config.trials < 1) violations.push_back("trials must be >= 1");
  return violations;
}

double complexity(double eps, double delta) {
  check_open_unit(eps, "eps");
  check_open_unit(delta, "delta");
  return std::log(delta) / std::log1p(-eps) - 1.0;
}

std::int64_t min_sample_count(double eps, double delta) {
  const double c = complexity(eps, delta);
  if (c >= 9.0e18) throw std::overflow_error("min_sample_count exceeds the int64 range");
  const double base = 1.0 - eps;
  const auto power_leq_delta = [&](std::int64_t m) {
    return std::pow(base, static_cast<double>(m)) <= delta;
  };
  std::int64_t m = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(c)) + 1);
  while (m > 1 && power_leq_delta(m - 1)) --m;
  while (!power_leq_delta(m)) ++m;
  return m;
}

TrialReport run_trial(const Distribution& dist, Threshold target, std::int64_t m,
                      double epsilon, std::int64_t trial_index, StreamRng rng) {
  return run_trial_impl(dist, target, m, epsilon, trial_index, rng, std::nullopt).report;
}

VerificationReport verify_pac(const ExperimentConfig& config, int workers, bool keep_trials) {
  {
    const auto violations = validate(config);
    if (!violations.empty()) {
      std::string msg = "invalid experiment config:";
      for (const auto& v : violations) msg += " [" + v + "]";
      throw std::invalid_argument(msg);
    }
  }
  const auto start = std::chrono::steady_clock::now();

  VerificationReport rep;
  rep.config = config;
  rep.min_m = min_sample_count(config.epsilon, config.delta);
  rep.theorem_applicable = config.sample_count >= rep.min_m;
  rep.bound = 1.0 - std::pow(1.0 - config.epsilon, static_cast<double>(config.sample_count));
  rep.guarantee_target = 1.0 - config.delta;

  const double positive_mass =
      measure_interval(config.dist, interval_oc(0.0, config.target.value));
  rep.always_succeed_regime = positive_mass <= config.epsilon;
  if (!rep.always_succeed_regime)
    rep.theta_value = theta(config.dist, config.target, config.epsilon);

  const std::int64_t trials = config.trials;
  const std::int64_t m = config.sample_count;
  std::vector<unsigned char> success(static_cast<std::size_t>(trials), 0);
  std::vector<std::int64_t> miss_counts;
  std::vector<unsigned char> all_below;
  if (rep.theta_value) {
    miss_counts.assign(static_cast<std::size_t>(trials), 0);
    all_below.assign(static_cast<std::size_t>(trials), 0);
  }
  if (keep_trials) rep.trials.resize(static_cast<std::size_t>(trials));

  const auto run_range = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      TrialOutcome out =
          run_trial_impl(config.dist, config.target, m, config.epsilon, i,
                         config.seed.stream(static_cast<std::uint64_t>(i)), rep.theta_value);
      const auto idx = static_cast<std::size_t>(i);
      success[idx] = out.report.success ? 1 : 0;
      if (rep.theta_value) {
        miss_counts[idx] = out.mapped_below_theta;
        all_below[idx] = out.all_mapped_below_theta ? 1 : 0;
      }
      if (keep_trials) rep.trials[idx] = out.report;
    }
  };

  const int worker_count = std::max(1, std::min<int>(workers, static_cast<int>(
                                           std::min<std::int64_t>(trials, 256))));
  if (worker_count == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(worker_count));
    const std::int64_t chunk = (trials + worker_count - 1) / worker_count;
    for (int w = 0; w < worker_count; ++w) {
      const std::int64_t begin = static_cast<std::int64_t>(w) * chunk;
      const std::int64_t end = std::min(trials, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  // Aggregation walks trials in index order; counts are integers, so the
  // result cannot depend on how the trial range was partitioned.
  std::int64_t successes = 0;
  std::int64_t failures = 0;
  std::int64_t missed_examples = 0;
  bool all_missed = true;
  for (std::int64_t i = 0; i < trials; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (success[idx]) {
      ++successes;
    } else {
      ++failures;
      if (rep.theta_value && !all_below[idx]) all_missed = false;
    }
    if (rep.theta_value) missed_examples += miss_counts[idx];
  }

  rep.empirical_success = static_cast<double>(successes) / static_cast<double>(trials);
  rep.failing_trials = failures;
  if (rep.theta_value) {
    rep.miss_freq =
        static_cast<double>(missed_examples) / static_cast<double>(trials * m);
    rep.all_missed_holds = all_missed;
  }

  const double slack =
      4.0 * std::sqrt(config.delta * (1.0 - config.delta) / static_cast<double>(trials));
  rep.verdict_bound =
      !rep.theorem_applicable || rep.empirical_success >= rep.guarantee_target - slack;

  if (config.dist.pure_atomic()) {
    try {
      rep.exact_success =
          exact_success_probability(config.dist, config.target, m, config.epsilon);
    } catch (const std::runtime_error&) {
      // over the enumeration budget: Monte Carlo evidence only
    }
    if (rep.exact_success) rep.verdict_exact = *rep.exact_success >= rep.bound - 1e-12;
  }

  rep.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  rep.stats.total_samples = trials * m;
  rep.stats.workers = worker_count;
  return rep;
}

double exact_success_probability(const Distribution& dist, Threshold target, std::int64_t m,
                                 double eps, std::int64_t budget) {
  if (m < 1) throw std::invalid_argument("exact_success_probability: m must be >= 1");
  struct WeightedAtom {
    double weight;
    double mapped;  // the value filter() would keep for this atom
  };
  std::vector<WeightedAtom> atoms;
  for (const auto& wc : dist.components()) {
    if (wc.weight <= 0.0) continue;
    const auto* a = std::get_if<Atom>(&wc.component);
    if (a == nullptr)
      throw std::invalid_argument(
          "exact_success_probability requires a pure-atomic distribution");
    atoms.push_back({wc.weight, a->location <= target.value ? a->location : 0.0});
  }
  if (atoms.empty())
    throw std::invalid_argument("exact_success_probability: no positively weighted atoms");

  std::vector<char> success_of(atoms.size());
  for (std::size_t j = 0; j < atoms.size(); ++j)
    success_of[j] = error(dist, target, Threshold{atoms[j].mapped}) <= eps ? 1 : 0;

  const std::size_t k = atoms.size();
  if (k == 1) return success_of[0] ? 1.0 : 0.0;

  const double outcome_count = std::pow(static_cast<double>(k), static_cast<double>(m));
  if (!(outcome_count <= static_cast<double>(budget))) {
    std::ostringstream msg;
    msg << "enumeration budget exceeded: k^m = " << static_cast<double>(k) << "^" << m << " = "
        << outcome_count << " > " << budget << "; use Monte Carlo verification instead";
    throw std::runtime_error(msg.str());
  }

  // Depth-first walk over all ordered outcomes, carrying the prefix product
  // and the running maximum of the filtered values; k^m terms of mixed
  // magnitude get compensated summation.
  StableSum acc;
  const auto walk = [&](const auto& self, std::int64_t depth, double prod, double max_mapped,
                        bool succ) -> void {
    if (depth == m) {
      if (succ) acc.add(prod);
      return;
    }
    for (std::size_t j = 0; j < k; ++j) {
      const bool next_succ = atoms[j].mapped > max_mapped ? success_of[j] != 0 : succ;
      const double next_max = std::max(max_mapped, atoms[j].mapped);
      self(self, depth + 1, prod * atoms[j].weight, next_max, next_succ);
    }
  };
  walk(walk, 0, 1.0, -1.0, false);
  return acc.value();
}

std::vector<SweepEntry> sweep(const std::vector<ExperimentConfig>& configs, int workers) {
  std::vector<SweepEntry> entries;
  entries.reserve(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    SweepEntry entry;
    entry.config_index = i;
    try {
      entry.report = verify_pac(configs[i], workers);
    } catch (const std::exception& ex) {
      entry.error = ex.what();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

}  // namespace stumplab
