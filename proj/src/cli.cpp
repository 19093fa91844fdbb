#include "stumplab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stumplab/dist_format.hpp"
#include "stumplab/pac.hpp"
#include "stumplab/reports.hpp"
#include "stumplab/theta.hpp"

namespace stumplab {

namespace {

using OrderedJson = nlohmann::ordered_json;

// Relative output paths land in STUMPLAB_OUT_DIR when it is set.
std::string resolve_out_path(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("STUMPLAB_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  std::string resolved = dir;
  if (resolved.back() != '/') resolved += '/';
  return resolved + path;
}

class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    const std::string resolved = resolve_out_path(path);
    file_.open(resolved);
    if (!file_) throw std::invalid_argument("cannot open output path '" + resolved + "'");
    stream_ = &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

OrderedJson load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  OrderedJson j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument("config file '" + path + "' is not valid JSON: " + ex.what());
  }
  return j;
}

template <typename T>
T field_as(const OrderedJson& j, const char* name) {
  if (!j.contains(name))
    throw std::invalid_argument("config is missing field '" + std::string(name) + "'");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument("config field '" + std::string(name) + "' has the wrong type");
  }
}

std::int64_t resolve_sample_count(const OrderedJson& m_field, double eps, double delta) {
  if (m_field.is_string()) {
    if (m_field.get<std::string>() == "auto") return min_sample_count(eps, delta);
    throw std::invalid_argument("config field 'm' must be a positive integer or \"auto\"");
  }
  if (!m_field.is_number_integer())
    throw std::invalid_argument("config field 'm' must be a positive integer or \"auto\"");
  return m_field.get<std::int64_t>();
}

// Mirrors ExperimentConfig field-for-field; 'm' may be "auto".
ExperimentConfig config_from_json(const OrderedJson& j) {
  ExperimentConfig config;
  config.dist = parse_distribution(field_as<std::string>(j, "dist"));
  config.target = Threshold{field_as<double>(j, "target")};
  config.epsilon = field_as<double>(j, "epsilon");
  config.delta = field_as<double>(j, "delta");
  config.trials = j.contains("trials") ? field_as<std::int64_t>(j, "trials") : 10000;
  config.seed = Seed{j.contains("seed") ? field_as<std::uint64_t>(j, "seed") : 0};
  const OrderedJson m_field = j.contains("m") ? j.at("m") : OrderedJson("auto");
  const bool domain_ok = config.epsilon > 0.0 && config.epsilon < 1.0 && config.delta > 0.0 &&
                         config.delta < 1.0;
  if (m_field.is_string() && !domain_ok)
    config.sample_count = 1;  // placeholder; validation names the offending field
  else
    config.sample_count = resolve_sample_count(m_field, config.epsilon, config.delta);
  return config;
}

int require_valid_config(const ExperimentConfig& config, std::ostream& err) {
  const auto violations = validate(config);
  if (violations.empty()) return kExitOk;
  err << "config error:";
  for (const auto& v : violations) err << " [" << v << "]";
  err << "\n";
  return kExitUsage;
}

std::int64_t parse_int_m(const std::string& text) {
  try {
    std::size_t used = 0;
    const long long value = std::stoll(text, &used);
    if (used != text.size() || value < 1) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("--m must be a positive integer or 'auto', got '" + text + "'");
  }
}

struct VerifyOptions {
  std::string dist;
  std::string config_path;
  double target{0.0};
  double eps{0.0};
  double delta{0.0};
  std::string m_text{"auto"};
  std::int64_t trials{10000};
  std::uint64_t seed{0};
  int workers{1};
  bool per_trial{false};
  std::string out_path;
  std::string format{"human"};

  CLI::Option* dist_opt{nullptr};
  CLI::Option* target_opt{nullptr};
  CLI::Option* eps_opt{nullptr};
  CLI::Option* delta_opt{nullptr};
  CLI::Option* m_opt{nullptr};
  CLI::Option* trials_opt{nullptr};
  CLI::Option* seed_opt{nullptr};
};

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  OrderedJson j = o.config_path.empty() ? OrderedJson::object() : load_json_file(o.config_path);
  if (o.dist_opt->count() > 0) j["dist"] = o.dist;
  if (o.target_opt->count() > 0) j["target"] = o.target;
  if (o.eps_opt->count() > 0) j["epsilon"] = o.eps;
  if (o.delta_opt->count() > 0) j["delta"] = o.delta;
  if (o.m_opt->count() > 0 || !j.contains("m"))
    j["m"] = (o.m_text == "auto") ? OrderedJson("auto") : OrderedJson(parse_int_m(o.m_text));
  if (o.trials_opt->count() > 0 || !j.contains("trials")) j["trials"] = o.trials;
  if (o.seed_opt->count() > 0 || !j.contains("seed")) j["seed"] = o.seed;

  const ExperimentConfig config = config_from_json(j);
  if (const int rc = require_valid_config(config, err); rc != kExitOk) return rc;

  const bool keep_trials = o.per_trial && o.format == "records";
  const VerificationReport report = verify_pac(config, o.workers, keep_trials);

  OutputTarget target(o.out_path, out);
  if (o.format == "human") {
    print_human_summary(target.stream(), report);
  } else if (o.format == "records") {
    for (const auto& trial : report.trials) target.stream() << trial_record(trial) << "\n";
    target.stream() << summary_record(report) << "\n";
  } else {
    target.stream() << table_header() << "\n" << table_row(report) << "\n";
  }
  err << "runtime: " << report.stats.wall_ms << " ms, " << report.stats.total_samples
      << " samples, " << report.stats.workers << " worker(s)\n";
  return report.pass() ? kExitOk : kExitVerdictFailure;
}

struct ThetaOptions {
  std::string dist;
  double target{0.0};
  double eps{0.0};
  std::string out_path;
  std::string format{"human"};
};

int cmd_theta(const ThetaOptions& o, std::ostream& out, std::ostream& err) {
  const Distribution dist = parse_distribution(o.dist);
  require_valid(dist);
  const Threshold target{o.target};
  const ThetaCertificate cert = certify_theta(dist, target, o.eps);
  const std::optional<double> exact = exact_theta_exists(dist, target, o.eps);

  OutputTarget target_out(o.out_path, out);
  if (o.format == "records")
    target_out.stream() << certificate_record(dist, target, cert, exact) << "\n";
  else
    print_human_certificate(target_out.stream(), dist, target, cert, exact);
  if (!cert.ok()) err << "theta certificate violated\n";
  return cert.ok() ? kExitOk : kExitVerdictFailure;
}

int cmd_complexity(double eps, double delta, std::ostream& out) {
  const double c = complexity(eps, delta);
  const std::int64_t m = min_sample_count(eps, delta);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", c);
  out << "complexity(eps = " << format_double(eps) << ", delta = " << format_double(delta)
      << ") = " << buf << "\n"
      << "m = " << m << "\n";
  return kExitOk;
}

struct CounterexampleOptions {
  double eps{0.25};
  double delta{0.1};
  std::int64_t trials{20000};
  std::uint64_t seed{1};
};

// The Bernoulli(0.5) scenario end to end: the exact theta of the flawed
// textbook construction does not exist, the supremum form does and is
// certified, and the sample-complexity guarantee still verifies.
int cmd_counterexample(const CounterexampleOptions& o, std::ostream& out, std::ostream& err) {
  const Distribution dist = bernoulli(0.5);
  const Threshold target{0.5};
  out << "counterexample: dist = " << format_distribution(dist)
      << ", target = " << format_double(target.value) << ", eps = " << format_double(o.eps)
      << "\n";
  const double mass_closed = measure_interval(dist, interval_cc(0.0, target.value));
  const double mass_open = measure_interval(dist, interval_oc(0.0, target.value));
  out << "  mu[0, target] = " << format_double(mass_closed)
      << ", mu(0, target] = " << format_double(mass_open) << "\n";

  bool all_ok = true;
  if (mass_closed >= o.eps) {
    const std::optional<double> exact = exact_theta_exists(dist, target, o.eps);
    const ThetaCertificate cert = certify_theta(dist, target, o.eps);
    out << "  exact theta: " << (exact ? format_double(*exact) : std::string("none")) << "\n"
        << "  sup theta = " << format_double(cert.theta) << "\n"
        << "  mu[theta, target] = " << format_double(cert.lower_measure)
        << " >= " << format_double(o.eps) << " : " << (cert.lower_ok ? "ok" : "VIOLATED") << "\n"
        << "  mu(theta, target] = " << format_double(cert.upper_measure)
        << " <= " << format_double(o.eps) << " : " << (cert.upper_ok ? "ok" : "VIOLATED") << "\n";
    all_ok = all_ok && cert.ok();
  } else {
    out << "  sup set empty: mu[0, target] = " << format_double(mass_closed) << " < eps;"
        << " case-split hypothesis mu(0, target] > eps fails (mu(0, target] = "
        << format_double(mass_open) << ")\n"
        << "  always-succeed branch: every sample yields error <= eps\n";
  }
  if (mass_open <= o.eps)
    out << "  regime: always-succeed (mu(0, target] <= eps)\n";

  ExperimentConfig config;
  config.dist = dist;
  config.target = target;
  config.epsilon = o.eps;
  config.delta = o.delta;
  config.sample_count = min_sample_count(o.eps, o.delta);
  config.trials = o.trials;
  config.seed = Seed{o.seed};
  const VerificationReport report = verify_pac(config);
  print_human_summary(out, report);
  all_ok = all_ok && report.pass();
  if (!all_ok) err << "counterexample checks failed\n";
  return all_ok ? kExitOk : kExitVerdictFailure;
}

struct EnumerateOptions {
  std::string dist;
  double target{0.0};
  double eps{0.0};
  std::int64_t m{1};
  std::int64_t budget{kDefaultEnumerationBudget};
};

int cmd_enumerate(const EnumerateOptions& o, std::ostream& out) {
  const Distribution dist = parse_distribution(o.dist);
  require_valid(dist);
  const double exact =
      exact_success_probability(dist, Threshold{o.target}, o.m, o.eps, o.budget);
  const double bound = 1.0 - std::pow(1.0 - o.eps, static_cast<double>(o.m));
  const bool verdict = exact >= bound - 1e-12;
  out << "exact success probability = " << format_double(exact) << "\n"
      << "bound 1 - (1-eps)^m       = " << format_double(bound) << "\n"
      << "exact >= bound            : " << (verdict ? "pass" : "FAIL") << "\n";
  return verdict ? kExitOk : kExitVerdictFailure;
}

struct SweepOptions {
  std::string config_path;
  int workers{1};
  std::string out_path;
  std::string format{"records"};
};

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  const OrderedJson j = load_json_file(o.config_path);
  if (!j.contains("configs") || !j.at("configs").is_array())
    throw std::invalid_argument("sweep config must contain a 'configs' array");

  std::vector<ExperimentConfig> configs;
  std::vector<SweepEntry> parse_failures;
  std::vector<std::optional<std::size_t>> slot;  // grid position -> configs index
  for (std::size_t i = 0; i < j.at("configs").size(); ++i) {
    try {
      configs.push_back(config_from_json(j.at("configs")[i]));
      slot.emplace_back(configs.size() - 1);
    } catch (const std::exception& ex) {
      SweepEntry entry;
      entry.config_index = i;
      entry.error = ex.what();
      parse_failures.push_back(std::move(entry));
      slot.emplace_back(std::nullopt);
    }
  }
  const std::vector<SweepEntry> run = sweep(configs, o.workers);

  // Stitch results back into grid order.
  std::vector<SweepEntry> entries;
  std::size_t failure_cursor = 0;
  for (std::size_t i = 0; i < slot.size(); ++i) {
    if (slot[i]) {
      SweepEntry entry = run[*slot[i]];
      entry.config_index = i;
      entries.push_back(std::move(entry));
    } else {
      entries.push_back(parse_failures[failure_cursor++]);
    }
  }

  OutputTarget target(o.out_path, out);
  bool any_verdict_failure = false;
  bool any_error = false;
  if (o.format == "table") target.stream() << table_header() << "\n";
  for (const auto& entry : entries) {
    if (entry.report) {
      any_verdict_failure = any_verdict_failure || !entry.report->pass();
      if (o.format == "table")
        target.stream() << table_row(*entry.report) << "\n";
      else
        target.stream() << summary_record(*entry.report) << "\n";
    } else {
      any_error = true;
      if (o.format == "table")
        err << "config " << entry.config_index << ": " << entry.error << "\n";
      else
        target.stream() << sweep_error_record(entry) << "\n";
    }
  }
  if (any_verdict_failure) return kExitVerdictFailure;
  if (any_error) return kExitUsage;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"stumplab: a verification lab for PAC learnability of decision stumps"};
  app.require_subcommand(1);

  VerifyOptions verify_opts;
  CLI::App* verify = app.add_subcommand(
      "verify", "Monte Carlo + exact verification of the sample-complexity guarantee");
  verify_opts.dist_opt =
      verify->add_option("--dist", verify_opts.dist, "distribution literal, e.g. atom{0}:0.5,atom{1}:0.5");
  verify->add_option("--config", verify_opts.config_path, "JSON config file; flags override");
  verify_opts.target_opt = verify->add_option("--target", verify_opts.target, "target threshold");
  verify_opts.eps_opt = verify->add_option("--eps", verify_opts.eps, "accuracy parameter in (0,1)");
  verify_opts.delta_opt =
      verify->add_option("--delta", verify_opts.delta, "confidence parameter in (0,1)");
  verify_opts.m_opt =
      verify->add_option("--m", verify_opts.m_text, "training examples per trial, or 'auto'");
  verify_opts.trials_opt = verify->add_option("--trials", verify_opts.trials, "number of trials");
  verify_opts.seed_opt = verify->add_option("--seed", verify_opts.seed, "master seed");
  verify->add_option("--workers", verify_opts.workers, "worker threads (result-invariant)");
  verify->add_flag("--per-trial", verify_opts.per_trial, "emit one record per trial (records format)");
  verify->add_option("--out", verify_opts.out_path, "output path (STUMPLAB_OUT_DIR for relative)");
  verify->add_option("--format", verify_opts.format, "human | records | table")
      ->check(CLI::IsMember({"human", "records", "table"}));

  ThetaOptions theta_opts;
  CLI::App* theta_cmd =
      app.add_subcommand("theta", "compute and certify the supremum cut point");
  theta_cmd->add_option("--dist", theta_opts.dist, "distribution literal")->required();
  theta_cmd->add_option("--target", theta_opts.target, "target threshold")->required();
  theta_cmd->add_option("--eps", theta_opts.eps, "accuracy parameter in (0,1)")->required();
  theta_cmd->add_option("--out", theta_opts.out_path, "output path");
  theta_cmd->add_option("--format", theta_opts.format, "human | records")
      ->check(CLI::IsMember({"human", "records"}));

  double complexity_eps = 0.0;
  double complexity_delta = 0.0;
  CLI::App* complexity_cmd =
      app.add_subcommand("complexity", "sample-complexity value and minimal m");
  complexity_cmd->add_option("--eps", complexity_eps, "accuracy parameter")->required();
  complexity_cmd->add_option("--delta", complexity_delta, "confidence parameter")->required();

  CounterexampleOptions ce_opts;
  CLI::App* ce_cmd = app.add_subcommand(
      "counterexample", "reproduce the Bernoulli(0.5) jump-discontinuity scenario");
  ce_cmd->add_option("--eps", ce_opts.eps, "accuracy parameter (default 0.25)");
  ce_cmd->add_option("--delta", ce_opts.delta, "confidence parameter (default 0.1)");
  ce_cmd->add_option("--trials", ce_opts.trials, "number of trials");
  ce_cmd->add_option("--seed", ce_opts.seed, "master seed");

  EnumerateOptions enum_opts;
  CLI::App* enum_cmd = app.add_subcommand(
      "enumerate", "exact success probability for a pure-atomic distribution");
  enum_cmd->add_option("--dist", enum_opts.dist, "distribution literal (atoms only)")->required();
  enum_cmd->add_option("--target", enum_opts.target, "target threshold")->required();
  enum_cmd->add_option("--eps", enum_opts.eps, "accuracy parameter")->required();
  enum_cmd->add_option("--m", enum_opts.m, "training examples per trial")->required();
  enum_cmd->add_option("--budget", enum_opts.budget, "enumeration budget on k^m");

  SweepOptions sweep_opts;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "verify a grid of configs from a file");
  sweep_cmd->add_option("--config", sweep_opts.config_path, "JSON file with a 'configs' array")
      ->required();
  sweep_cmd->add_option("--workers", sweep_opts.workers, "worker threads");
  sweep_cmd->add_option("--out", sweep_opts.out_path, "output path");
  sweep_cmd->add_option("--format", sweep_opts.format, "records | table")
      ->check(CLI::IsMember({"records", "table"}));

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("stumplab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(verify_opts, out, err);
    if (theta_cmd->parsed()) return cmd_theta(theta_opts, out, err);
    if (complexity_cmd->parsed()) return cmd_complexity(complexity_eps, complexity_delta, out);
    if (ce_cmd->parsed()) return cmd_counterexample(ce_opts, out, err);
    if (enum_cmd->parsed()) return cmd_enumerate(enum_opts, out);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts, out, err);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  err << "usage error: no command given\n";
  return kExitUsage;
}

}  // namespace stumplab
