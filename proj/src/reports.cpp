#include "stumplab/reports.hpp"

#include <ostream>

#include "json.hpp"
#include "stumplab/dist_format.hpp"

namespace stumplab {

namespace {

using OrderedJson = nlohmann::ordered_json;

OrderedJson config_fields(const ExperimentConfig& config) {
  OrderedJson j;
  j["dist"] = format_distribution(config.dist);
  j["target"] = config.target.value;
  j["epsilon"] = config.epsilon;
  j["delta"] = config.delta;
  j["m"] = config.sample_count;
  j["trials"] = config.trials;
  j["seed"] = config.seed.master;
  return j;
}

template <typename T>
OrderedJson opt_json(const std::optional<T>& value) {
  if (value) return OrderedJson(*value);
  return OrderedJson(nullptr);
}

std::string csv_quote(const std::string& field) { return "\"" + field + "\""; }

std::string csv_opt(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

std::string csv_bool(bool b) { return b ? "true" : "false"; }

std::string csv_opt_bool(const std::optional<bool>& value) {
  return value ? csv_bool(*value) : std::string();
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }
const char* pass_fail(bool b) { return b ? "pass" : "FAIL"; }

}  // namespace

std::string summary_record(const VerificationReport& report) {
  OrderedJson j;
  j["type"] = "summary";
  j.update(config_fields(report.config));
  j["min_m"] = report.min_m;
  j["theorem_applicable"] = report.theorem_applicable;
  j["always_succeed_regime"] = report.always_succeed_regime;
  j["empirical_success"] = report.empirical_success;
  j["exact_success"] = opt_json(report.exact_success);
  j["bound"] = report.bound;
  j["guarantee_target"] = report.guarantee_target;
  j["theta"] = opt_json(report.theta_value);
  j["miss_freq"] = opt_json(report.miss_freq);
  j["all_missed_holds"] = opt_json(report.all_missed_holds);
  j["failing_trials"] = report.failing_trials;
  j["verdict_bound"] = report.verdict_bound;
  j["verdict_exact"] = opt_json(report.verdict_exact);
  j["pass"] = report.pass();
  return j.dump();
}

std::string trial_record(const TrialReport& trial) {
  OrderedJson j;
  j["type"] = "trial";
  j["trial_index"] = trial.trial_index;
  j["chosen"] = trial.chosen.value;
  j["err"] = trial.err;
  j["success"] = trial.success;
  return j.dump();
}

std::string certificate_record(const Distribution& dist, Threshold target,
                               const ThetaCertificate& cert,
                               const std::optional<double>& exact_theta) {
  OrderedJson j;
  j["type"] = "theta_certificate";
  j["dist"] = format_distribution(dist);
  j["target"] = target.value;
  j["epsilon"] = cert.epsilon;
  j["theta"] = cert.theta;
  j["lower_measure"] = cert.lower_measure;
  j["upper_measure"] = cert.upper_measure;
  j["lower_ok"] = cert.lower_ok;
  j["upper_ok"] = cert.upper_ok;
  j["exact_theta"] = opt_json(exact_theta);
  return j.dump();
}

std::string sweep_error_record(const SweepEntry& entry) {
  OrderedJson j;
  j["type"] = "error";
  j["config_index"] = entry.config_index;
  j["error"] = entry.error;
  return j.dump();
}

std::string table_header() {
  return "dist,target,epsilon,delta,m,trials,seed,min_m,theorem_applicable,"
         "always_succeed_regime,empirical_success,exact_success,bound,guarantee_target,"
         "theta,miss_freq,all_missed_holds,failing_trials,verdict_bound,verdict_exact,pass";
}

std::string table_row(const VerificationReport& report) {
  const ExperimentConfig& c = report.config;
  std::string row;
  row += csv_quote(format_distribution(c.dist));
  row += ',' + format_double(c.target.value);
  row += ',' + format_double(c.epsilon);
  row += ',' + format_double(c.delta);
  row += ',' + std::to_string(c.sample_count);
  row += ',' + std::to_string(c.trials);
  row += ',' + std::to_string(c.seed.master);
  row += ',' + std::to_string(report.min_m);
  row += ',' + csv_bool(report.theorem_applicable);
  row += ',' + csv_bool(report.always_succeed_regime);
  row += ',' + format_double(report.empirical_success);
  row += ',' + csv_opt(report.exact_success);
  row += ',' + format_double(report.bound);
  row += ',' + format_double(report.guarantee_target);
  row += ',' + csv_opt(report.theta_value);
  row += ',' + csv_opt(report.miss_freq);
  row += ',' + csv_opt_bool(report.all_missed_holds);
  row += ',' + std::to_string(report.failing_trials);
  row += ',' + csv_bool(report.verdict_bound);
  row += ',' + csv_opt_bool(report.verdict_exact);
  row += ',' + csv_bool(report.pass());
  return row;
}

void print_human_summary(std::ostream& out, const VerificationReport& report) {
  const ExperimentConfig& c = report.config;
  out << "verify: dist = " << format_distribution(c.dist) << "\n"
      << "  target = " << format_double(c.target.value) << ", eps = " << format_double(c.epsilon)
      << ", delta = " << format_double(c.delta) << ", m = " << c.sample_count
      << ", trials = " << c.trials << ", seed = " << c.seed.master << "\n"
      << "  min sample count            : " << report.min_m
      << " (theorem applicable: " << yes_no(report.theorem_applicable) << ")\n"
      << "  regime                      : "
      << (report.always_succeed_regime ? "always-succeed (mu(0, target] <= eps)"
                                       : "theta case split (mu(0, target] > eps)")
      << "\n";
  if (report.theta_value)
    out << "  theta                       : " << format_double(*report.theta_value) << "\n";
  out << "  empirical success           : " << format_double(report.empirical_success) << "\n";
  if (report.exact_success)
    out << "  exact success               : " << format_double(*report.exact_success) << "\n";
  out << "  bound 1 - (1-eps)^m         : " << format_double(report.bound) << "\n"
      << "  guarantee target 1 - delta  : " << format_double(report.guarantee_target) << "\n"
      << "  failing trials              : " << report.failing_trials << "\n";
  if (report.miss_freq)
    out << "  miss frequency              : " << format_double(*report.miss_freq) << "\n";
  if (report.all_missed_holds)
    out << "  all-missed on failures      : " << yes_no(*report.all_missed_holds) << "\n";
  out << "  verdict (empirical >= 1-d)  : " << pass_fail(report.verdict_bound) << "\n";
  if (report.verdict_exact)
    out << "  verdict (exact >= bound)    : " << pass_fail(*report.verdict_exact) << "\n";
  out << "  overall                     : " << pass_fail(report.pass()) << "\n";
}

void print_human_certificate(std::ostream& out, const Distribution& dist, Threshold target,
                             const ThetaCertificate& cert,
                             const std::optional<double>& exact_theta) {
  out << "theta: dist = " << format_distribution(dist) << "\n"
      << "  target = " << format_double(target.value)
      << ", eps = " << format_double(cert.epsilon) << "\n"
      << "  exact theta                 : "
      << (exact_theta ? format_double(*exact_theta) : std::string("none")) << "\n"
      << "  sup theta                   : " << format_double(cert.theta) << "\n"
      << "  mu[theta, target]           : " << format_double(cert.lower_measure)
      << " >= eps : " << (cert.lower_ok ? "ok" : "VIOLATED") << "\n"
      << "  mu(theta, target]           : " << format_double(cert.upper_measure)
      << " <= eps : " << (cert.upper_ok ? "ok" : "VIOLATED") << "\n";
}

}  // namespace stumplab
