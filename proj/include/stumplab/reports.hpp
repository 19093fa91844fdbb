#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "stumplab/pac.hpp"
#include "stumplab/theta.hpp"

namespace stumplab {

// Line-delimited records and the flat table deliberately omit runtime stats
// and worker counts, so reruns with an equal seed produce byte-identical
// files regardless of machine load or parallelism.

std::string summary_record(const VerificationReport& report);
std::string trial_record(const TrialReport& trial);
std::string certificate_record(const Distribution& dist, Threshold target,
                               const ThetaCertificate& cert,
                               const std::optional<double>& exact_theta);
std::string sweep_error_record(const SweepEntry& entry);

std::string table_header();
std::string table_row(const VerificationReport& report);

void print_human_summary(std::ostream& out, const VerificationReport& report);
void print_human_certificate(std::ostream& out, const Distribution& dist, Threshold target,
                             const ThetaCertificate& cert,
                             const std::optional<double>& exact_theta);

}  // namespace stumplab
