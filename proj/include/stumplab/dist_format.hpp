#pragma once

#include <string>
#include <string_view>

#include "stumplab/distribution.hpp"

namespace stumplab {

// Shortest decimal that parses back to the identical double.
std::string format_double(double value);

// Correctly rounded decimal -> double; rejects trailing junk.
double parse_double(std::string_view text);

// Distribution literal: comma-separated `kind{params}:weight` records, e.g.
//   atom{0}:0.5,atom{1}:0.5
//   uniform{0,1}:0.75,exp{2.5}:0.25
// Whitespace around tokens is ignored. Parsing is bit-exact: every literal
// printed by format_distribution re-parses to an equal Distribution.
Distribution parse_distribution(std::string_view literal);
std::string format_distribution(const Distribution& dist);

}  // namespace stumplab
