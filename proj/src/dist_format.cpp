#include "stumplab/dist_format.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace stumplab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::string_view literal, const std::string& why) {
  throw std::invalid_argument("malformed distribution literal '" + std::string(literal) +
                              "': " + why);
}

std::vector<double> parse_params(std::string_view literal, std::string_view inner) {
  std::vector<double> params;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = inner.find(',', start);
    const std::string_view token =
        trim(inner.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (token.empty()) fail(literal, "empty parameter");
    params.push_back(parse_double(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return params;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  double value{};
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  return value;
}

Distribution parse_distribution(std::string_view literal) {
  std::vector<WeightedComponent> components;
  std::size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < literal.size() && std::isspace(static_cast<unsigned char>(literal[pos]))) ++pos;
  };

  while (true) {
    skip_ws();
    std::size_t kind_start = pos;
    while (pos < literal.size() && std::isalpha(static_cast<unsigned char>(literal[pos]))) ++pos;
    const std::string_view kind = literal.substr(kind_start, pos - kind_start);
    if (kind.empty()) fail(literal, "expected a component kind");
    skip_ws();
    if (pos >= literal.size() || literal[pos] != '{') fail(literal, "expected '{' after kind");
    const std::size_t close = literal.find('}', pos);
    if (close == std::string_view::npos) fail(literal, "missing '}'");
    const std::vector<double> params = parse_params(literal, literal.substr(pos + 1, close - pos - 1));
    pos = close + 1;
    skip_ws();
    if (pos >= literal.size() || literal[pos] != ':') fail(literal, "expected ':' before weight");
    ++pos;
    std::size_t weight_end = literal.find(',', pos);
    if (weight_end == std::string_view::npos) weight_end = literal.size();
    const double weight = parse_double(literal.substr(pos, weight_end - pos));
    pos = weight_end;

    Component component;
    if (kind == "atom") {
      if (params.size() != 1) fail(literal, "atom takes one parameter");
      component = Atom{params[0]};
    } else if (kind == "uniform") {
      if (params.size() != 2) fail(literal, "uniform takes two parameters");
      component = UniformInterval{params[0], params[1]};
    } else if (kind == "exp") {
      if (params.size() != 1) fail(literal, "exp takes one parameter");
      component = Exponential{params[0]};
    } else {
      fail(literal, "unknown component kind '" + std::string(kind) + "'");
    }
    components.push_back({weight, component});

    if (pos >= literal.size()) break;
    ++pos;  // consume the separating comma
  }
  if (components.empty()) fail(literal, "no components");
  return Distribution(std::move(components));
}

std::string format_distribution(const Distribution& dist) {
  std::string out;
  bool first = true;
  for (const auto& wc : dist.components()) {
    if (!first) out += ',';
    first = false;
    if (const auto* a = std::get_if<Atom>(&wc.component)) {
      out += "atom{" + format_double(a->location) + "}";
    } else if (const auto* u = std::get_if<UniformInterval>(&wc.component)) {
      out += "uniform{" + format_double(u->lo) + "," + format_double(u->hi) + "}";
    } else if (const auto* e = std::get_if<Exponential>(&wc.component)) {
      out += "exp{" + format_double(e->rate) + "}";
    }
    out += ":" + format_double(wc.weight);
  }
  return out;
}

}  // namespace stumplab
