#include "subpoisson/grid.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "subpoisson/errors.hpp"

namespace subpoisson {
namespace {

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, std::string_view whole) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw DomainError("bad number '" + std::string(s) + "' in grid '" + std::string(whole) + "'");
  return v;
}

}  // namespace

void GridSpec::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
    throw DomainError("grid needs finite min < max: " + describe());
  if (count < 2) throw DomainError("grid needs at least 2 points: " + describe());
  if (spacing == Spacing::Logarithmic && !(min > 0))
    throw DomainError("log grid needs min > 0: " + describe());
}

std::vector<double> GridSpec::points() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(count));
  const double steps = count - 1;
  for (int i = 0; i < count; ++i) {
    const double s = i / steps;
    if (spacing == Spacing::Linear) {
      out[i] = min + (max - min) * s;
    } else {
      out[i] = std::exp(std::log(min) + (std::log(max) - std::log(min)) * s);
    }
  }
  out.front() = min;
  out.back() = max;
  return out;
}

std::string GridSpec::describe() const {
  return shortest(min) + ":" + shortest(max) + ":" + std::to_string(count) + ":" +
         (spacing == Spacing::Linear ? "lin" : "log");
}

GridSpec GridSpec::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ':') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 4)
    throw DomainError("grid must look like min:max:count:lin|log, got '" + std::string(text) + "'");
  GridSpec g;
  g.min = parse_double(parts[0], text);
  g.max = parse_double(parts[1], text);
  int count = 0;
  const auto res = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
  if (res.ec != std::errc() || res.ptr != parts[2].data() + parts[2].size())
    throw DomainError("bad point count in grid '" + std::string(text) + "'");
  g.count = count;
  if (parts[3] == "lin" || parts[3] == "linear") {
    g.spacing = Spacing::Linear;
  } else if (parts[3] == "log") {
    g.spacing = Spacing::Logarithmic;
  } else {
    throw DomainError("grid spacing must be lin or log, got '" + std::string(parts[3]) + "'");
  }
  g.validate();
  return g;
}

GridSpec log_grid(double min, double max, int count) {
  return GridSpec{min, max, count, Spacing::Logarithmic};
}

GridSpec linear_grid(double min, double max, int count) {
  return GridSpec{min, max, count, Spacing::Linear};
}

}  // namespace subpoisson
