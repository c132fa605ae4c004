#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace subpoisson {

enum class Spacing { Linear, Logarithmic };

/// One sweep axis: `count` points from `min` to `max` inclusive.
struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  Spacing spacing = Spacing::Linear;

  /// Validates min < max, count >= 2, and min > 0 for log spacing.
  void validate() const;
  /// Grid points as doubles; the endpoints are exactly min and max.
  std::vector<double> points() const;
  /// "min:max:count:lin|log" with round-trippable numbers.
  std::string describe() const;
  /// Inverse of describe(); throws DomainError on malformed text.
  static GridSpec parse(std::string_view text);
};

GridSpec log_grid(double min, double max, int count);
GridSpec linear_grid(double min, double max, int count);

}  // namespace subpoisson
