#pragma once

// Minimal static SVG 1.1 line charts.

#include <string>
#include <utility>
#include <vector>

namespace subpoisson {

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 800;
  int height = 500;
};

/// One polyline per series, axes with ticks, and a legend. Points that are
/// not finite, or not positive on a log axis, are dropped.
std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options);

/// Escapes &, <, >, " and ' for XML text and attributes.
std::string xml_escape(const std::string& text);

}  // namespace subpoisson
