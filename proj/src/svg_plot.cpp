#include "subpoisson/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "subpoisson/errors.hpp"

namespace subpoisson {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double transform(double v) const { return log ? std::log10(v) : v; }
  double unit(double v) const { return (transform(v) - transform(lo)) / (transform(hi) - transform(lo)); }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      const int a = static_cast<int>(std::floor(std::log10(lo)));
      const int b = static_cast<int>(std::ceil(std::log10(hi)));
      const int step = std::max(1, (b - a) / 8);
      for (int e = a; e <= b; e += step) {
        const double t = std::pow(10.0, e);
        if (t >= lo * (1 - 1e-12) && t <= hi * (1 + 1e-12)) out.push_back(t);
      }
      if (out.empty()) out = {lo, hi};
    } else {
      for (int i = 0; i <= 5; ++i) out.push_back(lo + (hi - lo) * i / 5.0);
    }
    return out;
  }
};

bool usable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }

Axis fit_axis(const std::vector<PlotSeries>& series, bool first, bool log_x, bool log_y) {
  const bool log = first ? log_x : log_y;
  Axis axis;
  axis.log = log;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (!usable(x, log_x) || !usable(y, log_y)) continue;
      const double v = first ? x : y;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (!std::isfinite(lo)) {
    lo = log ? 1.0 : 0.0;
    hi = log ? 10.0 : 1.0;
  }
  if (lo == hi) {
    if (log) {
      lo /= 2.0;
      hi *= 2.0;
    } else {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  axis.lo = lo;
  axis.hi = hi;
  return axis;
}

}  // namespace

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& o) {
  if (o.width < 200 || o.height < 150) throw DomainError("plot is too small");
  const double left = 80, right = 180, top = 40, bottom = 60;
  const double pw = o.width - left - right;
  const double ph = o.height - top - bottom;
  const Axis ax = fit_axis(series, true, o.log_x, o.log_y);
  const Axis ay = fit_axis(series, false, o.log_x, o.log_y);
  const auto px = [&](double x) { return left + ax.unit(x) * pw; };
  const auto py = [&](double y) { return top + (1.0 - ay.unit(y)) * ph; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(o.width) +
       "\" height=\"" + std::to_string(o.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(o.width) + "\" height=\"" +
       std::to_string(o.height) + "\" fill=\"white\"/>\n";
  if (!o.title.empty())
    s += "<text x=\"" + num(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
         xml_escape(o.title) + "</text>\n";

  s += "<g stroke=\"black\" fill=\"none\">\n";
  s += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" +
       num(ph) + "\"/>\n";
  s += "</g>\n<g fill=\"black\">\n";
  for (double t : ax.ticks()) {
    const double x = px(t);
    s += "<line x1=\"" + num(x) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(x) + "\" y2=\"" +
         num(top + ph + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(x) + "\" y=\"" + num(top + ph + 18) + "\" text-anchor=\"middle\">" +
         num(t) + "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double y = py(t);
    s += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left) + "\" y2=\"" +
         num(y) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(left - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + num(t) +
         "</text>\n";
  }
  if (!o.x_label.empty())
    s += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(o.height - 15.0) +
         "\" text-anchor=\"middle\">" + xml_escape(o.x_label) + "</text>\n";
  if (!o.y_label.empty())
    s += "<text x=\"18\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         num(top + ph / 2) + ")\">" + xml_escape(o.y_label) + "</text>\n";
  s += "</g>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    std::string pts;
    for (const auto& [x, y] : series[i].points) {
      if (!usable(x, o.log_x) || !usable(y, o.log_y)) continue;
      if (!pts.empty()) pts += ' ';
      pts += num(px(x)) + "," + num(py(y));
    }
    s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" +
         pts + "\"/>\n";
    const double ly = top + 10 + 18.0 * static_cast<double>(i);
    const double lx = left + pw + 15;
    s += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 20) + "\" y2=\"" + num(ly) +
         "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + num(lx + 26) + "\" y=\"" + num(ly + 4) + "\">" + xml_escape(series[i].name) +
         "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace subpoisson
