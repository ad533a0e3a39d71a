#include "ghzst/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ghzst/errors.hpp"

namespace ghzst {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Lower/upper bounds padded so a flat series still spans a visible range.
std::pair<double, double> range(const std::vector<double>& v, std::optional<double> extra) {
  double lo = *std::min_element(v.begin(), v.end());
  double hi = *std::max_element(v.begin(), v.end());
  if (extra) {
    lo = std::min(lo, *extra);
    hi = std::max(hi, *extra);
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  return {lo, hi};
}

}  // namespace

std::string render_svg(const LineChart& chart) {
  if (chart.xs.size() != chart.ys.size()) throw ShapeError("render_svg: xs and ys differ in length");
  if (chart.xs.empty()) throw ContractError("render_svg: empty series");

  const auto [x0, x1] = range(chart.xs, std::nullopt);
  const auto [y0, y1] = range(chart.ys, chart.reference_y);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
       "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  s += "<!-- ghzst 0.1.0 -->\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
       escape(chart.title) + "</text>\n";
  s += "<g stroke=\"black\" stroke-width=\"1\">\n";
  s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" +
       num(kTop + ph) + "\"/>\n";
  s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(kTop + ph) +
       "\"/>\n";
  constexpr int kTicks = 5;
  for (int k = 0; k <= kTicks; ++k) {
    const double fx = x0 + (x1 - x0) * k / kTicks, fy = y0 + (y1 - y0) * k / kTicks;
    s += "<line x1=\"" + num(px(fx)) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(px(fx)) + "\" y2=\"" +
         num(kTop + ph + 5) + "\"/>\n";
    s += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(py(fy)) + "\" x2=\"" + num(kLeft) + "\" y2=\"" +
         num(py(fy)) + "\"/>\n";
  }
  s += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = 0; k <= kTicks; ++k) {
    const double fx = x0 + (x1 - x0) * k / kTicks, fy = y0 + (y1 - y0) * k / kTicks;
    s += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(kTop + ph + 18) + "\" text-anchor=\"middle\">" +
         tick_label(fx) + "</text>\n";
    s += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py(fy) + 4) + "\" text-anchor=\"end\">" + tick_label(fy) +
         "</text>\n";
  }
  s += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 12) + "\" text-anchor=\"middle\">" +
       escape(chart.x_label) + "</text>\n";
  s += "<text x=\"16\" y=\"" + num(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
       num(kTop + ph / 2) + ")\">" + escape(chart.y_label) + "</text>\n</g>\n";
  if (chart.reference_y)
    s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(py(*chart.reference_y)) + "\" x2=\"" + num(kLeft + pw) +
         "\" y2=\"" + num(py(*chart.reference_y)) + "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  s += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < chart.xs.size(); ++i) s += (i ? " " : "") + num(px(chart.xs[i])) + "," + num(py(chart.ys[i]));
  s += "\"/>\n</svg>\n";
  return s;
}

}  // namespace ghzst
