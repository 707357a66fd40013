#include "aamr/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace aamr {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// "Nice" tick step covering span with roughly `target` ticks.
double tick_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double nice = norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0;
  return nice * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::add_circle(double cx, double cy, double radius, std::string color) {
  circles_.push_back({cx, cy, radius, std::move(color)});
}

std::string SvgPlot::palette(std::size_t i) {
  static const std::array<const char*, 10> colors{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return colors[i % colors.size()];
}

std::string SvgPlot::render(int width, int height) const {
  const double left = 80, right = 190, top = 40, bottom = 60;
  const double pw = width - left - right;
  const double ph = height - top - bottom;

  Range xr, yr;
  for (const auto& s : series_) {
    for (double v : s.xs) xr.add(v);
    for (double v : s.ys) yr.add(v);
  }
  for (const auto& c : circles_) {
    xr.add(c.cx - c.r);
    xr.add(c.cx + c.r);
    yr.add(c.cy - c.r);
    yr.add(c.cy + c.r);
  }
  if (reference_y_) yr.add(*reference_y_);
  xr.finish();
  yr.finish();
  if (equal_aspect_) {
    const double scale = std::max((xr.hi - xr.lo) / pw, (yr.hi - yr.lo) / ph);
    const double xc = 0.5 * (xr.lo + xr.hi), yc = 0.5 * (yr.lo + yr.hi);
    xr.lo = xc - 0.5 * scale * pw;
    xr.hi = xc + 0.5 * scale * pw;
    yr.lo = yc - 0.5 * scale * ph;
    yr.hi = yc + 0.5 * scale * ph;
  }

  auto sx = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return top + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title_)
     << "</text>\n";

  // axes and ticks
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  const double xs = tick_step(xr.hi - xr.lo, 6);
  for (double t = std::ceil(xr.lo / xs) * xs; t <= xr.hi + 1e-9 * xs; t += xs) {
    os << "<line x1=\"" << sx(t) << "\" y1=\"" << top + ph << "\" x2=\"" << sx(t) << "\" y2=\"" << top + ph + 5
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << sx(t) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
       << (std::abs(t) < 1e-12 * xs ? 0.0 : t) << "</text>\n";
  }
  const double ys = tick_step(yr.hi - yr.lo, 6);
  for (double t = std::ceil(yr.lo / ys) * ys; t <= yr.hi + 1e-9 * ys; t += ys) {
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << sy(t) << "\" x2=\"" << left << "\" y2=\"" << sy(t)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << sy(t) + 4 << "\" text-anchor=\"end\">"
       << (std::abs(t) < 1e-12 * ys ? 0.0 : t) << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">"
     << escape(x_label_) << "</text>\n";
  os << "<text transform=\"translate(18," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
     << escape(y_label_) << "</text>\n";

  os << "<svg x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" viewBox=\"" << left << ' ' << top << ' ' << pw << ' ' << ph << "\">\n";
  for (const auto& c : circles_) {
    const double rx = c.r / (xr.hi - xr.lo) * pw;
    const double ry = c.r / (yr.hi - yr.lo) * ph;
    os << "<ellipse cx=\"" << sx(c.cx) << "\" cy=\"" << sy(c.cy) << "\" rx=\"" << rx << "\" ry=\"" << ry
       << "\" fill=\"" << c.color << "\" fill-opacity=\"0.12\" stroke=\"" << c.color << "\"/>\n";
  }
  if (reference_y_) {
    os << "<line x1=\"" << left << "\" y1=\"" << sy(*reference_y_) << "\" x2=\"" << left + pw << "\" y2=\""
       << sy(*reference_y_) << "\" stroke=\"gray\" stroke-dasharray=\"2,3\"/>\n";
  }
  for (const auto& s : series_) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
    if (s.dashed) os << " stroke-dasharray=\"6,4\"";
    os << " points=\"";
    for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
      if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
      os << sx(s.xs[i]) << ',' << sy(s.ys[i]) << ' ';
    }
    os << "\"/>\n";
    if (s.markers) {
      for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
        if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
        os << "<circle cx=\"" << sx(s.xs[i]) << "\" cy=\"" << sy(s.ys[i]) << "\" r=\"2\" fill=\"" << s.color
           << "\"/>\n";
      }
    }
  }
  os << "</svg>\n";

  // legend
  double ly = top + 10;
  for (const auto& s : series_) {
    if (s.label.empty()) continue;
    os << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 42 << "\" y2=\"" << ly
       << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6,4\"" : "")
       << "/>\n";
    os << "<text x=\"" << left + pw + 48 << "\" y=\"" << ly + 4 << "\">" << escape(s.label) << "</text>\n";
    ly += 18;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace aamr
