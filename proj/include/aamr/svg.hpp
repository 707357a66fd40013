#pragma once

#include <optional>
#include <string>
#include <vector>

namespace aamr {

/// Minimal SVG line-plot writer: linear axes with ticks, polylines, circles
/// (for set outlines), optional horizontal reference line and a legend.
class SvgPlot {
 public:
  struct Series {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
    std::string color;
    bool dashed = false;
    bool markers = false;
  };

  SvgPlot(std::string title, std::string x_label, std::string y_label);

  void add_series(Series s) { series_.push_back(std::move(s)); }
  void add_circle(double cx, double cy, double radius, std::string color);
  void add_reference_line(double y) { reference_y_ = y; }
  /// Equal scaling on both axes (for geometric pictures).
  void set_equal_aspect(bool on) { equal_aspect_ = on; }

  std::string render(int width = 800, int height = 500) const;

  /// Distinct colours for up to ten series, cycling afterwards.
  static std::string palette(std::size_t i);

 private:
  struct Circle {
    double cx, cy, r;
    std::string color;
  };
  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
  std::vector<Circle> circles_;
  std::optional<double> reference_y_;
  bool equal_aspect_ = false;
};

}  // namespace aamr
