#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "iclf/error.hpp"

namespace iclf {

// Minimal SVG plotting: polylines in a data rectangle mapped to a fixed
// canvas, equal-aspect option for curve portraits, log axes for decay
// plots.  No external dependencies.
class SvgPlot {
 public:
  SvgPlot(double width = 640.0, double height = 480.0, bool equal_aspect = false,
          bool log_y = false)
      : w_(width), h_(height), equal_aspect_(equal_aspect), log_y_(log_y) {}

  void add_polyline(const std::vector<double>& x, const std::vector<double>& y,
                    const std::string& color = "#1f6fb2",
                    double stroke_width = 1.2) {
    if (x.size() != y.size() || x.size() < 2)
      throw Error(ErrorCode::BadInput, "polyline needs matched x/y, size >= 2");
    Line line;
    line.color = color;
    line.width = stroke_width;
    line.x = x;
    line.y.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (log_y_ && !(y[i] > 0.0))
        throw Error(ErrorCode::NonpositiveValues, "log axis needs y > 0");
      line.y[i] = log_y_ ? std::log10(y[i]) : y[i];
    }
    lines_.push_back(std::move(line));
  }

  void add_curve(const std::vector<std::complex<double>>& z,
                 const std::string& color = "#1f6fb2",
                 double stroke_width = 1.2) {
    std::vector<double> x(z.size()), y(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      x[i] = z[i].real();
      y[i] = z[i].imag();
    }
    add_polyline(x, y, color, stroke_width);
  }

  void write(const std::string& path) const {
    if (lines_.empty())
      throw Error(ErrorCode::BadInput, "nothing to plot");
    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const Line& l : lines_)
      for (std::size_t i = 0; i < l.x.size(); ++i) {
        x_min = std::min(x_min, l.x[i]);
        x_max = std::max(x_max, l.x[i]);
        y_min = std::min(y_min, l.y[i]);
        y_max = std::max(y_max, l.y[i]);
      }
    double dx = x_max - x_min, dy = y_max - y_min;
    if (dx <= 0.0) dx = 1.0;
    if (dy <= 0.0) dy = 1.0;
    x_min -= 0.05 * dx;
    x_max += 0.05 * dx;
    y_min -= 0.05 * dy;
    y_max += 0.05 * dy;
    double sx = (w_ - 2.0 * margin_) / (x_max - x_min);
    double sy = (h_ - 2.0 * margin_) / (y_max - y_min);
    if (equal_aspect_) sx = sy = std::min(sx, sy);

    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw Error(ErrorCode::BadInput, "cannot open " + path);
    std::fprintf(f,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" "
                 "height=\"%g\" viewBox=\"0 0 %g %g\">\n",
                 w_, h_, w_, h_);
    std::fprintf(f,
                 "<rect width=\"%g\" height=\"%g\" fill=\"white\"/>\n", w_, h_);
    // Frame.
    std::fprintf(f,
                 "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" "
                 "fill=\"none\" stroke=\"#888\" stroke-width=\"0.8\"/>\n",
                 margin_, margin_, w_ - 2.0 * margin_, h_ - 2.0 * margin_);
    const double cx = 0.5 * (x_min + x_max), cy = 0.5 * (y_min + y_max);
    auto px = [&](double x) { return 0.5 * w_ + (x - cx) * sx; };
    auto py = [&](double y) { return 0.5 * h_ - (y - cy) * sy; };
    for (const Line& l : lines_) {
      std::fprintf(f,
                   "<polyline fill=\"none\" stroke=\"%s\" "
                   "stroke-width=\"%g\" points=\"",
                   l.color.c_str(), l.width);
      for (std::size_t i = 0; i < l.x.size(); ++i)
        std::fprintf(f, "%.3f,%.3f ", px(l.x[i]), py(l.y[i]));
      std::fprintf(f, "\"/>\n");
    }
    std::fprintf(f, "</svg>\n");
    std::fclose(f);
  }

 private:
  struct Line {
    std::vector<double> x, y;
    std::string color;
    double width = 1.2;
  };
  double w_, h_;
  double margin_ = 20.0;
  bool equal_aspect_;
  bool log_y_;
  std::vector<Line> lines_;
};

}  // namespace iclf
