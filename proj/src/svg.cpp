// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "guided/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace guided {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

constexpr double kWidth = 1000.0, kHeight = 600.0;
constexpr double kLeft = 80.0, kRight = 30.0, kTop = 50.0, kBottom = 60.0;

std::string fmt_pixel(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string render_line_chart(const std::vector<SvgSeries>& series,
                              const SvgChartOptions& options) {
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  bool log_y = options.log_y;
  if (log_y) {
    for (const SvgSeries& s : series) {
      for (double y : s.ys) {
        if (!(y > 0.0)) log_y = false;  // log axis only when all values allow it
      }
    }
  }
  bool any = false;
  for (const SvgSeries& s : series) {
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
      const double y = log_y ? std::log10(s.ys[i]) : s.ys[i];
      x_min = std::min(x_min, s.xs[i]);
      x_max = std::max(x_max, s.xs[i]);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
      any = true;
    }
  }
  if (!any) {
    x_min = 0.0;
    x_max = 1.0;
    y_min = 0.0;
    y_max = 1.0;
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) {
    const double pad = std::max(std::abs(y_min) * 0.1, 1e-12);
    y_min -= pad;
    y_max += pad;
  } else {
    const double pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;
  }

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  const auto py = [&](double y) {
    const double t = log_y ? std::log10(y) : y;
    return kTop + plot_h - (t - y_min) / (y_max - y_min) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 600\" "
         "font-family=\"sans-serif\" font-size=\"14\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"600\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fmt_pixel(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
         "font-size=\"18\">"
      << options.title << "</text>\n";

  // Axes and ticks.
  svg << "<line x1=\"" << fmt_pixel(kLeft) << "\" y1=\"" << fmt_pixel(kTop) << "\" x2=\""
      << fmt_pixel(kLeft) << "\" y2=\"" << fmt_pixel(kTop + plot_h)
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << fmt_pixel(kLeft) << "\" y1=\"" << fmt_pixel(kTop + plot_h)
      << "\" x2=\"" << fmt_pixel(kLeft + plot_w) << "\" y2=\"" << fmt_pixel(kTop + plot_h)
      << "\" stroke=\"black\"/>\n";
  const int kTicks = 5;
  for (int i = 0; i < kTicks; ++i) {
    const double frac = static_cast<double>(i) / (kTicks - 1);
    const double xv = x_min + frac * (x_max - x_min);
    const double xp = px(xv);
    svg << "<line x1=\"" << fmt_pixel(xp) << "\" y1=\"" << fmt_pixel(kTop + plot_h) << "\" x2=\""
        << fmt_pixel(xp) << "\" y2=\"" << fmt_pixel(kTop + plot_h + 6) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt_pixel(xp) << "\" y=\"" << fmt_pixel(kTop + plot_h + 22)
        << "\" text-anchor=\"middle\">" << fmt_tick(xv) << "</text>\n";
    const double yv_plot = y_min + frac * (y_max - y_min);
    const double yv = log_y ? std::pow(10.0, yv_plot) : yv_plot;
    const double yp = kTop + plot_h - frac * plot_h;
    svg << "<line x1=\"" << fmt_pixel(kLeft - 6) << "\" y1=\"" << fmt_pixel(yp) << "\" x2=\""
        << fmt_pixel(kLeft) << "\" y2=\"" << fmt_pixel(yp) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt_pixel(kLeft - 10) << "\" y=\"" << fmt_pixel(yp + 5)
        << "\" text-anchor=\"end\">" << fmt_tick(yv) << "</text>\n";
  }
  svg << "<text x=\"" << fmt_pixel(kLeft + plot_w / 2) << "\" y=\""
      << fmt_pixel(kHeight - 12) << "\" text-anchor=\"middle\">" << options.x_label
      << "</text>\n";
  svg << "<text x=\"18\" y=\"" << fmt_pixel(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << fmt_pixel(kTop + plot_h / 2)
      << ")\">" << options.y_label << (log_y ? " (log)" : "") << "</text>\n";

  // Series polylines, palette by order.
  for (std::size_t si = 0; si < series.size(); ++si) {
    const SvgSeries& s = series[si];
    const char* color = kPalette[si % kPaletteSize];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
      if (log_y && !(s.ys[i] > 0.0)) continue;
      if (!first) svg << ' ';
      svg << fmt_pixel(px(s.xs[i])) << ',' << fmt_pixel(py(s.ys[i]));
      first = false;
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << fmt_pixel(kLeft + plot_w - 4) << "\" y=\""
        << fmt_pixel(kTop + 16.0 * static_cast<double>(si + 1)) << "\" text-anchor=\"end\" fill=\""
        << color << "\">" << s.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace guided
