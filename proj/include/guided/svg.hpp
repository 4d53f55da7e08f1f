// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_SVG_HPP
#define GUIDED_SVG_HPP

#include <string>
#include <vector>

namespace guided {

struct SvgSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
};

struct SvgChartOptions {
  std::string title;
  std::string x_label = "step";
  std::string y_label;
  bool log_y = false;
};

/**
 * Hand-rolled line chart (viewBox 1000x600, linear axes, optional log-y).
 * Colors are assigned from a fixed palette by series order, and every number
 * is emitted with shortest round-trip formatting, so identical inputs yield
 * byte-identical SVG.
 */
std::string render_line_chart(const std::vector<SvgSeries>& series,
                              const SvgChartOptions& options);

}  // namespace guided

#endif  // GUIDED_SVG_HPP
