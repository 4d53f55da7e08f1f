// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_SEARCH_SPACE_HPP
#define GUIDED_SEARCH_SPACE_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace guided {

enum class ScaleKind { linear, log_scale, logit_scale };

const char* to_string(ScaleKind kind);

/// One search dimension. Optimization happens in unit coordinates [0, 1]
/// under the dimension's scale, so log/logit dimensions are searched in the
/// same geometry as the corresponding learned reparameterizations.
struct SearchDim {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  ScaleKind scale = ScaleKind::linear;

  void validate() const;
  double to_unit(double x) const;
  double from_unit(double s) const;
};

struct SearchSpace {
  std::vector<SearchDim> dims;

  void validate() const;
  std::vector<double> to_unit(const std::vector<double>& x) const;
  std::vector<double> from_unit(const std::vector<double>& s) const;
};

}  // namespace guided

#endif  // GUIDED_SEARCH_SPACE_HPP
