// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "guided/search_space.hpp"

#include <cmath>

#include "guided/errors.hpp"
#include "guided/util.hpp"

namespace guided {

const char* to_string(ScaleKind kind) {
  switch (kind) {
    case ScaleKind::linear: return "linear";
    case ScaleKind::log_scale: return "log";
    case ScaleKind::logit_scale: return "logit";
  }
  return "?";
}

void SearchDim::validate() const {
  if (!(lower < upper)) throw ConfigError("search dim '" + name + "': lower must be < upper");
  if (scale == ScaleKind::log_scale && !(lower > 0.0)) {
    throw ConfigError("search dim '" + name + "': log scale requires lower > 0");
  }
  if (scale == ScaleKind::logit_scale && !(lower > 0.0 && upper < 1.0)) {
    throw ConfigError("search dim '" + name + "': logit scale requires 0 < lower < upper < 1");
  }
}

double SearchDim::to_unit(double x) const {
  switch (scale) {
    case ScaleKind::linear:
      return (x - lower) / (upper - lower);
    case ScaleKind::log_scale:
      return (std::log(x) - std::log(lower)) / (std::log(upper) - std::log(lower));
    case ScaleKind::logit_scale:
      return (logit(x) - logit(lower)) / (logit(upper) - logit(lower));
  }
  throw ConfigError("bad scale kind");
}

double SearchDim::from_unit(double s) const {
  switch (scale) {
    case ScaleKind::linear:
      return lower + s * (upper - lower);
    case ScaleKind::log_scale:
      return std::exp(std::log(lower) + s * (std::log(upper) - std::log(lower)));
    case ScaleKind::logit_scale:
      return sigmoid(logit(lower) + s * (logit(upper) - logit(lower)));
  }
  throw ConfigError("bad scale kind");
}

void SearchSpace::validate() const {
  if (dims.empty()) throw ConfigError("search space needs at least one dimension");
  for (const SearchDim& d : dims) d.validate();
}

std::vector<double> SearchSpace::to_unit(const std::vector<double>& x) const {
  if (x.size() != dims.size()) throw ConfigError("point dimension mismatch");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = dims[i].to_unit(x[i]);
  return out;
}

std::vector<double> SearchSpace::from_unit(const std::vector<double>& s) const {
  if (s.size() != dims.size()) throw ConfigError("point dimension mismatch");
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = dims[i].from_unit(s[i]);
  return out;
}

}  // namespace guided
