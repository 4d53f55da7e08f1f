// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_UTIL_HPP
#define GUIDED_UTIL_HPP

#include <cmath>
#include <string>

namespace guided {

/// Shortest round-trip decimal representation (std::to_chars), so repeated
/// runs serialize bit-identical values to identical bytes.
std::string format_double(double v);

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double logit(double p) { return std::log(p / (1.0 - p)); }

/// Standard normal CDF.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Standard normal PDF.
inline double normal_pdf(double z) {
  static const double kInvSqrt2Pi = 0.3989422804014327;
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

}  // namespace guided

#endif  // GUIDED_UTIL_HPP
