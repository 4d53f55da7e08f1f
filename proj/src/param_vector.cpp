// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "guided/param_vector.hpp"

#include <cmath>
#include <utility>

#include "guided/errors.hpp"

namespace guided {

Layout::Layout(const std::vector<LayerSpec>& specs) {
  if (specs.empty()) throw LayoutError("layout needs at least one layer");
  spans_.reserve(specs.size());
  std::size_t offset = 0;
  for (const LayerSpec& spec : specs) {
    if (spec.rows == 0 || spec.cols == 0) {
      throw LayoutError("layer '" + spec.name + "' has zero extent");
    }
    spans_.push_back(LayerSpan{spec.name, offset, spec.rows, spec.cols});
    offset += spec.rows * spec.cols;
  }
  total_size_ = offset;
}

LayoutPtr single_layer_layout(const std::string& name, std::size_t size) {
  return make_layout({LayerSpec{name, size, 1}});
}

LayoutPtr make_layout(const std::vector<LayerSpec>& specs) {
  return std::make_shared<const Layout>(specs);
}

ParamVector::ParamVector(LayoutPtr layout, std::vector<double> values)
    : layout_(std::move(layout)), values_(std::move(values)) {
  if (!layout_) throw LayoutError("ParamVector requires a layout");
  if (values_.size() != layout_->total_size()) {
    throw LayoutError("value count " + std::to_string(values_.size()) +
                      " does not match layout size " + std::to_string(layout_->total_size()));
  }
}

ParamVector ParamVector::zeros(LayoutPtr layout) {
  const std::size_t n = layout->total_size();
  return ParamVector(std::move(layout), std::vector<double>(n, 0.0));
}

bool ParamVector::same_layout(const ParamVector& other) const {
  if (layout_ == other.layout_) return true;
  if (!layout_ || !other.layout_) return false;
  return *layout_ == *other.layout_;
}

namespace {
void require_same_layout(const ParamVector& a, const ParamVector& b, const char* op) {
  if (!a.same_layout(b)) {
    throw LayoutError(std::string(op) + ": layout mismatch");
  }
}
}  // namespace

void ParamVector::add_scaled(const ParamVector& other, double scale) {
  require_same_layout(*this, other, "add_scaled");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += scale * other.values_[i];
}

void ParamVector::scale(double s) {
  for (double& v : values_) v *= s;
}

void ParamVector::fill(double v) {
  for (double& x : values_) x = v;
}

bool ParamVector::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double dot(const ParamVector& a, const ParamVector& b) {
  require_same_layout(a, b, "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm(const ParamVector& a) { return std::sqrt(dot(a, a)); }

std::map<std::string, double> layer_norms(const ParamVector& x) {
  std::map<std::string, double> out;
  for (const LayerSpan& span : x.layout()->layers()) {
    double acc = 0.0;
    for (std::size_t i = span.offset; i < span.offset + span.size(); ++i) acc += x[i] * x[i];
    out[span.name] = std::sqrt(acc);
  }
  return out;
}

}  // namespace guided
