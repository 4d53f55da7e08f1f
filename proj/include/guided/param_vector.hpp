// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_PARAM_VECTOR_HPP
#define GUIDED_PARAM_VECTOR_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace guided {

/// One named contiguous span of parameters. Matrix-shaped layers
/// (rows > 1 and cols > 1) carry rows*cols entries in row-major order;
/// plain vectors use cols == 1.
struct LayerSpan {
  std::string name;
  std::size_t offset = 0;
  std::size_t rows = 0;
  std::size_t cols = 1;

  std::size_t size() const { return rows * cols; }
  bool is_matrix() const { return rows > 1 && cols > 1; }

  bool operator==(const LayerSpan& other) const = default;
};

/// Shape specification used to build a Layout; offsets are derived so that
/// spans are contiguous, non-overlapping, and cover the storage exactly.
struct LayerSpec {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 1;
};

class Layout {
 public:
  explicit Layout(const std::vector<LayerSpec>& specs);

  std::size_t total_size() const { return total_size_; }
  std::size_t num_layers() const { return spans_.size(); }
  const LayerSpan& layer(std::size_t i) const { return spans_[i]; }
  const std::vector<LayerSpan>& layers() const { return spans_; }

  bool operator==(const Layout& other) const { return spans_ == other.spans_; }

 private:
  std::vector<LayerSpan> spans_;
  std::size_t total_size_ = 0;
};

using LayoutPtr = std::shared_ptr<const Layout>;

/// Convenience: layout with a single vector layer.
LayoutPtr single_layer_layout(const std::string& name, std::size_t size);
LayoutPtr make_layout(const std::vector<LayerSpec>& specs);

/**
 * Flat 64-bit float storage partitioned into named layers.
 *
 * Elementwise combination requires identical layouts; violations raise
 * LayoutError. All reductions run left to right in index order so that
 * identical inputs give bit-identical results.
 */
class ParamVector {
 public:
  ParamVector() = default;
  ParamVector(LayoutPtr layout, std::vector<double> values);

  static ParamVector zeros(LayoutPtr layout);

  const LayoutPtr& layout() const { return layout_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  bool same_layout(const ParamVector& other) const;

  /// this += scale * other.
  void add_scaled(const ParamVector& other, double scale);
  void scale(double s);
  void fill(double v);

  bool all_finite() const;

 private:
  LayoutPtr layout_;
  std::vector<double> values_;
};

/// Inner product, summed left to right. Layouts must match.
double dot(const ParamVector& a, const ParamVector& b);

/// Euclidean norm of the whole vector.
double norm(const ParamVector& a);

/// Euclidean norm per layer span.
std::map<std::string, double> layer_norms(const ParamVector& x);

}  // namespace guided

#endif  // GUIDED_PARAM_VECTOR_HPP
