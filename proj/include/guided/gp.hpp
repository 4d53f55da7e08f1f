// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_GP_HPP
#define GUIDED_GP_HPP

#include <cstddef>
#include <vector>

namespace guided {

/// Squared-exponential kernel with per-dimension length-scales.
struct GpKernel {
  std::vector<double> length_scales;
  double signal_variance = 1.0;
  double noise_variance = 1e-6;
};

struct GpPosterior {
  double mean = 0.0;
  double variance = 0.0;
};

/**
 * Exact Gaussian-process regression with a constant prior mean (the mean of
 * the observed targets). The kernel matrix is factored once per data change;
 * near-singular matrices get escalating jitter before failing.
 */
class GpModel {
 public:
  GpModel(GpKernel kernel, std::vector<std::vector<double>> xs, std::vector<double> ys);

  const GpKernel& kernel() const { return kernel_; }
  std::size_t num_observations() const { return ys_.size(); }
  double prior_mean() const { return prior_mean_; }

  void add(std::vector<double> x, double y);

  GpPosterior posterior(const std::vector<double>& x) const;

  /// Log marginal likelihood of the observations under the current kernel.
  double log_marginal_likelihood() const;

 private:
  void factorize();

  GpKernel kernel_;
  std::vector<std::vector<double>> xs_;
  std::vector<double> ys_;
  double prior_mean_ = 0.0;
  double jitter_ = 0.0;
  // Cholesky factor of K + noise*I (+ jitter) and alpha = K^-1 (y - mean).
  std::vector<double> chol_;  // row-major lower triangle, n x n
  std::vector<double> alpha_;
};

/// Expected improvement for minimization at incumbent value `incumbent`.
double expected_improvement(const GpModel& model, const std::vector<double>& x, double incumbent);

/**
 * Kernel selection by maximum marginal likelihood over a small fixed grid of
 * length-scales and noise levels (targets are standardized internally, so
 * signal variance is var(y)). Deterministic for a given data set.
 */
GpKernel fit_kernel_grid(const std::vector<std::vector<double>>& xs, const std::vector<double>& ys);

}  // namespace guided

#endif  // GUIDED_GP_HPP
