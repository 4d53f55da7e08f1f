// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "guided/gp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "guided/errors.hpp"
#include "guided/util.hpp"

namespace guided {

namespace {

double kernel_value(const GpKernel& k, const std::vector<double>& a, const std::vector<double>& b) {
  double q = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = (a[i] - b[i]) / k.length_scales[i];
    q += d * d;
  }
  return k.signal_variance * std::exp(-0.5 * q);
}

}  // namespace

GpModel::GpModel(GpKernel kernel, std::vector<std::vector<double>> xs, std::vector<double> ys)
    : kernel_(std::move(kernel)), xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size()) throw ConfigError("GpModel: xs/ys size mismatch");
  if (xs_.empty()) throw ConfigError("GpModel: needs at least one observation");
  const std::size_t d = xs_[0].size();
  if (kernel_.length_scales.size() != d) {
    throw ConfigError("GpModel: length-scale count does not match point dimension");
  }
  for (const auto& x : xs_) {
    if (x.size() != d) throw ConfigError("GpModel: inconsistent point dimensions");
  }
  factorize();
}

void GpModel::add(std::vector<double> x, double y) {
  if (x.size() != xs_[0].size()) throw ConfigError("GpModel::add: point dimension mismatch");
  xs_.push_back(std::move(x));
  ys_.push_back(y);
  factorize();
}

void GpModel::factorize() {
  const auto n = static_cast<Eigen::Index>(ys_.size());
  double mean = 0.0;
  for (double y : ys_) mean += y;
  prior_mean_ = mean / static_cast<double>(n);

  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = kernel_value(kernel_, xs_[static_cast<std::size_t>(i)],
                                    xs_[static_cast<std::size_t>(j)]);
      k(i, j) = v;
      k(j, i) = v;
    }
  }

  Eigen::VectorXd centered(n);
  for (Eigen::Index i = 0; i < n; ++i) centered(i) = ys_[static_cast<std::size_t>(i)] - prior_mean_;

  // Escalate jitter until the factorization succeeds.
  double jitter = 0.0;
  const double jitter_cap = 1e-2 * kernel_.signal_variance;
  for (;;) {
    Eigen::MatrixXd reg = k;
    reg.diagonal().array() += kernel_.noise_variance + jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(reg);
    if (llt.info() == Eigen::Success) {
      jitter_ = jitter;
      const Eigen::MatrixXd l = llt.matrixL();
      chol_.assign(l.data(), l.data() + n * n);  // column-major storage
      Eigen::VectorXd alpha = llt.solve(centered);
      alpha_.assign(alpha.data(), alpha.data() + n);
      return;
    }
    jitter = jitter == 0.0 ? 1e-12 * std::max(kernel_.signal_variance, 1e-300) : jitter * 10.0;
    if (jitter > jitter_cap) {
      throw NumericError("GP kernel matrix not positive definite even with jitter");
    }
  }
}

GpPosterior GpModel::posterior(const std::vector<double>& x) const {
  const auto n = static_cast<Eigen::Index>(ys_.size());
  Eigen::VectorXd kvec(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    kvec(i) = kernel_value(kernel_, xs_[static_cast<std::size_t>(i)], x);
  }
  const Eigen::Map<const Eigen::MatrixXd> l(chol_.data(), n, n);
  const Eigen::Map<const Eigen::VectorXd> alpha(alpha_.data(), n);

  GpPosterior post;
  post.mean = prior_mean_ + kvec.dot(alpha);
  const Eigen::VectorXd w = l.triangularView<Eigen::Lower>().solve(kvec);
  post.variance = std::max(kernel_.signal_variance - w.squaredNorm(), 0.0);
  return post;
}

double GpModel::log_marginal_likelihood() const {
  const auto n = static_cast<Eigen::Index>(ys_.size());
  const Eigen::Map<const Eigen::MatrixXd> l(chol_.data(), n, n);
  const Eigen::Map<const Eigen::VectorXd> alpha(alpha_.data(), n);
  Eigen::VectorXd centered(n);
  for (Eigen::Index i = 0; i < n; ++i) centered(i) = ys_[static_cast<std::size_t>(i)] - prior_mean_;
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) log_det += std::log(l(i, i));
  return -0.5 * centered.dot(alpha) - log_det -
         0.5 * static_cast<double>(n) * std::log(2.0 * M_PI);
}

double expected_improvement(const GpModel& model, const std::vector<double>& x, double incumbent) {
  const GpPosterior post = model.posterior(x);
  const double sigma = std::sqrt(post.variance);
  const double gap = incumbent - post.mean;
  if (sigma <= 1e-15) return std::max(gap, 0.0);
  const double z = gap / sigma;
  return std::max(gap * normal_cdf(z) + sigma * normal_pdf(z), 0.0);
}

GpKernel fit_kernel_grid(const std::vector<std::vector<double>>& xs,
                         const std::vector<double>& ys) {
  if (xs.empty() || xs.size() != ys.size()) throw ConfigError("fit_kernel_grid: bad data");
  const std::size_t d = xs[0].size();
  const std::size_t n = ys.size();

  double mean = 0.0;
  for (double y : ys) mean += y;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double y : ys) var += (y - mean) * (y - mean);
  var /= static_cast<double>(n);
  const double sd = std::sqrt(std::max(var, 1e-24));
  std::vector<double> standardized(n);
  for (std::size_t i = 0; i < n; ++i) standardized[i] = (ys[i] - mean) / sd;

  static const std::vector<double> kLengthGrid = {0.05, 0.1, 0.2, 0.4, 0.8, 1.6};
  static const std::vector<double> kNoiseGrid = {1e-8, 1e-6, 1e-4, 1e-2};

  // Per-dimension length-scale product for d <= 2; one shared scale above.
  std::vector<std::vector<double>> scale_candidates;
  if (d == 2) {
    for (double l0 : kLengthGrid) {
      for (double l1 : kLengthGrid) scale_candidates.push_back({l0, l1});
    }
  } else {
    for (double l : kLengthGrid) scale_candidates.emplace_back(d, l);
  }

  GpKernel best;
  double best_lml = -std::numeric_limits<double>::infinity();
  for (const std::vector<double>& scales : scale_candidates) {
    for (double noise : kNoiseGrid) {
      GpKernel candidate{scales, 1.0, noise};
      try {
        GpModel model(candidate, xs, standardized);
        const double lml = model.log_marginal_likelihood();
        if (lml > best_lml) {
          best_lml = lml;
          best = candidate;
        }
      } catch (const NumericError&) {
        continue;  // skip degenerate grid cells
      }
    }
  }
  if (!std::isfinite(best_lml)) throw NumericError("kernel grid fit failed for all candidates");
  best.signal_variance = sd * sd;
  best.noise_variance *= sd * sd;
  return best;
}

}  // namespace guided
