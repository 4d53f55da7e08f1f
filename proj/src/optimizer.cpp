// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "guided/optimizer.hpp"

#include <cmath>

#include "guided/errors.hpp"

namespace guided {

namespace {

// Additive floor inside adafactor's second-moment accumulation.
constexpr double kEps1 = 1e-30;
// Relative window around the clip threshold treated as on-boundary.
constexpr double kClipBoundaryWindow = 1e-4;

void check_layouts(const ParamVector& params, const ParamVector& grad, const OptState& state) {
  if (!params.same_layout(grad) || !params.same_layout(state.m)) {
    throw LayoutError("optimizer step: params/grad/state layout mismatch");
  }
}

void check_finite(const ParamVector& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p[i])) {
      throw NumericError("non-finite parameter update", std::nullopt, i);
    }
  }
}

}  // namespace

const char* to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::adam: return "adam";
    case OptimizerKind::lamb: return "lamb";
    case OptimizerKind::adafactor: return "adafactor";
  }
  return "?";
}

OptimizerKind optimizer_kind_from_string(const std::string& s) {
  if (s == "adam") return OptimizerKind::adam;
  if (s == "lamb") return OptimizerKind::lamb;
  if (s == "adafactor") return OptimizerKind::adafactor;
  throw ConfigError("unknown optimizer kind '" + s + "'");
}

void HyperParams::validate() const {
  if (!(base_lr > 0.0)) throw ConfigError("base_lr must be > 0");
  if (!(alpha_scalar > 0.0)) throw ConfigError("alpha_scalar must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ConfigError("beta1 must be in [0, 1)");
  if (!(beta2 > 0.0 && beta2 < 1.0)) throw ConfigError("beta2 must be in (0, 1)");
  if (!(eps > 0.0)) throw ConfigError("eps must be > 0");
  if (!(decay_rate > 0.0 && decay_rate <= 1.0)) throw ConfigError("decay_rate must be in (0, 1]");
  if (weight_decay < 0.0) throw ConfigError("weight_decay must be >= 0");
}

OptState OptState::init(OptimizerKind kind, const LayoutPtr& layout) {
  OptState s;
  s.t = 0;
  s.m = ParamVector::zeros(layout);
  s.v = ParamVector::zeros(layout);
  if (kind == OptimizerKind::adafactor) {
    s.factored.resize(layout->num_layers());
    for (std::size_t li = 0; li < layout->num_layers(); ++li) {
      const LayerSpan& span = layout->layer(li);
      if (span.is_matrix()) {
        s.factored[li].row_acc.assign(span.rows, 0.0);
        s.factored[li].col_acc.assign(span.cols, 0.0);
      }
    }
  }
  return s;
}

namespace {

/// Shared per-step scalars for the Adam-style first/second moment update.
/// The bias-corrected moments are formed from hoisted coefficients
/// (beta/bc and (1-beta)/bc) so that at t=1 with zero state m_hat equals g
/// bit-exactly and the two terms of d(m_hat)/d(beta1) cancel to exact zero.
struct MomentCoeffs {
  std::size_t t;
  double bc1, bc2;      // bias corrections 1 - beta^t
  double cm1, cg1;      // m_hat = cm1*m + cg1*g
  double cm2, cg2;      // v_hat = cm2*v + cg2*g^2
  double dpow;          // d(beta1^t)/d(beta1)

  MomentCoeffs(const HyperParams& h, std::size_t pre_step_count) {
    t = pre_step_count + 1;
    const double td = static_cast<double>(t);
    bc1 = 1.0 - std::pow(h.beta1, td);
    bc2 = 1.0 - std::pow(h.beta2, td);
    cm1 = h.beta1 / bc1;
    cg1 = (1.0 - h.beta1) / bc1;
    cm2 = h.beta2 / bc2;
    cg2 = (1.0 - h.beta2) / bc2;
    dpow = td * std::pow(h.beta1, td - 1.0);
  }

  /// d(m_hat)/d(beta1) with incoming m held constant.
  double dm_hat(double m, double g, double m_hat, bool bias_correction_grad) const {
    const double numerator = bias_correction_grad ? (m - g) + m_hat * dpow : (m - g);
    return numerator / bc1;
  }
};

}  // namespace

StepOutput adam_step(const ParamVector& params, const ParamVector& grad, const OptState& state,
                     const HyperParams& h, double sched, const StepOptions& opts) {
  check_layouts(params, grad, state);
  const MomentCoeffs mc(h, state.t);
  const double alpha_eff = h.base_lr * h.alpha_scalar * sched;

  StepOutput out;
  out.new_params = params;
  out.new_state = state;
  out.new_state.t = mc.t;
  out.lr_effective = alpha_eff;
  if (opts.want_tangents) {
    out.tangent_alpha = ParamVector::zeros(params.layout());
    out.tangent_beta1 = ParamVector::zeros(params.layout());
  }

  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    const double m = state.m[i];
    const double m_hat = mc.cm1 * m + mc.cg1 * g;
    const double v_hat = mc.cm2 * state.v[i] + mc.cg2 * g * g;
    const double denom = std::sqrt(v_hat) + h.eps;
    out.new_state.m[i] = h.beta1 * m + (1.0 - h.beta1) * g;
    out.new_state.v[i] = h.beta2 * state.v[i] + (1.0 - h.beta2) * g * g;
    out.new_params[i] = params[i] - alpha_eff * m_hat / denom;
    if (opts.want_tangents) {
      out.tangent_alpha[i] = -h.base_lr * sched * m_hat / denom;
      out.tangent_beta1[i] =
          -alpha_eff * mc.dm_hat(m, g, m_hat, opts.bias_correction_grad) / denom;
    }
  }
  check_finite(out.new_params);
  return out;
}

StepOutput lamb_step(const ParamVector& params, const ParamVector& grad, const OptState& state,
                     const HyperParams& h, double sched, const StepOptions& opts) {
  check_layouts(params, grad, state);
  const MomentCoeffs mc(h, state.t);
  const double alpha_eff = h.base_lr * h.alpha_scalar * sched;

  StepOutput out;
  out.new_params = params;
  out.new_state = state;
  out.new_state.t = mc.t;
  out.lr_effective = alpha_eff;
  if (opts.want_tangents) {
    out.tangent_alpha = ParamVector::zeros(params.layout());
    out.tangent_beta1 = ParamVector::zeros(params.layout());
  }

  std::vector<double> u(params.size());
  std::vector<double> du(params.size());

  for (const LayerSpan& span : params.layout()->layers()) {
    const std::size_t lo = span.offset, hi = span.offset + span.size();
    double theta_sq = 0.0, u_sq = 0.0, u_du = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double g = grad[i];
      const double m = state.m[i];
      const double m_hat = mc.cm1 * m + mc.cg1 * g;
      const double v_hat = mc.cm2 * state.v[i] + mc.cg2 * g * g;
      out.new_state.m[i] = h.beta1 * m + (1.0 - h.beta1) * g;
      out.new_state.v[i] = h.beta2 * state.v[i] + (1.0 - h.beta2) * g * g;
      const double denom = std::sqrt(v_hat) + h.eps;
      u[i] = m_hat / denom + h.weight_decay * params[i];
      du[i] = mc.dm_hat(m, g, m_hat, opts.bias_correction_grad) / denom;
      theta_sq += params[i] * params[i];
      u_sq += u[i] * u[i];
      u_du += u[i] * du[i];
    }
    const double theta_norm = std::sqrt(theta_sq);
    const double u_norm = std::sqrt(u_sq);
    const bool degenerate = theta_norm == 0.0 || u_norm == 0.0;
    const double ratio = degenerate ? 1.0 : theta_norm / u_norm;
    // d(ratio)/d(beta1); zero at the degenerate fixed point and under the
    // stop-gradient option.
    double dratio = 0.0;
    if (!degenerate && opts.trust_ratio_grad) {
      dratio = -theta_norm * u_du / (u_norm * u_norm * u_norm);
    }
    for (std::size_t i = lo; i < hi; ++i) {
      out.new_params[i] = params[i] - alpha_eff * ratio * u[i];
      if (opts.want_tangents) {
        out.tangent_alpha[i] = -h.base_lr * sched * ratio * u[i];
        out.tangent_beta1[i] = -alpha_eff * (dratio * u[i] + ratio * du[i]);
      }
    }
  }
  check_finite(out.new_params);
  return out;
}

StepOutput adafactor_step(const ParamVector& params, const ParamVector& grad,
                          const OptState& state, const HyperParams& h, double sched,
                          const StepOptions& opts) {
  check_layouts(params, grad, state);
  if (state.factored.size() != params.layout()->num_layers()) {
    throw LayoutError("adafactor_step: state not initialized for adafactor");
  }
  const std::size_t t = state.t + 1;
  const double beta2_hat = 1.0 - std::pow(static_cast<double>(t), -h.decay_rate);
  const double alpha_eff = h.base_lr * h.alpha_scalar * sched;

  StepOutput out;
  out.new_params = params;
  out.new_state = state;
  out.new_state.t = t;
  out.lr_effective = alpha_eff;
  if (opts.want_tangents) {
    out.tangent_alpha = ParamVector::zeros(params.layout());
    out.tangent_beta1 = ParamVector::zeros(params.layout());
  }

  std::vector<double> u(params.size());

  for (std::size_t li = 0; li < params.layout()->num_layers(); ++li) {
    const LayerSpan& span = params.layout()->layer(li);
    const std::size_t lo = span.offset;
    if (span.is_matrix() && state.factored[li].active()) {
      const std::size_t rows = span.rows, cols = span.cols;
      FactoredMoments& fm = out.new_state.factored[li];
      for (std::size_t r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < cols; ++c) {
          const double g = grad[lo + r * cols + c];
          acc += g * g + kEps1;
        }
        fm.row_acc[r] = beta2_hat * state.factored[li].row_acc[r] +
                        (1.0 - beta2_hat) * acc / static_cast<double>(cols);
      }
      for (std::size_t c = 0; c < cols; ++c) {
        double acc = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
          const double g = grad[lo + r * cols + c];
          acc += g * g + kEps1;
        }
        fm.col_acc[c] = beta2_hat * state.factored[li].col_acc[c] +
                        (1.0 - beta2_hat) * acc / static_cast<double>(rows);
      }
      double row_mean = 0.0;
      for (std::size_t r = 0; r < rows; ++r) row_mean += fm.row_acc[r];
      row_mean /= static_cast<double>(rows);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          const std::size_t i = lo + r * cols + c;
          const double v_hat = fm.row_acc[r] * fm.col_acc[c] / row_mean;
          u[i] = grad[i] / std::sqrt(v_hat);
        }
      }
    } else {
      for (std::size_t i = lo; i < lo + span.size(); ++i) {
        const double g = grad[i];
        const double v_new = beta2_hat * state.v[i] + (1.0 - beta2_hat) * (g * g + kEps1);
        out.new_state.v[i] = v_new;
        u[i] = g / std::sqrt(v_new);
      }
    }

    // Per-layer RMS clipping of the normalized update.
    double mean_sq = 0.0;
    for (std::size_t i = lo; i < lo + span.size(); ++i) mean_sq += u[i] * u[i];
    mean_sq /= static_cast<double>(span.size());
    const double rms = std::sqrt(mean_sq);
    const double ratio = rms / opts.clip_threshold;
    if (std::abs(ratio - 1.0) <= kClipBoundaryWindow) out.non_smooth = true;
    if (ratio > 1.0) {
      for (std::size_t i = lo; i < lo + span.size(); ++i) u[i] /= ratio;
    }
  }

  for (std::size_t i = 0; i < params.size(); ++i) {
    const double m_new = h.beta1 * state.m[i] + (1.0 - h.beta1) * alpha_eff * u[i];
    out.new_state.m[i] = m_new;
    out.new_params[i] = params[i] - m_new;
    if (opts.want_tangents) {
      out.tangent_alpha[i] = -(1.0 - h.beta1) * h.base_lr * sched * u[i];
      out.tangent_beta1[i] = -(state.m[i] - alpha_eff * u[i]);
    }
  }
  check_finite(out.new_params);
  return out;
}

StepOutput optimizer_step(OptimizerKind kind, const ParamVector& params, const ParamVector& grad,
                          const OptState& state, const HyperParams& h, double sched,
                          const StepOptions& opts) {
  switch (kind) {
    case OptimizerKind::adam: return adam_step(params, grad, state, h, sched, opts);
    case OptimizerKind::lamb: return lamb_step(params, grad, state, h, sched, opts);
    case OptimizerKind::adafactor: return adafactor_step(params, grad, state, h, sched, opts);
  }
  throw ConfigError("bad optimizer kind");
}

}  // namespace guided
