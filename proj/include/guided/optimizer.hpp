// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_OPTIMIZER_HPP
#define GUIDED_OPTIMIZER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "guided/param_vector.hpp"

namespace guided {

enum class OptimizerKind { adam, lamb, adafactor };

const char* to_string(OptimizerKind kind);
OptimizerKind optimizer_kind_from_string(const std::string& s);

/// Inner-optimizer hyperparameters. The effective learning rate of a step is
/// base_lr * alpha_scalar * schedule(t): alpha_scalar is the learnable
/// multiplier on the fixed schedule.
struct HyperParams {
  double base_lr = 0.1;
  double alpha_scalar = 1.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double decay_rate = 0.8;   // adafactor second-moment decay exponent
  double weight_decay = 0.0; // lamb only

  void validate() const;
};

/// Row/column second-moment accumulators for one matrix-shaped layer
/// (adafactor). Vector layers use the full second moment in OptState::v.
struct FactoredMoments {
  std::vector<double> row_acc;
  std::vector<double> col_acc;

  bool active() const { return !row_acc.empty(); }
};

/// Accumulator state. `t` counts completed steps; a step consumes state with
/// pre-step count t and produces state with t+1.
struct OptState {
  std::size_t t = 0;
  ParamVector m;
  ParamVector v;
  std::vector<FactoredMoments> factored;  // indexed by layer, adafactor only

  static OptState init(OptimizerKind kind, const LayoutPtr& layout);
};

struct StepOptions {
  bool want_tangents = true;
  /// Differentiate LAMB's trust ratio w.r.t. beta1 (off = stop-gradient).
  bool trust_ratio_grad = true;
  /// Differentiate Adam/LAMB's beta1 bias-correction term.
  bool bias_correction_grad = true;
  /// Adafactor update-clipping threshold d.
  double clip_threshold = 1.0;
};

/**
 * Result of one optimizer step. tangent_alpha and tangent_beta1 are the
 * forward-mode derivatives of new_params w.r.t. alpha_scalar and beta1,
 * taken through the single update map with incoming state held constant
 * (one-step horizon). `non_smooth` marks adafactor steps whose update RMS
 * lands on the clip boundary, where the update map is not differentiable.
 */
struct StepOutput {
  ParamVector new_params;
  OptState new_state;
  ParamVector tangent_alpha;
  ParamVector tangent_beta1;
  double lr_effective = 0.0;
  bool non_smooth = false;
};

StepOutput adam_step(const ParamVector& params, const ParamVector& grad, const OptState& state,
                     const HyperParams& h, double sched, const StepOptions& opts = {});

StepOutput lamb_step(const ParamVector& params, const ParamVector& grad, const OptState& state,
                     const HyperParams& h, double sched, const StepOptions& opts = {});

StepOutput adafactor_step(const ParamVector& params, const ParamVector& grad,
                          const OptState& state, const HyperParams& h, double sched,
                          const StepOptions& opts = {});

StepOutput optimizer_step(OptimizerKind kind, const ParamVector& params, const ParamVector& grad,
                          const OptState& state, const HyperParams& h, double sched,
                          const StepOptions& opts = {});

}  // namespace guided

#endif  // GUIDED_OPTIMIZER_HPP
