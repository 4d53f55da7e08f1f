// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_FD_ORACLE_HPP
#define GUIDED_FD_ORACLE_HPP

#include <cstddef>

#include "guided/guided_train.hpp"
#include "guided/optimizer.hpp"
#include "guided/reparam.hpp"
#include "guided/task.hpp"

namespace guided {

/// Everything needed to replay one optimizer step: parameters and state
/// going into the step, the batches involved, and the raw hyperparameters.
struct StepSnapshot {
  const Task* task = nullptr;
  OptimizerKind optimizer = OptimizerKind::adam;
  HyperParams h0;
  double sched_value = 1.0;
  ParamVector params;
  OptState state;
  std::size_t train_batch_index = 0;  // index into the training stream order
  Reparam rep_alpha;
  Reparam rep_beta1;
  StepOptions step_options;

  /// Replays the step at the snapshot's raw values; useful for probing
  /// smoothness (adafactor clip flag) and for the analytic route.
  StepOutput replay() const;
};

/**
 * Runs `step_index - 1` unguided steps and captures the state entering step
 * `step_index` (1-based). The snapshot's reparams carry the raw values of
 * h0's alpha_scalar and beta1.
 */
StepSnapshot capture_snapshot(const Task& task, OptimizerKind optimizer, const HyperParams& h0,
                              const Schedule& sched, std::size_t step_index, Rng& rng,
                              const StepOptions& step_options = {});

/**
 * Brute-force hypergradient: central difference of the guidance loss over
 * the raw hyperparameter, each side re-running the full optimizer step at
 * activate(raw +- h). Independent of the tangent code path.
 */
double fd_hypergrad_oracle(const StepSnapshot& snapshot, HyperName name, double h);

/// Analytic hypergradient at the snapshot via the tangent route.
double hypergrad_at(const StepSnapshot& snapshot, HyperName name);

/// Relative error with an absolute floor: |a-b| / max(|a|, |b|, floor).
double relative_error(double a, double b, double floor = 1e-12);

}  // namespace guided

#endif  // GUIDED_FD_ORACLE_HPP
