// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_GUIDED_TRAIN_HPP
#define GUIDED_GUIDED_TRAIN_HPP

#include <cstddef>
#include <map>

#include "guided/optimizer.hpp"
#include "guided/reparam.hpp"
#include "guided/run_log.hpp"
#include "guided/schedule.hpp"
#include "guided/task.hpp"

namespace guided {

/**
 * Raw-space hypergradients: for each guided hyperparameter, the guidance
 * gradient at the post-step parameters dotted with that hyperparameter's
 * step tangent, chained through the activation derivative.
 *
 * guidance_grad must be evaluated at step_out.new_params.
 */
std::map<HyperName, double> hypergradient(const ParamVector& guidance_grad,
                                          const StepOutput& step_out,
                                          const std::vector<Reparam>& reparams,
                                          const MetaConfig& mc);

struct TrainOptions {
  std::size_t eval_every = 0;      // 0 disables dev evaluation
  bool resample_guidance = false;  // cycle the held-out guidance pool per step
  StepOptions step_options{};
};

/**
 * The full guided training loop. Each step: train gradient at the current
 * parameters, one optimizer step with tangents, guidance gradient at the
 * new parameters, raw-space hypergradients, and one meta-Adam update per
 * guided hyperparameter (applied to the following step).
 *
 * Both hyperparameters are always evaluated through their activations, with
 * raws initialized from h0; non-guided ones simply never receive meta
 * updates. A zero meta_lr therefore reproduces the unguided trajectory
 * bit-exactly.
 */
RunLog guided_train(const Task& task, OptimizerKind optimizer, const HyperParams& h0,
                    const Schedule& sched, const MetaConfig& mc, std::size_t steps, Rng& rng,
                    const TrainOptions& options = {});

}  // namespace guided

#endif  // GUIDED_GUIDED_TRAIN_HPP
