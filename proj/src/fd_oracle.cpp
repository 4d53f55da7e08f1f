// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "guided/fd_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "guided/errors.hpp"

namespace guided {

namespace {

StepOutput run_step_at(const StepSnapshot& snapshot, double alpha_value, double beta1_value,
                       bool want_tangents) {
  const Batch& batch = snapshot.task->train_batch(snapshot.train_batch_index);
  auto [loss, grad] = loss_and_grad(*snapshot.task, snapshot.params, batch);
  (void)loss;
  HyperParams h = snapshot.h0;
  h.alpha_scalar = alpha_value;
  h.beta1 = beta1_value;
  StepOptions opts = snapshot.step_options;
  opts.want_tangents = want_tangents;
  return optimizer_step(snapshot.optimizer, snapshot.params, grad, snapshot.state, h,
                        snapshot.sched_value, opts);
}

}  // namespace

StepOutput StepSnapshot::replay() const {
  return run_step_at(*this, activate(rep_alpha).value, activate(rep_beta1).value, true);
}

StepSnapshot capture_snapshot(const Task& task, OptimizerKind optimizer, const HyperParams& h0,
                              const Schedule& sched, std::size_t step_index, Rng& rng,
                              const StepOptions& step_options) {
  if (step_index < 1) throw ConfigError("capture_snapshot: step_index is 1-based");
  h0.validate();

  StepSnapshot snap;
  snap.task = &task;
  snap.optimizer = optimizer;
  snap.h0 = h0;
  snap.params = init_params(task, rng);
  snap.state = OptState::init(optimizer, task.layout());
  snap.rep_alpha = Reparam::alpha(h0.alpha_scalar);
  snap.rep_beta1 = Reparam::momentum(h0.beta1);
  snap.step_options = step_options;

  StepOptions warmup_opts = step_options;
  warmup_opts.want_tangents = false;
  for (std::size_t t = 0; t + 1 < step_index; ++t) {
    const Batch& batch = task.train_batch(t);
    auto [loss, grad] = loss_and_grad(task, snap.params, batch);
    (void)loss;
    StepOutput out = optimizer_step(optimizer, snap.params, grad, snap.state, h0,
                                    sched.value(t + 1), warmup_opts);
    snap.params = std::move(out.new_params);
    snap.state = std::move(out.new_state);
  }
  snap.train_batch_index = step_index - 1;
  snap.sched_value = sched.value(step_index);
  return snap;
}

double fd_hypergrad_oracle(const StepSnapshot& snapshot, HyperName name, double h) {
  if (!(h > 0.0)) throw ConfigError("fd_hypergrad_oracle: h must be > 0");

  const auto guidance_loss_at = [&](double raw_alpha, double raw_beta1) {
    Reparam ra = snapshot.rep_alpha;
    ra.raw = raw_alpha;
    Reparam rb = snapshot.rep_beta1;
    rb.raw = raw_beta1;
    const StepOutput out =
        run_step_at(snapshot, activate(ra).value, activate(rb).value, false);
    return loss_and_grad(*snapshot.task, out.new_params, snapshot.task->guidance_batch()).first;
  };

  double a = snapshot.rep_alpha.raw;
  double b = snapshot.rep_beta1.raw;
  double plus, minus;
  if (name == HyperName::alpha_scalar) {
    plus = guidance_loss_at(a + h, b);
    minus = guidance_loss_at(a - h, b);
  } else {
    plus = guidance_loss_at(a, b + h);
    minus = guidance_loss_at(a, b - h);
  }
  return (plus - minus) / (2.0 * h);
}

double hypergrad_at(const StepSnapshot& snapshot, HyperName name) {
  const StepOutput out = snapshot.replay();
  const ParamVector guidance_grad =
      loss_and_grad(*snapshot.task, out.new_params, snapshot.task->guidance_batch()).second;
  MetaConfig mc;
  mc.guided = {name};
  const auto grads =
      hypergradient(guidance_grad, out, {snapshot.rep_alpha, snapshot.rep_beta1}, mc);
  return grads.at(name);
}

double relative_error(double a, double b, double floor) {
  const double scale = std::max({std::abs(a), std::abs(b), floor});
  return std::abs(a - b) / scale;
}

}  // namespace guided
