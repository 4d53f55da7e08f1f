// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "guided/guided_train.hpp"

#include <utility>

#include "guided/errors.hpp"

namespace guided {

std::map<HyperName, double> hypergradient(const ParamVector& guidance_grad,
                                          const StepOutput& step_out,
                                          const std::vector<Reparam>& reparams,
                                          const MetaConfig& mc) {
  std::map<HyperName, double> out;
  for (HyperName name : mc.guided) {
    const Reparam* rep = nullptr;
    for (const Reparam& r : reparams) {
      if (r.name == name) {
        rep = &r;
        break;
      }
    }
    if (!rep) {
      throw LayoutError(std::string("hypergradient: no reparam supplied for guided '") +
                        to_string(name) + "'");
    }
    const ParamVector& tangent =
        name == HyperName::alpha_scalar ? step_out.tangent_alpha : step_out.tangent_beta1;
    if (tangent.empty()) {
      throw LayoutError("hypergradient: step was taken without tangents");
    }
    out[name] = dot(guidance_grad, tangent) * activate(*rep).dvalue_draw;
  }
  return out;
}

RunLog guided_train(const Task& task, OptimizerKind optimizer, const HyperParams& h0,
                    const Schedule& sched, const MetaConfig& mc, std::size_t steps, Rng& rng,
                    const TrainOptions& options) {
  if (steps < 1) throw ConfigError("guided_train: steps must be >= 1");
  h0.validate();
  mc.validate();

  Reparam rep_alpha = Reparam::alpha(h0.alpha_scalar);
  Reparam rep_beta1 = Reparam::momentum(h0.beta1);

  ParamVector params = init_params(task, rng);
  OptState state = OptState::init(optimizer, task.layout());

  RunLog log;
  log.alpha_guided = mc.is_guided(HyperName::alpha_scalar);
  log.beta1_guided = mc.is_guided(HyperName::beta1);
  log.records.reserve(steps);

  StepOptions step_opts = options.step_options;
  step_opts.want_tangents = !mc.guided.empty();

  for (std::size_t t = 0; t < steps; ++t) {
    try {
      const Batch& train_batch = task.train_batch(t);
      auto [train_loss, train_grad] = loss_and_grad(task, params, train_batch);

      // Values used at this step: activations before this step's meta update.
      const Activation alpha_act = activate(rep_alpha);
      const Activation beta1_act = activate(rep_beta1);
      HyperParams h = h0;
      h.alpha_scalar = alpha_act.value;
      h.beta1 = beta1_act.value;

      StepOutput step_out =
          optimizer_step(optimizer, params, train_grad, state, h, sched.value(t + 1), step_opts);

      const Batch& guidance_batch =
          options.resample_guidance ? task.guidance_batch_for_step(t) : task.guidance_batch();
      auto [guidance_loss, guidance_grad] =
          loss_and_grad(task, step_out.new_params, guidance_batch);

      RunRecord rec;
      rec.step = t + 1;
      rec.train_loss = train_loss;
      rec.guidance_loss = guidance_loss;
      rec.alpha_scalar = alpha_act.value;
      rec.beta1 = beta1_act.value;
      rec.lr_effective = step_out.lr_effective;
      if (log.alpha_guided) rec.raw_alpha = rep_alpha.raw;
      if (log.beta1_guided) rec.raw_beta1 = rep_beta1.raw;

      if (!mc.guided.empty()) {
        const auto grads = hypergradient(guidance_grad, step_out, {rep_alpha, rep_beta1}, mc);
        // Simultaneous meta updates: both raw gradients were formed from the
        // same tangent pass before either reparam moves.
        if (log.alpha_guided) {
          rec.hypergrad_alpha = grads.at(HyperName::alpha_scalar);
          rep_alpha = meta_adam_update(rep_alpha, *rec.hypergrad_alpha, mc);
        }
        if (log.beta1_guided) {
          rec.hypergrad_beta1 = grads.at(HyperName::beta1);
          rep_beta1 = meta_adam_update(rep_beta1, *rec.hypergrad_beta1, mc);
        }
      }

      if (options.eval_every > 0 && (t + 1) % options.eval_every == 0) {
        rec.dev_loss = loss_and_grad(task, step_out.new_params, task.dev_batch()).first;
      }

      params = std::move(step_out.new_params);
      state = std::move(step_out.new_state);
      log.records.push_back(rec);
    } catch (const NumericError& e) {
      throw NumericError(std::string("run aborted: ") + e.what(), t + 1);
    }
  }
  return log;
}

}  // namespace guided
