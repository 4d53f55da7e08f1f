// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_CONFIG_HPP
#define GUIDED_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "guided/optimizer.hpp"
#include "guided/reparam.hpp"
#include "guided/schedule.hpp"
#include "guided/task.hpp"

namespace guided {

struct TaskConfig {
  TaskKind kind = TaskKind::quadratic;
  std::size_t dim = 10;
  std::size_t n_train = 640;
  std::size_t batch_size = 64;
  double noise_std = 0.0;
  std::uint64_t seed = 42;
  TaskOptions options;
};

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::adam;
  HyperParams hypers;  // alpha_scalar here is ignored; the guided init rules
  Schedule schedule;
};

struct GuidedConfig {
  std::vector<HyperName> params;
  double meta_lr = 3e-4;
  double init_alpha = 1.0;
  double init_beta1 = 0.0;  // 0 means "use optimizer.beta1"
  bool trust_ratio_grad = true;
  bool bias_correction_grad = true;
  bool resample_guidance = false;
};

struct TrainConfig {
  std::size_t steps = 1000;
  std::size_t eval_every = 100;
  double target_dev_loss = 0.0;  // used only when has_target
  bool has_target = false;
};

struct OutputConfig {
  std::string dir = "out";
};

/**
 * Full experiment description, parsed from the flat sectioned key=value
 * format. parse_config fills documented defaults and rejects unknown keys,
 * out-of-range values, and missing required sections, naming the key and
 * line in the error.
 */
struct ExperimentConfig {
  TaskConfig task;
  OptimizerConfig optimizer;
  GuidedConfig guided;
  TrainConfig train;
  OutputConfig output;

  void validate() const;

  /// Inner hyperparameters with the guided init values applied.
  HyperParams initial_hypers() const;
  MetaConfig meta_config() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Normalized echo of a config (every key, resolved values); parseable by
/// parse_config and byte-stable.
std::string render_config(const ExperimentConfig& cfg);

/// Applies "section.key = value" to a config; used by sweep overrides.
void apply_override(ExperimentConfig& cfg, const std::string& param_path,
                    const std::string& value);

}  // namespace guided

#endif  // GUIDED_CONFIG_HPP
