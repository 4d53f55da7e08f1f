// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_REPARAM_HPP
#define GUIDED_REPARAM_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace guided {

enum class HyperName { alpha_scalar, beta1 };

const char* to_string(HyperName name);
HyperName hyper_name_from_string(const std::string& s);

enum class ActivationKind { exp_fn, sigmoid };

/**
 * A learned hyperparameter in raw (pre-activation) space together with its
 * scalar meta-Adam state. alpha_scalar lives under exp (raw 0 -> value 1),
 * beta1 under sigmoid (raw logit(0.9) -> value 0.9), which keeps the
 * activated values inside their domains for any finite raw.
 */
struct Reparam {
  HyperName name = HyperName::alpha_scalar;
  ActivationKind activation = ActivationKind::exp_fn;
  double raw = 0.0;
  double meta_m = 0.0;
  double meta_v = 0.0;
  std::size_t meta_t = 0;

  /// alpha_scalar reparam starting at `init` (> 0).
  static Reparam alpha(double init = 1.0);
  /// beta1 reparam starting at `init` in (0, 1).
  static Reparam momentum(double init = 0.9);
};

struct Activation {
  double value = 0.0;
  double dvalue_draw = 0.0;  // derivative of value w.r.t. raw
};

/// Activated value and its derivative. Raw is clamped to [-30, 30] first,
/// which keeps exp finite and sigmoid away from exact 0/1.
Activation activate(const Reparam& r);

/// Meta-optimizer settings: a scalar Adam per guided hyperparameter.
struct MetaConfig {
  double meta_lr = 0.0;
  double meta_beta1 = 0.9;
  double meta_beta2 = 0.999;
  double meta_eps = 1e-8;
  std::vector<HyperName> guided;

  bool is_guided(HyperName name) const;
  void validate() const;
};

/// One bias-corrected scalar Adam update on the raw value. meta_lr = 0
/// leaves raw unchanged while still advancing the meta state.
Reparam meta_adam_update(const Reparam& r, double g_raw, const MetaConfig& mc);

}  // namespace guided

#endif  // GUIDED_REPARAM_HPP
