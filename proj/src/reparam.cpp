// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "guided/reparam.hpp"

#include <algorithm>
#include <cmath>

#include "guided/errors.hpp"
#include "guided/util.hpp"

namespace guided {

namespace {
constexpr double kRawClamp = 30.0;
}

const char* to_string(HyperName name) {
  switch (name) {
    case HyperName::alpha_scalar: return "alpha_scalar";
    case HyperName::beta1: return "beta1";
  }
  return "?";
}

HyperName hyper_name_from_string(const std::string& s) {
  if (s == "alpha_scalar" || s == "alpha") return HyperName::alpha_scalar;
  if (s == "beta1") return HyperName::beta1;
  throw ConfigError("unknown hyperparameter '" + s + "'");
}

Reparam Reparam::alpha(double init) {
  if (!(init > 0.0)) throw ConfigError("alpha_scalar init must be > 0");
  Reparam r;
  r.name = HyperName::alpha_scalar;
  r.activation = ActivationKind::exp_fn;
  r.raw = std::log(init);
  return r;
}

Reparam Reparam::momentum(double init) {
  if (!(init > 0.0 && init < 1.0)) throw ConfigError("beta1 init must be in (0, 1)");
  Reparam r;
  r.name = HyperName::beta1;
  r.activation = ActivationKind::sigmoid;
  r.raw = logit(init);
  return r;
}

Activation activate(const Reparam& r) {
  if (!std::isfinite(r.raw)) throw NumericError("non-finite raw hyperparameter");
  const double raw = std::clamp(r.raw, -kRawClamp, kRawClamp);
  switch (r.activation) {
    case ActivationKind::exp_fn: {
      const double v = std::exp(raw);
      return {v, v};
    }
    case ActivationKind::sigmoid: {
      const double v = sigmoid(raw);
      return {v, v * (1.0 - v)};
    }
  }
  throw ConfigError("bad activation kind");
}

bool MetaConfig::is_guided(HyperName name) const {
  return std::find(guided.begin(), guided.end(), name) != guided.end();
}

void MetaConfig::validate() const {
  if (meta_lr < 0.0) throw ConfigError("meta_lr must be >= 0");
  if (!(meta_beta1 > 0.0 && meta_beta1 < 1.0)) throw ConfigError("meta_beta1 must be in (0, 1)");
  if (!(meta_beta2 > 0.0 && meta_beta2 < 1.0)) throw ConfigError("meta_beta2 must be in (0, 1)");
  if (!(meta_eps > 0.0)) throw ConfigError("meta_eps must be > 0");
}

Reparam meta_adam_update(const Reparam& r, double g_raw, const MetaConfig& mc) {
  if (!std::isfinite(g_raw)) throw NumericError("non-finite hypergradient");
  Reparam out = r;
  out.meta_t = r.meta_t + 1;
  out.meta_m = mc.meta_beta1 * r.meta_m + (1.0 - mc.meta_beta1) * g_raw;
  out.meta_v = mc.meta_beta2 * r.meta_v + (1.0 - mc.meta_beta2) * g_raw * g_raw;
  const double t = static_cast<double>(out.meta_t);
  const double m_hat = out.meta_m / (1.0 - std::pow(mc.meta_beta1, t));
  const double v_hat = out.meta_v / (1.0 - std::pow(mc.meta_beta2, t));
  out.raw = r.raw - mc.meta_lr * m_hat / (std::sqrt(v_hat) + mc.meta_eps);
  out.raw = std::clamp(out.raw, -kRawClamp, kRawClamp);
  return out;
}

}  // namespace guided
