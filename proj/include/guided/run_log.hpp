// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_RUN_LOG_HPP
#define GUIDED_RUN_LOG_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace guided {

/// One training step's observables. Optional fields are absent when the
/// corresponding hyperparameter is not guided or no dev eval ran this step.
struct RunRecord {
  std::size_t step = 0;  // 1-based
  double train_loss = 0.0;
  double guidance_loss = 0.0;
  std::optional<double> dev_loss;
  double alpha_scalar = 0.0;
  double beta1 = 0.0;
  std::optional<double> raw_alpha;
  std::optional<double> raw_beta1;
  std::optional<double> hypergrad_alpha;
  std::optional<double> hypergrad_beta1;
  double lr_effective = 0.0;
};

/// Fixed run.csv header; serialization must match it byte for byte.
extern const char* const kRunCsvHeader;

struct RunLog {
  std::vector<RunRecord> records;
  bool alpha_guided = false;
  bool beta1_guided = false;

  void write_csv(std::ostream& out) const;
  void save_csv(const std::string& path) const;

  static RunLog load_csv(const std::string& path);
};

}  // namespace guided

#endif  // GUIDED_RUN_LOG_HPP
