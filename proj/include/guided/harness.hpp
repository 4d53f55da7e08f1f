// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_HARNESS_HPP
#define GUIDED_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "guided/config.hpp"
#include "guided/run_log.hpp"

namespace guided {

/// Per-run accounting. Wall-clock is measured and therefore excluded from
/// the byte-determinism guarantees; it lives in a separate timing file.
struct ReportSummary {
  double best_dev_loss = 0.0;
  double final_dev_loss = 0.0;
  double final_train_loss = 0.0;
  std::size_t steps = 0;
  std::optional<std::size_t> steps_to_target;
  bool has_dev = false;
  double wall_clock_sec = 0.0;
};

/// Builds the summary from a run log; target is optional (steps_to_target
/// is the first eval step whose dev loss is <= target).
ReportSummary summarize(const RunLog& log, std::optional<double> target_dev_loss);

/// Library path: construct the task and run the guided loop, no files.
RunLog execute_run(const ExperimentConfig& cfg);

struct RunResult {
  RunLog log;
  ReportSummary summary;
  std::string dir;
};

/**
 * Runs one experiment and writes run.csv, config.echo, summary.txt, and
 * timing.txt under cfg.output.dir. On I/O failure the partially written
 * files are removed before the error propagates.
 */
RunResult run_experiment(const ExperimentConfig& cfg);

struct SweepSpec {
  std::string param_path;
  std::vector<std::string> values;
};

/**
 * One run per value combination (cross-product across specs), each in its
 * own run_NNN directory under cfg.output.dir, with seeds mixed from the base
 * seed and the value indices. Runs may execute on up to `jobs` threads; the
 * aggregate sweep.csv is written after all runs finish, in sweep order.
 */
std::vector<RunResult> sweep(const ExperimentConfig& cfg, const std::vector<SweepSpec>& specs,
                             std::size_t jobs = 1);

/// Serialize a summary as flat key=value text (excludes wall-clock).
std::string render_summary(const ReportSummary& summary);
ReportSummary parse_summary(const std::string& text);

}  // namespace guided

#endif  // GUIDED_HARNESS_HPP
