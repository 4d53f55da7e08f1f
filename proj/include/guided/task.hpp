// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_TASK_HPP
#define GUIDED_TASK_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "guided/param_vector.hpp"
#include "guided/rng.hpp"

namespace guided {

enum class TaskKind { quadratic, logreg, mlp };

const char* to_string(TaskKind kind);
TaskKind task_kind_from_string(const std::string& s);

/// One mini-batch: row-major inputs (n x dim) and one target per row.
struct Batch {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> inputs;
  std::vector<double> targets;

  double input(std::size_t row, std::size_t col) const { return inputs[row * dim + col]; }
};

struct TaskOptions {
  double condition_number = 100.0;  // quadratic: diag(A) log-spaced 1..cond
  std::size_t hidden = 8;           // mlp hidden width
  double blob_separation = 2.0;     // logreg: distance between class means
  std::size_t guidance_batches = 1; // >1 enables resampled-guidance runs
};

/**
 * A differentiable training problem: synthetic batches with one held-out
 * guidance batch and one held-out dev batch, plus the data needed to
 * evaluate the batch-mean loss and its exact gradient.
 *
 * Immutable after construction; concurrent reads from multiple runs are safe.
 */
class Task {
 public:
  TaskKind kind() const { return kind_; }
  const LayoutPtr& layout() const { return layout_; }
  double noise_std() const { return noise_std_; }
  const TaskOptions& options() const { return options_; }
  std::size_t dim() const { return dim_; }

  std::size_t num_train_batches() const { return train_batches_.size(); }
  const Batch& train_batch_at(std::size_t i) const { return train_batches_[i]; }

  /// Training batch for a given step: batches are cycled with a fresh
  /// seeded permutation each epoch.
  const Batch& train_batch(std::size_t step) const;

  /// The fixed held-out guidance batch (default mode).
  const Batch& guidance_batch() const { return guidance_batches_[0]; }

  /// Guidance batch for a step in resampled mode: cycles the held-out pool.
  const Batch& guidance_batch_for_step(std::size_t step) const;
  std::size_t num_guidance_batches() const { return guidance_batches_.size(); }

  const Batch& dev_batch() const { return dev_batch_; }

  // Quadratic internals (exposed for oracles and tests).
  const std::vector<double>& quad_diag() const { return quad_diag_; }
  const std::vector<double>& quad_center() const { return quad_center_; }

  friend Task make_task(TaskKind kind, std::size_t dim, std::size_t n_train,
                        std::size_t batch_size, double noise_std, Rng& rng,
                        const TaskOptions& options);

 private:
  TaskKind kind_ = TaskKind::quadratic;
  LayoutPtr layout_;
  std::size_t dim_ = 0;
  double noise_std_ = 0.0;
  TaskOptions options_;
  std::vector<Batch> train_batches_;
  std::vector<Batch> guidance_batches_;
  Batch dev_batch_;
  std::uint64_t shuffle_seed_ = 0;

  std::vector<double> quad_diag_;
  std::vector<double> quad_center_;
  std::vector<double> teacher_;  // mlp teacher parameters, model layout
};

/**
 * Builds a synthetic task. n_train examples are generated and chunked into
 * batches; one batch is held out for guidance (options.guidance_batches for
 * the resampled pool), one for dev, and the rest form the training stream.
 *
 * Requires n_train >= (2 + options.guidance_batches) * batch_size.
 */
Task make_task(TaskKind kind, std::size_t dim, std::size_t n_train, std::size_t batch_size,
               double noise_std, Rng& rng, const TaskOptions& options = {});

/// Batch-mean loss and its exact analytic gradient at params.
std::pair<double, ParamVector> loss_and_grad(const Task& task, const ParamVector& params,
                                             const Batch& batch);

/// Deterministic initial parameters drawn from rng (kind-specific scaling).
ParamVector init_params(const Task& task, Rng& rng);

/// Debug dump: one CSV per batch (inputs then target per row) under dir.
void dump_task(const Task& task, const std::string& dir);

/// Reads a batch written by dump_task.
Batch load_batch_csv(const std::string& path);

}  // namespace guided

#endif  // GUIDED_TASK_HPP
