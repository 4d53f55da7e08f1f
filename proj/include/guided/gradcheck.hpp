// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_GRADCHECK_HPP
#define GUIDED_GRADCHECK_HPP

#include <iosfwd>
#include <vector>

#include "guided/optimizer.hpp"
#include "guided/reparam.hpp"
#include "guided/task.hpp"

namespace guided {

struct GradcheckOptions {
  std::vector<OptimizerKind> optimizers = {OptimizerKind::adam, OptimizerKind::lamb,
                                           OptimizerKind::adafactor};
  std::vector<TaskKind> tasks = {TaskKind::quadratic, TaskKind::logreg, TaskKind::mlp};
  std::vector<std::size_t> steps = {1, 2, 10, 100};
  double tol = 1e-5;            // adam/lamb
  double tol_adafactor = 1e-4;  // adafactor at smooth points
  double fd_step = 1e-5;
  std::uint64_t seed = 7;
};

struct GradcheckCell {
  OptimizerKind optimizer;
  TaskKind task;
  std::size_t step = 0;
  HyperName hyper = HyperName::alpha_scalar;
  double analytic = 0.0;
  double fd = 0.0;
  double rel_err = 0.0;
  bool skipped_non_smooth = false;
  bool pass = false;
};

struct GradcheckReport {
  std::vector<GradcheckCell> cells;
  double worst_rel_err = 0.0;
  bool all_pass = true;
};

/**
 * Compares tangent-route hypergradients against the brute-force central
 * difference over every (optimizer, task, step, hyperparameter) cell.
 * Adafactor cells whose replayed step lands on the clip boundary are
 * reported as skipped rather than compared.
 */
GradcheckReport run_gradcheck(const GradcheckOptions& options = {});

/// Table with worst relative error per cell; returns report.all_pass.
void print_gradcheck(const GradcheckReport& report, std::ostream& out);

}  // namespace guided

#endif  // GUIDED_GRADCHECK_HPP
