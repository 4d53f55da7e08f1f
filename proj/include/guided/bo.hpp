// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_BO_HPP
#define GUIDED_BO_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "guided/rng.hpp"
#include "guided/search_space.hpp"

namespace guided {

/// Objective for one trial: the point in original coordinates plus a
/// deterministic per-trial run seed (mixed from the driver's base seed).
using TrialObjective = std::function<double(const std::vector<double>&, std::uint64_t seed)>;

struct TrialRecord {
  std::size_t trial = 0;  // 1-based, dense
  std::vector<double> x;
  double objective = 0.0;
  std::uint64_t seed = 0;
};

struct BoOptions {
  /// Candidate grid resolution per dimension for the EI argmax.
  std::size_t grid_points = 512;
};

/**
 * Sequential GP-EI minimization: n_init scrambled-Halton points, then one
 * EI-argmax (over the dense unit-coordinate grid) per remaining trial, with
 * the kernel refit on every posterior update. Non-finite objectives are
 * recorded as worst-so-far + 1 and the search continues.
 */
std::vector<TrialRecord> bo_minimize(const TrialObjective& objective, const SearchSpace& space,
                                     std::size_t budget, std::size_t n_init, Rng& rng,
                                     const BoOptions& options = {});

struct GridCell {
  std::vector<double> x;
  double y = 0.0;
};

struct GridResult {
  std::vector<double> best_x;
  double best_y = 0.0;
  std::vector<GridCell> table;  // row-major over the scaled grid
};

/**
 * Exhaustive scaled-grid evaluation for 1- or 2-dimensional spaces; ties
 * break to the lexicographically smallest grid point. This is the brute-
 * force ground truth the acceptance comparisons use.
 */
GridResult grid_oracle(const std::function<double(const std::vector<double>&)>& objective,
                       const SearchSpace& space, std::size_t points_per_dim);

/// Best (lowest) objective among trials.
const TrialRecord& best_trial(const std::vector<TrialRecord>& trials);

/// Trial history CSV: trial,x_<dim1>[,x_<dim2>],objective,seed.
void save_trials_csv(const std::vector<TrialRecord>& trials, const SearchSpace& space,
                     const std::string& path);

}  // namespace guided

#endif  // GUIDED_BO_HPP
