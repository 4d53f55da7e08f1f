// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "guided/bo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "guided/errors.hpp"
#include "guided/gp.hpp"
#include "guided/util.hpp"

namespace guided {

namespace {

double halton(std::size_t index, std::size_t base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

constexpr std::size_t kHaltonBases[] = {2, 3, 5, 7};

// Unit-coordinate candidate grid, row-major; endpoints included.
std::vector<std::vector<double>> candidate_grid(std::size_t dims, std::size_t points_per_dim) {
  std::vector<std::vector<double>> grid;
  std::size_t total = 1;
  for (std::size_t i = 0; i < dims; ++i) total *= points_per_dim;
  grid.reserve(total);
  std::vector<std::size_t> idx(dims, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::vector<double> point(dims);
    std::size_t rem = flat;
    for (std::size_t i = dims; i-- > 0;) {
      idx[i] = rem % points_per_dim;
      rem /= points_per_dim;
      point[i] = static_cast<double>(idx[i]) / static_cast<double>(points_per_dim - 1);
    }
    grid.push_back(std::move(point));
  }
  return grid;
}

}  // namespace

std::vector<TrialRecord> bo_minimize(const TrialObjective& objective, const SearchSpace& space,
                                     std::size_t budget, std::size_t n_init, Rng& rng,
                                     const BoOptions& options) {
  space.validate();
  if (n_init < 2) throw ConfigError("bo_minimize: n_init must be >= 2");
  if (budget < n_init) throw ConfigError("bo_minimize: budget must be >= n_init");
  const std::size_t dims = space.dims.size();
  if (dims > sizeof(kHaltonBases) / sizeof(kHaltonBases[0])) {
    throw ConfigError("bo_minimize: too many dimensions");
  }
  if (options.grid_points < 2) throw ConfigError("bo_minimize: grid_points must be >= 2");

  const std::uint64_t base_seed = rng.seed();
  // Cranley-Patterson rotation of the Halton sequence, fixed by the seed.
  std::vector<double> shift(dims);
  for (double& s : shift) s = rng.next_unit();

  std::vector<TrialRecord> trials;
  std::vector<std::vector<double>> unit_xs;
  std::vector<double> ys;
  double worst = -std::numeric_limits<double>::infinity();

  const auto run_trial = [&](const std::vector<double>& unit_x) {
    const std::size_t trial_index = trials.size() + 1;
    const std::uint64_t seed = mix_seed(base_seed, 0xb0, trial_index);
    TrialRecord rec;
    rec.trial = trial_index;
    rec.x = space.from_unit(unit_x);
    rec.seed = seed;
    double y = objective(rec.x, seed);
    if (!std::isfinite(y)) {
      // Penalty keeps the posterior well-defined without killing the search.
      y = (std::isfinite(worst) ? worst : 0.0) + 1.0;
    }
    rec.objective = y;
    worst = std::max(worst, y);
    trials.push_back(rec);
    unit_xs.push_back(unit_x);
    ys.push_back(y);
  };

  for (std::size_t i = 0; i < n_init; ++i) {
    std::vector<double> unit_x(dims);
    for (std::size_t d = 0; d < dims; ++d) {
      const double h = halton(i + 1, kHaltonBases[d]) + shift[d];
      unit_x[d] = h - std::floor(h);
    }
    run_trial(unit_x);
  }

  const auto grid = candidate_grid(dims, options.grid_points);

  while (trials.size() < budget) {
    const GpKernel kernel = fit_kernel_grid(unit_xs, ys);
    const GpModel model(kernel, unit_xs, ys);
    const double incumbent = *std::min_element(ys.begin(), ys.end());

    double best_ei = -1.0;
    const std::vector<double>* best_point = nullptr;
    for (const auto& candidate : grid) {
      const double ei = expected_improvement(model, candidate, incumbent);
      if (ei > best_ei) {
        best_ei = ei;
        best_point = &candidate;
      }
    }
    run_trial(*best_point);
  }
  return trials;
}

GridResult grid_oracle(const std::function<double(const std::vector<double>&)>& objective,
                       const SearchSpace& space, std::size_t points_per_dim) {
  space.validate();
  if (space.dims.size() > 2) throw ConfigError("grid_oracle supports 1 or 2 dimensions");
  if (points_per_dim < 3) throw ConfigError("grid_oracle: points_per_dim must be >= 3");

  GridResult result;
  result.best_y = std::numeric_limits<double>::infinity();
  const auto grid = candidate_grid(space.dims.size(), points_per_dim);
  result.table.reserve(grid.size());
  for (const auto& unit_point : grid) {
    GridCell cell;
    cell.x = space.from_unit(unit_point);
    cell.y = objective(cell.x);
    // Strict < plus row-major order gives the lexicographically smallest
    // argmin on ties.
    if (cell.y < result.best_y) {
      result.best_y = cell.y;
      result.best_x = cell.x;
    }
    result.table.push_back(std::move(cell));
  }
  return result;
}

const TrialRecord& best_trial(const std::vector<TrialRecord>& trials) {
  if (trials.empty()) throw ConfigError("best_trial: no trials");
  const TrialRecord* best = &trials[0];
  for (const TrialRecord& t : trials) {
    if (t.objective < best->objective) best = &t;
  }
  return *best;
}

void save_trials_csv(const std::vector<TrialRecord>& trials, const SearchSpace& space,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "trial";
  for (const SearchDim& d : space.dims) out << ",x_" << d.name;
  out << ",objective,seed\n";
  for (const TrialRecord& t : trials) {
    out << t.trial;
    for (double v : t.x) out << ',' << format_double(v);
    out << ',' << format_double(t.objective) << ',' << t.seed << "\n";
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace guided
