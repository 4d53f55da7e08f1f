// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "guided/task.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "guided/errors.hpp"
#include "guided/util.hpp"

namespace guided {

const char* to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::quadratic: return "quadratic";
    case TaskKind::logreg: return "logreg";
    case TaskKind::mlp: return "mlp";
  }
  return "?";
}

TaskKind task_kind_from_string(const std::string& s) {
  if (s == "quadratic") return TaskKind::quadratic;
  if (s == "logreg") return TaskKind::logreg;
  if (s == "mlp") return TaskKind::mlp;
  throw ConfigError("unknown task kind '" + s + "'");
}

namespace {

LayoutPtr layout_for(TaskKind kind, std::size_t dim, const TaskOptions& options) {
  switch (kind) {
    case TaskKind::quadratic:
      return single_layer_layout("theta", dim);
    case TaskKind::logreg:
      return single_layer_layout("w", dim);
    case TaskKind::mlp: {
      const std::size_t h = options.hidden;
      return make_layout({LayerSpec{"w1", h, dim}, LayerSpec{"b1", h, 1},
                          LayerSpec{"w2", h, 1}, LayerSpec{"b2", 1, 1}});
    }
  }
  throw ConfigError("bad task kind");
}

// Model output for the one-hidden-layer tanh net. `p` may be the learned or
// the teacher parameter vector; both share the task layout.
double mlp_forward(const std::vector<double>& p, std::size_t dim, std::size_t hidden,
                   const Batch& batch, std::size_t row, std::vector<double>* hidden_out) {
  const std::size_t w1 = 0, b1 = hidden * dim, w2 = b1 + hidden, b2 = w2 + hidden;
  double y = p[b2];
  for (std::size_t h = 0; h < hidden; ++h) {
    double a = p[b1 + h];
    for (std::size_t j = 0; j < dim; ++j) a += p[w1 + h * dim + j] * batch.input(row, j);
    const double t = std::tanh(a);
    if (hidden_out) (*hidden_out)[h] = t;
    y += p[w2 + h] * t;
  }
  return y;
}

}  // namespace

Task make_task(TaskKind kind, std::size_t dim, std::size_t n_train, std::size_t batch_size,
               double noise_std, Rng& rng, const TaskOptions& options) {
  if (dim < 1) throw ConfigError("make_task: dim must be >= 1");
  if (batch_size < 1) throw ConfigError("make_task: batch_size must be >= 1");
  if (options.guidance_batches < 1) throw ConfigError("make_task: need >= 1 guidance batch");
  const std::size_t held_out = options.guidance_batches + 1;
  if (n_train < (held_out + 1) * batch_size) {
    throw ConfigError("make_task: n_train=" + std::to_string(n_train) +
                      " too small for train/guidance/dev splits with batch_size=" +
                      std::to_string(batch_size));
  }

  Task task;
  task.kind_ = kind;
  task.dim_ = dim;
  task.noise_std_ = noise_std;
  task.options_ = options;
  task.layout_ = layout_for(kind, dim, options);

  if (kind == TaskKind::quadratic) {
    task.quad_diag_.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const double frac = dim == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(dim - 1);
      task.quad_diag_[i] = std::pow(options.condition_number, frac);
    }
    task.quad_center_ = rng.gaussians(dim);
  } else if (kind == TaskKind::mlp) {
    // Fixed random teacher net; targets below are teacher(x) + noise.
    const std::size_t h = options.hidden;
    task.teacher_.resize(task.layout_->total_size());
    const double w1_scale = 1.0 / std::sqrt(static_cast<double>(dim));
    const double w2_scale = 1.0 / std::sqrt(static_cast<double>(h));
    std::size_t idx = 0;
    for (std::size_t i = 0; i < h * dim; ++i) task.teacher_[idx++] = w1_scale * rng.next_gaussian();
    for (std::size_t i = 0; i < h; ++i) task.teacher_[idx++] = 0.5 * rng.next_gaussian();
    for (std::size_t i = 0; i < h; ++i) task.teacher_[idx++] = w2_scale * rng.next_gaussian();
    task.teacher_[idx++] = 0.0;
  }

  std::vector<double> blob_dir;
  if (kind == TaskKind::logreg) {
    blob_dir = rng.gaussians(dim);
    double n2 = 0.0;
    for (double v : blob_dir) n2 += v * v;
    const double inv = 1.0 / std::max(std::sqrt(n2), 1e-12);
    for (double& v : blob_dir) v *= inv;
  }

  const std::size_t n_batches = n_train / batch_size;
  std::vector<Batch> batches(n_batches);
  std::size_t example = 0;
  for (Batch& b : batches) {
    b.n = batch_size;
    b.dim = dim;
    b.inputs.resize(batch_size * dim);
    b.targets.resize(batch_size);
    for (std::size_t r = 0; r < batch_size; ++r, ++example) {
      switch (kind) {
        case TaskKind::quadratic: {
          // Rows are per-example gradient noise; batch-mean noise enters the loss.
          for (std::size_t j = 0; j < dim; ++j) {
            b.inputs[r * dim + j] = noise_std * rng.next_gaussian();
          }
          b.targets[r] = 0.0;
          break;
        }
        case TaskKind::logreg: {
          const int label = static_cast<int>(example % 2);  // exact 50/50 generation
          const double sign = label == 1 ? 1.0 : -1.0;
          for (std::size_t j = 0; j < dim; ++j) {
            b.inputs[r * dim + j] =
                sign * 0.5 * options.blob_separation * blob_dir[j] + rng.next_gaussian();
          }
          double y = static_cast<double>(label);
          // noise_std acts as a label-flip probability here.
          if (noise_std > 0.0 && rng.next_unit() < std::min(noise_std, 0.5)) y = 1.0 - y;
          b.targets[r] = y;
          break;
        }
        case TaskKind::mlp: {
          for (std::size_t j = 0; j < dim; ++j) b.inputs[r * dim + j] = rng.next_gaussian();
          const double y = mlp_forward(task.teacher_, dim, options.hidden, b, r, nullptr);
          b.targets[r] = y + noise_std * rng.next_gaussian();
          break;
        }
      }
    }
  }

  const std::size_t k = options.guidance_batches;
  task.guidance_batches_.assign(batches.begin(), batches.begin() + static_cast<std::ptrdiff_t>(k));
  task.dev_batch_ = batches[k];
  task.train_batches_.assign(batches.begin() + static_cast<std::ptrdiff_t>(k + 1), batches.end());
  task.shuffle_seed_ = rng.next_u64();
  return task;
}

const Batch& Task::train_batch(std::size_t step) const {
  const std::size_t n = train_batches_.size();
  const std::size_t epoch = step / n;
  const std::size_t pos = step % n;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng perm_rng(shuffle_seed_, epoch);
  shuffle(perm, perm_rng);
  return train_batches_[perm[pos]];
}

const Batch& Task::guidance_batch_for_step(std::size_t step) const {
  return guidance_batches_[step % guidance_batches_.size()];
}

std::pair<double, ParamVector> loss_and_grad(const Task& task, const ParamVector& params,
                                             const Batch& batch) {
  if (!params.same_layout(ParamVector::zeros(task.layout()))) {
    throw LayoutError("loss_and_grad: params do not match task layout");
  }
  ParamVector grad = ParamVector::zeros(task.layout());
  double loss = 0.0;
  const double inv_n = 1.0 / static_cast<double>(batch.n);

  switch (task.kind()) {
    case TaskKind::quadratic: {
      const auto& a = task.quad_diag();
      const auto& c = task.quad_center();
      std::vector<double> noise(task.dim(), 0.0);
      for (std::size_t r = 0; r < batch.n; ++r) {
        for (std::size_t j = 0; j < task.dim(); ++j) noise[j] += batch.input(r, j);
      }
      for (double& v : noise) v *= inv_n;
      for (std::size_t j = 0; j < task.dim(); ++j) {
        const double d = params[j] - c[j];
        loss += 0.5 * a[j] * d * d + noise[j] * d;
        grad[j] = a[j] * d + noise[j];
      }
      break;
    }
    case TaskKind::logreg: {
      for (std::size_t r = 0; r < batch.n; ++r) {
        double z = 0.0;
        for (std::size_t j = 0; j < task.dim(); ++j) z += params[j] * batch.input(r, j);
        const double y = batch.targets[r];
        // ln(1+e^z) - y*z, computed without overflow for large |z|.
        const double softplus = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
        loss += inv_n * (softplus - y * z);
        const double residual = sigmoid(z) - y;
        for (std::size_t j = 0; j < task.dim(); ++j) {
          grad[j] += inv_n * residual * batch.input(r, j);
        }
      }
      break;
    }
    case TaskKind::mlp: {
      const std::size_t dim = task.dim();
      const std::size_t h = task.options().hidden;
      const std::size_t w1 = 0, b1 = h * dim, w2 = b1 + h, b2 = w2 + h;
      std::vector<double> hidden(h);
      for (std::size_t r = 0; r < batch.n; ++r) {
        const double yhat = mlp_forward(params.values(), dim, h, batch, r, &hidden);
        const double err = yhat - batch.targets[r];
        loss += inv_n * err * err;
        const double dy = 2.0 * inv_n * err;
        grad[b2] += dy;
        for (std::size_t i = 0; i < h; ++i) {
          grad[w2 + i] += dy * hidden[i];
          const double da = dy * params[w2 + i] * (1.0 - hidden[i] * hidden[i]);
          grad[b1 + i] += da;
          for (std::size_t j = 0; j < dim; ++j) grad[w1 + i * dim + j] += da * batch.input(r, j);
        }
      }
      break;
    }
  }

  if (!std::isfinite(loss)) throw NumericError("non-finite loss");
  return {loss, std::move(grad)};
}

ParamVector init_params(const Task& task, Rng& rng) {
  ParamVector p = ParamVector::zeros(task.layout());
  switch (task.kind()) {
    case TaskKind::quadratic:
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = rng.next_gaussian();
      break;
    case TaskKind::logreg:
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = 0.01 * rng.next_gaussian();
      break;
    case TaskKind::mlp: {
      const std::size_t dim = task.dim();
      const std::size_t h = task.options().hidden;
      const double w1_scale = 1.0 / std::sqrt(static_cast<double>(dim));
      const double w2_scale = 1.0 / std::sqrt(static_cast<double>(h));
      std::size_t idx = 0;
      for (std::size_t i = 0; i < h * dim; ++i) p[idx++] = w1_scale * rng.next_gaussian();
      for (std::size_t i = 0; i < h; ++i) p[idx++] = 0.0;
      for (std::size_t i = 0; i < h; ++i) p[idx++] = w2_scale * rng.next_gaussian();
      p[idx++] = 0.0;
      break;
    }
  }
  return p;
}

namespace {

void write_batch_csv(const Batch& batch, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (std::size_t j = 0; j < batch.dim; ++j) out << "x" << j << ",";
  out << "target\n";
  for (std::size_t r = 0; r < batch.n; ++r) {
    for (std::size_t j = 0; j < batch.dim; ++j) out << format_double(batch.input(r, j)) << ",";
    out << format_double(batch.targets[r]) << "\n";
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace

void dump_task(const Task& task, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < task.num_train_batches(); ++i) {
    std::ostringstream name;
    name << dir << "/train_" << i << ".csv";
    write_batch_csv(task.train_batch_at(i), name.str());
  }
  for (std::size_t i = 0; i < task.num_guidance_batches(); ++i) {
    std::ostringstream name;
    name << dir << "/guidance_" << i << ".csv";
    write_batch_csv(task.guidance_batch_for_step(i), name.str());
  }
  write_batch_csv(task.dev_batch(), dir + "/dev.csv");
}

Batch load_batch_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty batch file '" + path + "'");
  const std::size_t dim = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
  Batch batch;
  batch.dim = dim;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
    if (values.size() != dim + 1) throw IoError("bad row in '" + path + "'");
    for (std::size_t j = 0; j < dim; ++j) batch.inputs.push_back(values[j]);
    batch.targets.push_back(values[dim]);
    ++batch.n;
  }
  return batch;
}

}  // namespace guided
