// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "guided/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include "guided/errors.hpp"
#include "guided/guided_train.hpp"
#include "guided/util.hpp"

namespace guided {

namespace fs = std::filesystem;

namespace {

// Stream ids under the config seed; data and training draws never overlap.
constexpr std::uint64_t kTaskStream = 1;
constexpr std::uint64_t kRunStream = 2;

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace

ReportSummary summarize(const RunLog& log, std::optional<double> target_dev_loss) {
  ReportSummary s;
  s.steps = log.records.size();
  if (!log.records.empty()) s.final_train_loss = log.records.back().train_loss;
  double best = std::numeric_limits<double>::infinity();
  for (const RunRecord& r : log.records) {
    if (!r.dev_loss) continue;
    s.has_dev = true;
    s.final_dev_loss = *r.dev_loss;
    best = std::min(best, *r.dev_loss);
    if (target_dev_loss && !s.steps_to_target && *r.dev_loss <= *target_dev_loss) {
      s.steps_to_target = r.step;
    }
  }
  if (s.has_dev) s.best_dev_loss = best;
  return s;
}

RunLog execute_run(const ExperimentConfig& cfg) {
  cfg.validate();
  Rng task_rng(cfg.task.seed, kTaskStream);
  const Task task = make_task(cfg.task.kind, cfg.task.dim, cfg.task.n_train, cfg.task.batch_size,
                              cfg.task.noise_std, task_rng, cfg.task.options);
  Rng run_rng(cfg.task.seed, kRunStream);
  TrainOptions options;
  options.eval_every = cfg.train.eval_every;
  options.resample_guidance = cfg.guided.resample_guidance;
  options.step_options.trust_ratio_grad = cfg.guided.trust_ratio_grad;
  options.step_options.bias_correction_grad = cfg.guided.bias_correction_grad;
  return guided_train(task, cfg.optimizer.kind, cfg.initial_hypers(), cfg.optimizer.schedule,
                      cfg.meta_config(), cfg.train.steps, run_rng, options);
}

std::string render_summary(const ReportSummary& s) {
  std::ostringstream out;
  out << "best_dev_loss=" << (s.has_dev ? format_double(s.best_dev_loss) : "") << "\n";
  out << "final_dev_loss=" << (s.has_dev ? format_double(s.final_dev_loss) : "") << "\n";
  out << "final_train_loss=" << format_double(s.final_train_loss) << "\n";
  out << "steps=" << s.steps << "\n";
  out << "steps_to_target="
      << (s.steps_to_target ? std::to_string(*s.steps_to_target) : "unreached") << "\n";
  return out.str();
}

ReportSummary parse_summary(const std::string& text) {
  ReportSummary s;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "best_dev_loss" && !value.empty()) {
      s.best_dev_loss = std::stod(value);
      s.has_dev = true;
    } else if (key == "final_dev_loss" && !value.empty()) {
      s.final_dev_loss = std::stod(value);
    } else if (key == "final_train_loss") {
      s.final_train_loss = std::stod(value);
    } else if (key == "steps") {
      s.steps = static_cast<std::size_t>(std::stoull(value));
    } else if (key == "steps_to_target" && value != "unreached") {
      s.steps_to_target = static_cast<std::size_t>(std::stoull(value));
    }
  }
  return s;
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::string dir = cfg.output.dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());

  std::vector<std::string> written;
  try {
    const auto start = std::chrono::steady_clock::now();
    RunResult result;
    result.dir = dir;
    result.log = execute_run(cfg);
    const auto stop = std::chrono::steady_clock::now();

    result.summary = summarize(result.log, cfg.train.has_target
                                               ? std::optional<double>(cfg.train.target_dev_loss)
                                               : std::nullopt);
    result.summary.wall_clock_sec = std::chrono::duration<double>(stop - start).count();

    written.push_back(dir + "/run.csv");
    result.log.save_csv(written.back());
    written.push_back(dir + "/config.echo");
    write_text_file(written.back(), render_config(cfg));
    written.push_back(dir + "/summary.txt");
    write_text_file(written.back(), render_summary(result.summary));
    // Measured time lives apart from the deterministic artifacts.
    written.push_back(dir + "/timing.txt");
    write_text_file(written.back(), "wall_clock_sec=" + format_double(result.summary.wall_clock_sec) + "\n");
    return result;
  } catch (const IoError&) {
    for (const std::string& path : written) fs::remove(path, ec);
    throw;
  }
}

std::vector<RunResult> sweep(const ExperimentConfig& cfg, const std::vector<SweepSpec>& specs,
                             std::size_t jobs) {
  if (specs.empty()) throw ConfigError("sweep: need at least one --param");
  for (const SweepSpec& spec : specs) {
    if (spec.values.empty()) throw ConfigError("sweep: empty value list for " + spec.param_path);
  }
  if (specs.size() > 2) throw ConfigError("sweep: at most two parameter paths supported");

  struct Combo {
    std::size_t i = 0, j = 0;
    ExperimentConfig cfg;
    std::string label;
  };
  std::vector<Combo> combos;
  const std::size_t n_second = specs.size() > 1 ? specs[1].values.size() : 1;
  for (std::size_t i = 0; i < specs[0].values.size(); ++i) {
    for (std::size_t j = 0; j < n_second; ++j) {
      Combo combo;
      combo.i = i;
      combo.j = j;
      combo.cfg = cfg;
      apply_override(combo.cfg, specs[0].param_path, specs[0].values[i]);
      combo.label = specs[0].param_path + "=" + specs[0].values[i];
      if (specs.size() > 1) {
        apply_override(combo.cfg, specs[1].param_path, specs[1].values[j]);
        combo.label += ";" + specs[1].param_path + "=" + specs[1].values[j];
      }
      combo.cfg.task.seed = mix_seed(cfg.task.seed, i, j);
      combos.push_back(std::move(combo));
    }
  }

  std::vector<RunResult> results(combos.size());
  std::vector<std::exception_ptr> failures(combos.size());
  for (std::size_t idx = 0; idx < combos.size(); ++idx) {
    std::ostringstream dir;
    dir << cfg.output.dir << "/run_" << std::setw(3) << std::setfill('0') << idx;
    combos[idx].cfg.output.dir = dir.str();
  }

  const auto worker_body = [&](std::size_t idx) {
    try {
      results[idx] = run_experiment(combos[idx].cfg);
      results[idx].log.records.shrink_to_fit();
    } catch (...) {
      failures[idx] = std::current_exception();
    }
  };

  if (jobs <= 1) {
    for (std::size_t idx = 0; idx < combos.size(); ++idx) worker_body(idx);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const std::size_t n_workers = std::min(jobs, combos.size());
    workers.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
      workers.emplace_back([&]() {
        for (;;) {
          const std::size_t idx = next.fetch_add(1);
          if (idx >= combos.size()) return;
          worker_body(idx);
        }
      });
    }
    for (std::thread& t : workers) t.join();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  // Aggregate written last, in sweep order.
  std::ostringstream agg;
  agg << "run,params,seed,best_dev_loss,final_dev_loss,final_train_loss,steps,steps_to_target\n";
  for (std::size_t idx = 0; idx < combos.size(); ++idx) {
    const ReportSummary& s = results[idx].summary;
    agg << idx << ',' << combos[idx].label << ',' << combos[idx].cfg.task.seed << ','
        << (s.has_dev ? format_double(s.best_dev_loss) : "") << ','
        << (s.has_dev ? format_double(s.final_dev_loss) : "") << ','
        << format_double(s.final_train_loss) << ',' << s.steps << ','
        << (s.steps_to_target ? std::to_string(*s.steps_to_target) : "unreached") << "\n";
  }
  std::error_code ec;
  fs::create_directories(cfg.output.dir, ec);
  write_text_file(cfg.output.dir + "/sweep.csv", agg.str());
  return results;
}

}  // namespace guided
