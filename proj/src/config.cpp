// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "guided/config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "guided/errors.hpp"
#include "guided/util.hpp"

namespace guided {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": '" + value + "'");
  }
}

std::size_t parse_size(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size() || v < 0) throw std::invalid_argument("negative");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("bad count value for " + key + ": '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("bad seed value for " + key + ": '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("bad boolean value for " + key + ": '" + value + "'");
}

std::vector<HyperName> parse_params_list(const std::string& value) {
  std::vector<HyperName> out;
  std::istringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const HyperName name = hyper_name_from_string(item);
    if (std::find(out.begin(), out.end(), name) != out.end()) {
      throw ConfigError("duplicate entry in guided.params: '" + item + "'");
    }
    out.push_back(name);
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

// One table serves both the parser and sweep overrides.
const std::map<std::string, Setter>& setter_table() {
  static const std::map<std::string, Setter> table = {
      {"task.kind", [](ExperimentConfig& c, const std::string& v) { c.task.kind = task_kind_from_string(v); }},
      {"task.dim", [](ExperimentConfig& c, const std::string& v) { c.task.dim = parse_size("task.dim", v); }},
      {"task.n_train", [](ExperimentConfig& c, const std::string& v) { c.task.n_train = parse_size("task.n_train", v); }},
      {"task.batch_size", [](ExperimentConfig& c, const std::string& v) { c.task.batch_size = parse_size("task.batch_size", v); }},
      {"task.noise_std",
       [](ExperimentConfig& c, const std::string& v) {
         c.task.noise_std = parse_double("task.noise_std", v);
         if (c.task.noise_std < 0) throw ConfigError("task.noise_std must be >= 0");
       }},
      {"task.seed", [](ExperimentConfig& c, const std::string& v) { c.task.seed = parse_u64("task.seed", v); }},
      {"task.condition_number",
       [](ExperimentConfig& c, const std::string& v) {
         c.task.options.condition_number = parse_double("task.condition_number", v);
         if (c.task.options.condition_number < 1.0) {
           throw ConfigError("task.condition_number must be >= 1");
         }
       }},
      {"task.hidden", [](ExperimentConfig& c, const std::string& v) { c.task.options.hidden = parse_size("task.hidden", v); }},
      {"task.blob_separation", [](ExperimentConfig& c, const std::string& v) { c.task.options.blob_separation = parse_double("task.blob_separation", v); }},
      {"task.guidance_batches", [](ExperimentConfig& c, const std::string& v) { c.task.options.guidance_batches = parse_size("task.guidance_batches", v); }},
      {"optimizer.kind", [](ExperimentConfig& c, const std::string& v) { c.optimizer.kind = optimizer_kind_from_string(v); }},
      {"optimizer.base_lr",
       [](ExperimentConfig& c, const std::string& v) {
         c.optimizer.hypers.base_lr = parse_double("optimizer.base_lr", v);
         if (!(c.optimizer.hypers.base_lr > 0)) throw ConfigError("optimizer.base_lr must be > 0");
       }},
      {"optimizer.beta1",
       [](ExperimentConfig& c, const std::string& v) {
         c.optimizer.hypers.beta1 = parse_double("optimizer.beta1", v);
         if (!(c.optimizer.hypers.beta1 >= 0 && c.optimizer.hypers.beta1 < 1)) {
           throw ConfigError("optimizer.beta1 must be in [0, 1)");
         }
       }},
      {"optimizer.beta2",
       [](ExperimentConfig& c, const std::string& v) {
         c.optimizer.hypers.beta2 = parse_double("optimizer.beta2", v);
         if (!(c.optimizer.hypers.beta2 > 0 && c.optimizer.hypers.beta2 < 1)) {
           throw ConfigError("optimizer.beta2 must be in (0, 1)");
         }
       }},
      {"optimizer.eps",
       [](ExperimentConfig& c, const std::string& v) {
         c.optimizer.hypers.eps = parse_double("optimizer.eps", v);
         if (!(c.optimizer.hypers.eps > 0)) throw ConfigError("optimizer.eps must be > 0");
       }},
      {"optimizer.decay_rate",
       [](ExperimentConfig& c, const std::string& v) {
         c.optimizer.hypers.decay_rate = parse_double("optimizer.decay_rate", v);
         if (!(c.optimizer.hypers.decay_rate > 0 && c.optimizer.hypers.decay_rate <= 1)) {
           throw ConfigError("optimizer.decay_rate must be in (0, 1]");
         }
       }},
      {"optimizer.weight_decay",
       [](ExperimentConfig& c, const std::string& v) {
         c.optimizer.hypers.weight_decay = parse_double("optimizer.weight_decay", v);
         if (c.optimizer.hypers.weight_decay < 0) throw ConfigError("optimizer.weight_decay must be >= 0");
       }},
      {"optimizer.schedule", [](ExperimentConfig& c, const std::string& v) { c.optimizer.schedule.kind = schedule_kind_from_string(v); }},
      {"optimizer.warmup_steps",
       [](ExperimentConfig& c, const std::string& v) {
         c.optimizer.schedule.warmup_steps = parse_size("optimizer.warmup_steps", v);
         if (c.optimizer.schedule.warmup_steps == 0) throw ConfigError("optimizer.warmup_steps must be >= 1");
       }},
      {"optimizer.hold_steps",
       [](ExperimentConfig& c, const std::string& v) {
         c.optimizer.schedule.hold_steps = parse_size("optimizer.hold_steps", v);
         if (c.optimizer.schedule.hold_steps == 0) throw ConfigError("optimizer.hold_steps must be >= 1");
       }},
      {"guided.params", [](ExperimentConfig& c, const std::string& v) { c.guided.params = parse_params_list(v); }},
      {"guided.meta_lr",
       [](ExperimentConfig& c, const std::string& v) {
         c.guided.meta_lr = parse_double("guided.meta_lr", v);
         if (c.guided.meta_lr < 0) throw ConfigError("guided.meta_lr must be >= 0");
       }},
      {"guided.init_alpha",
       [](ExperimentConfig& c, const std::string& v) {
         c.guided.init_alpha = parse_double("guided.init_alpha", v);
         if (!(c.guided.init_alpha > 0)) throw ConfigError("guided.init_alpha must be > 0");
       }},
      {"guided.init_beta1",
       [](ExperimentConfig& c, const std::string& v) {
         c.guided.init_beta1 = parse_double("guided.init_beta1", v);
         if (!(c.guided.init_beta1 > 0 && c.guided.init_beta1 < 1)) {
           throw ConfigError("guided.init_beta1 must be in (0, 1)");
         }
       }},
      {"guided.trust_ratio_grad", [](ExperimentConfig& c, const std::string& v) { c.guided.trust_ratio_grad = parse_bool("guided.trust_ratio_grad", v); }},
      {"guided.bias_correction_grad", [](ExperimentConfig& c, const std::string& v) { c.guided.bias_correction_grad = parse_bool("guided.bias_correction_grad", v); }},
      {"guided.resample_guidance", [](ExperimentConfig& c, const std::string& v) { c.guided.resample_guidance = parse_bool("guided.resample_guidance", v); }},
      {"train.steps", [](ExperimentConfig& c, const std::string& v) { c.train.steps = parse_size("train.steps", v); }},
      {"train.eval_every", [](ExperimentConfig& c, const std::string& v) { c.train.eval_every = parse_size("train.eval_every", v); }},
      {"train.target_dev_loss",
       [](ExperimentConfig& c, const std::string& v) {
         c.train.target_dev_loss = parse_double("train.target_dev_loss", v);
         c.train.has_target = true;
       }},
      {"output.dir", [](ExperimentConfig& c, const std::string& v) { c.output.dir = v; }},
  };
  return table;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (task.dim < 1) throw ConfigError("task.dim must be >= 1");
  if (task.batch_size < 1) throw ConfigError("task.batch_size must be >= 1");
  if (train.steps < 1) throw ConfigError("train.steps must be >= 1");
  if (train.eval_every != 0 && train.steps % train.eval_every != 0) {
    throw ConfigError("train.eval_every must divide train.steps (or be 0)");
  }
  initial_hypers().validate();
  meta_config().validate();
}

HyperParams ExperimentConfig::initial_hypers() const {
  HyperParams h = optimizer.hypers;
  h.alpha_scalar = guided.init_alpha;
  if (guided.init_beta1 > 0.0) h.beta1 = guided.init_beta1;
  return h;
}

MetaConfig ExperimentConfig::meta_config() const {
  MetaConfig mc;
  mc.meta_lr = guided.meta_lr;
  mc.guided = guided.params;
  return mc;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::set<std::string> seen_sections;
  std::set<std::string> seen_keys;
  const auto& table = setter_table();

  std::istringstream stream(text);
  std::string raw_line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(stream, raw_line)) {
    ++line_no;
    std::string line = raw_line;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("line " + std::to_string(line_no) + ": empty section name");
      }
      seen_sections.insert(section);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key outside any section");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string full_key = section + "." + key;
    const auto it = table.find(full_key);
    if (it == table.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "' in [" +
                        section + "]");
    }
    try {
      it->second(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
    seen_keys.insert(full_key);
  }

  for (const char* required : {"task", "optimizer"}) {
    if (!seen_sections.count(required)) {
      throw ConfigError(std::string("missing required section [") + required + "]");
    }
  }

  // Kind-dependent defaults unless explicitly set.
  if (!seen_keys.count("optimizer.eps")) {
    cfg.optimizer.hypers.eps = cfg.optimizer.kind == OptimizerKind::lamb ? 1e-6 : 1e-8;
  }
  if (!seen_keys.count("guided.init_beta1")) {
    cfg.guided.init_beta1 = cfg.optimizer.hypers.beta1;
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string render_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "[task]\n";
  out << "kind = " << to_string(cfg.task.kind) << "\n";
  out << "dim = " << cfg.task.dim << "\n";
  out << "n_train = " << cfg.task.n_train << "\n";
  out << "batch_size = " << cfg.task.batch_size << "\n";
  out << "noise_std = " << format_double(cfg.task.noise_std) << "\n";
  out << "seed = " << cfg.task.seed << "\n";
  out << "condition_number = " << format_double(cfg.task.options.condition_number) << "\n";
  out << "hidden = " << cfg.task.options.hidden << "\n";
  out << "blob_separation = " << format_double(cfg.task.options.blob_separation) << "\n";
  out << "guidance_batches = " << cfg.task.options.guidance_batches << "\n";
  out << "\n[optimizer]\n";
  out << "kind = " << to_string(cfg.optimizer.kind) << "\n";
  out << "base_lr = " << format_double(cfg.optimizer.hypers.base_lr) << "\n";
  out << "beta1 = " << format_double(cfg.optimizer.hypers.beta1) << "\n";
  out << "beta2 = " << format_double(cfg.optimizer.hypers.beta2) << "\n";
  out << "eps = " << format_double(cfg.optimizer.hypers.eps) << "\n";
  out << "decay_rate = " << format_double(cfg.optimizer.hypers.decay_rate) << "\n";
  out << "weight_decay = " << format_double(cfg.optimizer.hypers.weight_decay) << "\n";
  out << "schedule = " << to_string(cfg.optimizer.schedule.kind) << "\n";
  out << "warmup_steps = " << cfg.optimizer.schedule.warmup_steps << "\n";
  out << "hold_steps = " << cfg.optimizer.schedule.hold_steps << "\n";
  out << "\n[guided]\n";
  out << "params = ";
  for (std::size_t i = 0; i < cfg.guided.params.size(); ++i) {
    if (i) out << ",";
    out << to_string(cfg.guided.params[i]);
  }
  out << "\n";
  out << "meta_lr = " << format_double(cfg.guided.meta_lr) << "\n";
  out << "init_alpha = " << format_double(cfg.guided.init_alpha) << "\n";
  out << "init_beta1 = " << format_double(cfg.guided.init_beta1) << "\n";
  out << "trust_ratio_grad = " << (cfg.guided.trust_ratio_grad ? "true" : "false") << "\n";
  out << "bias_correction_grad = " << (cfg.guided.bias_correction_grad ? "true" : "false") << "\n";
  out << "resample_guidance = " << (cfg.guided.resample_guidance ? "true" : "false") << "\n";
  out << "\n[train]\n";
  out << "steps = " << cfg.train.steps << "\n";
  out << "eval_every = " << cfg.train.eval_every << "\n";
  if (cfg.train.has_target) {
    out << "target_dev_loss = " << format_double(cfg.train.target_dev_loss) << "\n";
  }
  out << "\n[output]\n";
  out << "dir = " << cfg.output.dir << "\n";
  return out.str();
}

void apply_override(ExperimentConfig& cfg, const std::string& param_path,
                    const std::string& value) {
  const auto& table = setter_table();
  const auto it = table.find(param_path);
  if (it == table.end()) {
    throw ConfigError("unknown config path '" + param_path + "'");
  }
  it->second(cfg, value);
}

}  // namespace guided
