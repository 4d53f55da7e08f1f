// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "guided/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "guided/errors.hpp"
#include "guided/harness.hpp"
#include "guided/run_log.hpp"
#include "guided/svg.hpp"
#include "guided/util.hpp"

namespace guided {

namespace fs = std::filesystem;

namespace {

struct LoadedRun {
  std::string dir;
  std::string label;
  RunLog log;
  ReportSummary summary;
  double wall_clock_sec = 0.0;
  bool has_wall_clock = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::string md_cell(bool present, double value) {
  return present ? format_double(value) : std::string("-");
}

}  // namespace

std::vector<std::string> write_report(const std::vector<std::string>& run_dirs,
                                      const std::string& out_dir, const ReportOptions& options) {
  if (run_dirs.empty()) throw ConfigError("report: need at least one run directory");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir + "': " + ec.message());

  std::vector<LoadedRun> runs;
  std::vector<std::string> warnings;
  for (const std::string& dir : run_dirs) {
    LoadedRun run;
    run.dir = dir;
    run.label = fs::path(dir).filename().string();
    if (run.label.empty()) run.label = dir;
    try {
      run.log = RunLog::load_csv(dir + "/run.csv");
      if (run.log.records.empty()) throw IoError("no records");
    } catch (const std::exception& e) {
      warnings.push_back("skipped " + dir + ": " + e.what());
      continue;
    }
    try {
      run.summary = parse_summary(read_file(dir + "/summary.txt"));
    } catch (const std::exception&) {
      run.summary = summarize(run.log, std::nullopt);
    }
    try {
      const std::string timing = read_file(dir + "/timing.txt");
      const auto eq = timing.find('=');
      if (eq != std::string::npos) {
        run.wall_clock_sec = std::stod(timing.substr(eq + 1));
        run.has_wall_clock = true;
      }
    } catch (const std::exception&) {
      // timing is optional
    }
    runs.push_back(std::move(run));
  }

  std::ostringstream md;
  md << "# Run report\n\n";
  for (const std::string& w : warnings) md << "> warning: " << w << "\n";
  if (!warnings.empty()) md << "\n";

  md << "| run | best dev loss | final dev loss | final train loss | steps | steps to target | "
        "wall clock (s) |\n";
  md << "|---|---|---|---|---|---|---|\n";
  std::size_t total_steps = 0;
  double total_wall = 0.0;
  for (const LoadedRun& run : runs) {
    const ReportSummary& s = run.summary;
    md << "| " << run.label << " | " << md_cell(s.has_dev, s.best_dev_loss) << " | "
       << md_cell(s.has_dev, s.final_dev_loss) << " | " << format_double(s.final_train_loss)
       << " | " << s.steps << " | "
       << (s.steps_to_target ? std::to_string(*s.steps_to_target) : "unreached") << " | "
       << (run.has_wall_clock ? format_double(run.wall_clock_sec) : "-") << " |\n";
    total_steps += s.steps;
    total_wall += run.wall_clock_sec;
  }
  md << "\n";
  md << "- runs: " << runs.size() << "\n";
  md << "- total steps: " << total_steps << "\n";
  md << "- total wall clock (s): " << format_double(total_wall) << "\n";

  std::vector<std::string> written;

  // Dev-loss panel: one polyline per run over its eval steps.
  std::vector<SvgSeries> loss_series;
  for (const LoadedRun& run : runs) {
    SvgSeries s;
    s.label = run.label;
    for (const RunRecord& r : run.log.records) {
      if (!r.dev_loss) continue;
      s.xs.push_back(static_cast<double>(r.step));
      s.ys.push_back(*r.dev_loss);
    }
    if (!s.xs.empty()) loss_series.push_back(std::move(s));
  }
  if (!loss_series.empty()) {
    SvgChartOptions opt;
    opt.title = "dev loss";
    opt.y_label = "dev loss";
    opt.log_y = options.log_loss;
    const std::string path = out_dir + "/dev_loss.svg";
    write_file(path, render_line_chart(loss_series, opt));
    written.push_back(path);
    md << "\n![dev loss](dev_loss.svg)\n";
  }

  // One panel per guided hyperparameter; omitted when no run guided it.
  const auto hyper_panel = [&](const char* name, bool RunLog::* guided_flag,
                               double RunRecord::* value_field) {
    std::vector<SvgSeries> series;
    for (const LoadedRun& run : runs) {
      if (!(run.log.*guided_flag)) continue;
      SvgSeries s;
      s.label = run.label;
      for (const RunRecord& r : run.log.records) {
        s.xs.push_back(static_cast<double>(r.step));
        s.ys.push_back(r.*value_field);
      }
      series.push_back(std::move(s));
    }
    if (series.empty()) return;
    SvgChartOptions opt;
    opt.title = name;
    opt.y_label = name;
    const std::string path = out_dir + "/" + name + ".svg";
    write_file(path, render_line_chart(series, opt));
    written.push_back(path);
    md << "![" << name << "](" << name << ".svg)\n";
  };
  hyper_panel("alpha_scalar", &RunLog::alpha_guided, &RunRecord::alpha_scalar);
  hyper_panel("beta1", &RunLog::beta1_guided, &RunRecord::beta1);

  const std::string md_path = out_dir + "/report.md";
  write_file(md_path, md.str());
  written.push_back(md_path);
  return written;
}

}  // namespace guided
