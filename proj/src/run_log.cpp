// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "guided/run_log.hpp"

#include <fstream>
#include <sstream>

#include "guided/errors.hpp"
#include "guided/util.hpp"

namespace guided {

const char* const kRunCsvHeader =
    "step,train_loss,guidance_loss,dev_loss,alpha_scalar,beta1,raw_alpha,raw_beta1,"
    "hypergrad_alpha,hypergrad_beta1,lr_effective";

namespace {

std::string opt_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::optional<double> parse_opt(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  return std::stod(cell);
}

}  // namespace

void RunLog::write_csv(std::ostream& out) const {
  out << kRunCsvHeader << "\n";
  for (const RunRecord& r : records) {
    out << r.step << ',' << format_double(r.train_loss) << ',' << format_double(r.guidance_loss)
        << ',' << opt_field(r.dev_loss) << ','
        << (alpha_guided ? format_double(r.alpha_scalar) : std::string()) << ','
        << (beta1_guided ? format_double(r.beta1) : std::string()) << ','
        << opt_field(r.raw_alpha) << ',' << opt_field(r.raw_beta1) << ','
        << opt_field(r.hypergrad_alpha) << ',' << opt_field(r.hypergrad_beta1) << ','
        << format_double(r.lr_effective) << "\n";
  }
}

void RunLog::save_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_csv(out);
  if (!out) throw IoError("write failed for '" + path + "'");
}

RunLog RunLog::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty run log '" + path + "'");
  if (line != kRunCsvHeader) {
    throw IoError("'" + path + "' does not have the expected run.csv header");
  }
  RunLog log;
  std::size_t last_step = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream row(line);
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    // A trailing empty field is not returned by getline; pad.
    while (cells.size() < 11) cells.emplace_back();
    if (cells.size() != 11) throw IoError("bad row in '" + path + "'");
    RunRecord r;
    r.step = static_cast<std::size_t>(std::stoull(cells[0]));
    if (r.step <= last_step) throw IoError("non-increasing steps in '" + path + "'");
    last_step = r.step;
    r.train_loss = std::stod(cells[1]);
    r.guidance_loss = std::stod(cells[2]);
    r.dev_loss = parse_opt(cells[3]);
    r.alpha_scalar = cells[4].empty() ? 0.0 : std::stod(cells[4]);
    r.beta1 = cells[5].empty() ? 0.0 : std::stod(cells[5]);
    log.alpha_guided = log.alpha_guided || !cells[4].empty();
    log.beta1_guided = log.beta1_guided || !cells[5].empty();
    r.raw_alpha = parse_opt(cells[6]);
    r.raw_beta1 = parse_opt(cells[7]);
    r.hypergrad_alpha = parse_opt(cells[8]);
    r.hypergrad_beta1 = parse_opt(cells[9]);
    r.lr_effective = std::stod(cells[10]);
    log.records.push_back(r);
  }
  return log;
}

}  // namespace guided
