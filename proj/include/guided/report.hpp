// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_REPORT_HPP
#define GUIDED_REPORT_HPP

#include <string>
#include <vector>

namespace guided {

struct ReportOptions {
  bool log_loss = false;  // log-scale dev loss panel
};

/**
 * Renders report.md plus SVG panels (dev_loss.svg; alpha_scalar.svg and
 * beta1.svg when some run guided that hyperparameter) from a list of run
 * directories. Run directories with a malformed run.csv are skipped with a
 * warning line in the report. Returns the paths written.
 */
std::vector<std::string> write_report(const std::vector<std::string>& run_dirs,
                                      const std::string& out_dir,
                                      const ReportOptions& options = {});

}  // namespace guided

#endif  // GUIDED_REPORT_HPP
