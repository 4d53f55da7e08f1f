// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "guided/schedule.hpp"

#include <cmath>

#include "guided/errors.hpp"

namespace guided {

const char* to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::constant: return "constant";
    case ScheduleKind::warmup_rsqrt: return "warmup_rsqrt";
    case ScheduleKind::const_then_rsqrt: return "const_then_rsqrt";
  }
  return "?";
}

ScheduleKind schedule_kind_from_string(const std::string& s) {
  if (s == "constant") return ScheduleKind::constant;
  if (s == "warmup_rsqrt") return ScheduleKind::warmup_rsqrt;
  if (s == "const_then_rsqrt") return ScheduleKind::const_then_rsqrt;
  throw ConfigError("unknown schedule kind '" + s + "'");
}

double Schedule::value(std::size_t t) const {
  if (t == 0) throw ConfigError("schedule steps are 1-based; t=0 is invalid");
  const double td = static_cast<double>(t);
  switch (kind) {
    case ScheduleKind::constant:
      return 1.0;
    case ScheduleKind::warmup_rsqrt: {
      const double w = static_cast<double>(warmup_steps);
      return std::min(td / w, std::sqrt(w / td));
    }
    case ScheduleKind::const_then_rsqrt: {
      if (t <= hold_steps) return 1.0;
      return std::sqrt(static_cast<double>(hold_steps) / td);
    }
  }
  throw ConfigError("bad schedule kind");
}

double schedule_value(const Schedule& s, std::size_t t) { return s.value(t); }

}  // namespace guided
