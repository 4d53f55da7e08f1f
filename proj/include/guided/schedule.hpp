// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_SCHEDULE_HPP
#define GUIDED_SCHEDULE_HPP

#include <cstddef>
#include <string>

namespace guided {

enum class ScheduleKind { constant, warmup_rsqrt, const_then_rsqrt };

const char* to_string(ScheduleKind kind);
ScheduleKind schedule_kind_from_string(const std::string& s);

/**
 * Learning-rate schedule, normalized to peak 1.0 so base_lr carries all
 * magnitude:
 *   constant          -> 1
 *   warmup_rsqrt      -> min(t/w, sqrt(w/t)); linear warmup, peak 1 at t=w
 *   const_then_rsqrt  -> 1 for t <= hold, sqrt(hold/t) after
 * Steps are 1-based; value(0) is a contract violation.
 */
struct Schedule {
  ScheduleKind kind = ScheduleKind::constant;
  std::size_t warmup_steps = 4000;
  std::size_t hold_steps = 10000;

  double value(std::size_t t) const;
};

double schedule_value(const Schedule& s, std::size_t t);

}  // namespace guided

#endif  // GUIDED_SCHEDULE_HPP
