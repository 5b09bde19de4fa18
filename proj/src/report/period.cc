// Copyright 2026 The retrace Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "retrace/report/period.h"

#include <charconv>

#include "retrace/common/error.h"
#include "retrace/common/strings.h"

namespace retrace::report {

std::string_view period_label(Period p) {
  switch (p) {
    case Period::kP1:
      return "P1";
    case Period::kP2:
      return "P2";
    case Period::kP3:
      return "P3";
    case Period::kOutOfRange:
      break;
  }
  return "out-of-range";
}

void PeriodConfig::validate() const {
  if (!(publication <= partial && partial < full && full < end)) {
    throw ValidationError("period years must satisfy publication <= partial < full < end");
  }
}

PeriodConfig parse_periods(std::string_view text) {
  auto parts = split(text, ',');
  if (parts.size() != 4) {
    throw ValidationError("periods need four comma-separated years, got '" +
                          std::string(text) + "'");
  }
  int years[4];
  for (int i = 0; i < 4; ++i) {
    std::string p = trim(parts[i]);
    auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), years[i]);
    if (ec != std::errc() || ptr != p.data() + p.size()) {
      throw ValidationError("bad period year '" + p + "'");
    }
  }
  PeriodConfig c{years[0], years[1], years[2], years[3]};
  c.validate();
  return c;
}

Period partition_period(int year, const PeriodConfig& c) {
  if (year >= c.publication && year <= c.partial) return Period::kP1;
  if (year > c.partial && year <= c.full) return Period::kP2;
  if (year > c.full && year <= c.end) return Period::kP3;
  return Period::kOutOfRange;
}

}  // namespace retrace::report
