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

#ifndef RETRACE_REPORT_PERIOD_H_
#define RETRACE_REPORT_PERIOD_H_

#include <string>
#include <string_view>

namespace retrace::report {

enum class Period { kP1, kP2, kP3, kOutOfRange };

std::string_view period_label(Period p);  // "P1", "P2", "P3", "out-of-range"

// Publication year, partial and full retraction years, and the corpus end.
struct PeriodConfig {
  int publication = 1998;
  int partial = 2004;
  int full = 2010;
  int end = 2017;

  // Throws ValidationError unless publication <= partial < full < end.
  void validate() const;
};

// "1998,2004,2010,2017". Validates.
PeriodConfig parse_periods(std::string_view text);

// P1: publication..partial, P2: (partial, full], P3: (full, end].
Period partition_period(int year, const PeriodConfig& config);

}  // namespace retrace::report

#endif  // RETRACE_REPORT_PERIOD_H_
