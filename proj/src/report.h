// Copyright 2026 The paraeval Authors.
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

#ifndef PARAEVAL_REPORT_H_
#define PARAEVAL_REPORT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace paraeval {

// One statistic for one evaluation unit. `metric` and `mode` are "-" for
// statistics of the human ratings alone.
struct ReportRow {
  std::string dataset;
  std::string lang_pair;
  int k = 0;
  std::string metric;
  std::string mode;
  std::string statistic;
  double value = 0.0;
  std::optional<double> epsilon;

  bool operator==(const ReportRow&) const = default;
};

struct Report {
  std::vector<ReportRow> rows;
  // Units or statistics that were skipped, with the reason.
  std::vector<std::string> warnings;

  void Append(Report&& other);
};

inline constexpr std::string_view kReportHeader =
    "dataset\tlang_pair\tk\tmetric\tmode\tstatistic\tvalue\tepsilon";

// Tab-separated with a header row; a missing epsilon is written as "-".
std::string FormatReportTsv(const Report& report);

// One JSON object per row with the same keys; a missing epsilon is null.
std::string FormatReportJsonl(const Report& report);

}  // namespace paraeval

#endif  // PARAEVAL_REPORT_H_
