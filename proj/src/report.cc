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

#include "report.h"

#include "ingest.h"
#include "json.hpp"

namespace paraeval {

void Report::Append(Report&& other) {
  rows.insert(rows.end(), std::make_move_iterator(other.rows.begin()),
              std::make_move_iterator(other.rows.end()));
  warnings.insert(warnings.end(),
                  std::make_move_iterator(other.warnings.begin()),
                  std::make_move_iterator(other.warnings.end()));
}

namespace {

std::string Sanitize(const std::string& field) {
  std::string out = field;
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::string Quote(const std::string& s) {
  return nlohmann::json(s).dump(-1, ' ', false,
                                nlohmann::json::error_handler_t::replace);
}

}  // namespace

std::string FormatReportTsv(const Report& report) {
  std::string out(kReportHeader);
  out.push_back('\n');
  for (const ReportRow& row : report.rows) {
    out += Sanitize(row.dataset) + '\t' + Sanitize(row.lang_pair) + '\t' +
           std::to_string(row.k) + '\t' + Sanitize(row.metric) + '\t' +
           Sanitize(row.mode) + '\t' + Sanitize(row.statistic) + '\t' +
           FormatDouble(row.value) + '\t' +
           (row.epsilon ? FormatDouble(*row.epsilon) : std::string("-")) +
           '\n';
  }
  return out;
}

std::string FormatReportJsonl(const Report& report) {
  std::string out;
  for (const ReportRow& row : report.rows) {
    out += "{\"dataset\":" + Quote(row.dataset) +
           ",\"lang_pair\":" + Quote(row.lang_pair) +
           ",\"k\":" + std::to_string(row.k) +
           ",\"metric\":" + Quote(row.metric) + ",\"mode\":" + Quote(row.mode) +
           ",\"statistic\":" + Quote(row.statistic) +
           ",\"value\":" + FormatDouble(row.value) + ",\"epsilon\":" +
           (row.epsilon ? FormatDouble(*row.epsilon) : std::string("null")) +
           "}\n";
  }
  return out;
}

}  // namespace paraeval
