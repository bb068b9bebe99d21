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

#include "ingest.h"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "errors.h"
#include "io.h"
#include "json.hpp"

namespace paraeval {

using nlohmann::json;

std::string FormatDouble(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

namespace {

// Builds one JSON object with keys in insertion order. Reals use the
// shortest round-trip form.
class ObjectWriter {
 public:
  void String(std::string_view key, const std::string& value) {
    Key(key);
    try {
      out_ += json(value).dump(-1, ' ', false, json::error_handler_t::strict);
    } catch (const json::exception&) {
      throw DataError("field " + std::string(key) + " is not valid UTF-8");
    }
  }
  void Int(std::string_view key, std::int64_t value) {
    Key(key);
    out_ += std::to_string(value);
  }
  void Real(std::string_view key, double value) {
    Key(key);
    out_ += FormatDouble(value);
  }
  void Reals(std::string_view key, const std::vector<double>& values) {
    Key(key);
    out_.push_back('[');
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) out_.push_back(',');
      out_ += FormatDouble(values[i]);
    }
    out_.push_back(']');
  }
  void Strings(std::string_view key, const std::vector<std::string>& values) {
    Key(key);
    try {
      out_ += json(values).dump(-1, ' ', false, json::error_handler_t::strict);
    } catch (const json::exception&) {
      throw DataError("field " + std::string(key) + " is not valid UTF-8");
    }
  }
  std::string Finish() {
    out_ += first_ ? "{}" : "}";
    return std::move(out_);
  }

 private:
  void Key(std::string_view key) {
    out_ += first_ ? "{\"" : ",\"";
    first_ = false;
    out_ += key;
    out_ += "\":";
  }

  std::string out_;
  bool first_ = true;
};

// Field access with line-numbered errors.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::size_t line,
               std::initializer_list<std::string_view> required,
               std::initializer_list<std::string_view> optional)
      : object_(object), line_(line) {
    std::set<std::string_view> known(required);
    known.insert(optional.begin(), optional.end());
    for (auto it = object.begin(); it != object.end(); ++it) {
      if (!known.contains(it.key())) {
        throw ParseError(line, "unknown field " + it.key());
      }
    }
    for (std::string_view name : required) {
      if (!object.contains(name)) {
        throw ParseError(line, "missing field " + std::string(name));
      }
    }
  }

  bool Has(std::string_view name) const {
    auto it = object_.find(name);
    return it != object_.end() && !it->is_null();
  }

  std::string String(std::string_view name) const {
    const json& v = object_.at(name);
    if (!v.is_string()) Fail(name, "a string");
    return v.get<std::string>();
  }

  std::int64_t Int(std::string_view name) const {
    const json& v = object_.at(name);
    if (!v.is_number_integer()) Fail(name, "an integer");
    if (v.is_number_unsigned() &&
        v.get<std::uint64_t>() >
            static_cast<std::uint64_t>(INT64_MAX)) {
      Fail(name, "an integer in range");
    }
    return v.get<std::int64_t>();
  }

  std::int64_t NonNegativeInt(std::string_view name) const {
    const std::int64_t value = Int(name);
    if (value < 0) Fail(name, "non-negative");
    return value;
  }

  double Real(std::string_view name) const {
    const json& v = object_.at(name);
    if (!v.is_number()) Fail(name, "a number");
    const double value = v.get<double>();
    if (!std::isfinite(value)) Fail(name, "finite");
    return value;
  }

  std::vector<double> Reals(std::string_view name) const {
    const json& v = object_.at(name);
    if (!v.is_array()) Fail(name, "an array of numbers");
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number()) Fail(name, "an array of numbers");
      const double value = e.get<double>();
      if (!std::isfinite(value)) Fail(name, "finite");
      out.push_back(value);
    }
    return out;
  }

  std::vector<std::string> Strings(std::string_view name) const {
    const json& v = object_.at(name);
    if (!v.is_array()) Fail(name, "an array of strings");
    std::vector<std::string> out;
    for (const json& e : v) {
      if (!e.is_string()) Fail(name, "an array of strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  ScoreType Type(std::string_view name) const {
    auto type = ParseScoreType(String(name));
    if (!type) Fail(name, "DA_Z or MQM");
    return *type;
  }

 private:
  [[noreturn]] void Fail(std::string_view name, std::string_view what) const {
    throw ParseError(line_, "field " + std::string(name) + " must be " +
                                std::string(what));
  }

  const json& object_;
  std::size_t line_;
};

json ParseObject(std::string_view line, std::size_t line_number) {
  json object;
  try {
    object = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(line_number, std::string("invalid JSON: ") + e.what());
  }
  if (!object.is_object()) {
    throw ParseError(line_number, "expected a JSON object");
  }
  return object;
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

std::vector<RatingRecord> ParseRatingsUnchecked(std::string_view bytes) {
  std::vector<RatingRecord> records;
  const auto lines = SplitLines(bytes);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (IsBlank(lines[i])) continue;
    const std::size_t line = i + 1;
    const json object = ParseObject(lines[i], line);
    ObjectReader in(object, line,
                    {"dataset_id", "lang_pair", "system_id", "doc_id",
                     "sent_index", "rater_id", "score", "score_type",
                     "source_text", "reference_text", "hypothesis_text"},
                    {"token_count_ref", "token_count_hyp"});
    RatingRecord r;
    r.dataset_id = in.String("dataset_id");
    r.lang_pair = in.String("lang_pair");
    r.system_id = in.String("system_id");
    r.doc_id = in.String("doc_id");
    r.sent_index = in.NonNegativeInt("sent_index");
    r.rater_id = in.String("rater_id");
    r.score = in.Real("score");
    r.score_type = in.Type("score_type");
    r.source_text = in.String("source_text");
    r.reference_text = in.String("reference_text");
    r.hypothesis_text = in.String("hypothesis_text");
    if (in.Has("token_count_ref")) {
      r.token_count_ref = in.NonNegativeInt("token_count_ref");
    }
    if (in.Has("token_count_hyp")) {
      r.token_count_hyp = in.NonNegativeInt("token_count_hyp");
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<RatingRecord> ParseRatings(std::string_view bytes) {
  std::vector<RatingRecord> records = ParseRatingsUnchecked(bytes);
  const ValidationReport report = ValidateRatings(records);
  if (!report.ok()) {
    std::string message = std::to_string(report.errors.size()) +
                          " validation error(s):";
    for (const std::string& e : report.errors) message += "\n  " + e;
    throw DataError(message);
  }
  return records;
}

std::string WriteRatings(std::span<const RatingRecord> records) {
  std::string out;
  for (const RatingRecord& r : records) {
    ObjectWriter w;
    w.String("dataset_id", r.dataset_id);
    w.String("lang_pair", r.lang_pair);
    w.String("system_id", r.system_id);
    w.String("doc_id", r.doc_id);
    w.Int("sent_index", r.sent_index);
    w.String("rater_id", r.rater_id);
    w.Real("score", r.score);
    w.String("score_type", std::string(ScoreTypeName(r.score_type)));
    w.String("source_text", r.source_text);
    w.String("reference_text", r.reference_text);
    w.String("hypothesis_text", r.hypothesis_text);
    if (r.token_count_ref) w.Int("token_count_ref", *r.token_count_ref);
    if (r.token_count_hyp) w.Int("token_count_hyp", *r.token_count_hyp);
    out += w.Finish();
    out.push_back('\n');
  }
  return out;
}

std::string WriteParagraphs(std::span<const ParagraphInstance> paragraphs) {
  std::string out;
  for (const ParagraphInstance& p : paragraphs) {
    ObjectWriter w;
    w.String("dataset_id", p.dataset_id);
    w.String("lang_pair", p.lang_pair);
    w.String("system_id", p.system_id);
    w.String("doc_id", p.doc_id);
    w.Int("start_index", p.start_index);
    w.Int("k", p.k);
    w.String("score_type", std::string(ScoreTypeName(p.score_type)));
    w.String("rater_id", p.rater_id);
    w.Real("human_score", p.human_score);
    w.Reals("sentence_scores", p.sentence_scores);
    w.String("source_text", p.source_text);
    w.String("reference_text", p.reference_text);
    w.String("hypothesis_text", p.hypothesis_text);
    if (p.has_alignment()) {
      w.Strings("source_sentences", p.source_sentences);
      w.Strings("reference_sentences", p.reference_sentences);
      w.Strings("hypothesis_sentences", p.hypothesis_sentences);
    }
    if (p.token_count_ref) w.Int("token_count_ref", *p.token_count_ref);
    if (p.token_count_hyp) w.Int("token_count_hyp", *p.token_count_hyp);
    out += w.Finish();
    out.push_back('\n');
  }
  return out;
}

std::vector<ParagraphInstance> ReadParagraphs(std::string_view bytes) {
  std::vector<ParagraphInstance> paragraphs;
  const auto lines = SplitLines(bytes);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (IsBlank(lines[i])) continue;
    const std::size_t line = i + 1;
    const json object = ParseObject(lines[i], line);
    ObjectReader in(
        object, line,
        {"dataset_id", "lang_pair", "system_id", "doc_id", "start_index", "k",
         "score_type", "rater_id", "human_score", "sentence_scores",
         "source_text", "reference_text", "hypothesis_text"},
        {"source_sentences", "reference_sentences", "hypothesis_sentences",
         "token_count_ref", "token_count_hyp"});
    ParagraphInstance p;
    p.dataset_id = in.String("dataset_id");
    p.lang_pair = in.String("lang_pair");
    p.system_id = in.String("system_id");
    p.doc_id = in.String("doc_id");
    p.start_index = in.NonNegativeInt("start_index");
    const std::int64_t k = in.Int("k");
    if (k < 1 || k > INT32_MAX) {
      throw ParseError(line, "field k must be a positive integer");
    }
    p.k = static_cast<int>(k);
    p.score_type = in.Type("score_type");
    p.rater_id = in.String("rater_id");
    p.human_score = in.Real("human_score");
    p.sentence_scores = in.Reals("sentence_scores");
    p.source_text = in.String("source_text");
    p.reference_text = in.String("reference_text");
    p.hypothesis_text = in.String("hypothesis_text");
    if (in.Has("source_sentences")) {
      p.source_sentences = in.Strings("source_sentences");
    }
    if (in.Has("reference_sentences")) {
      p.reference_sentences = in.Strings("reference_sentences");
    }
    if (in.Has("hypothesis_sentences")) {
      p.hypothesis_sentences = in.Strings("hypothesis_sentences");
    }
    if (in.Has("token_count_ref")) {
      p.token_count_ref = in.NonNegativeInt("token_count_ref");
    }
    if (in.Has("token_count_hyp")) {
      p.token_count_hyp = in.NonNegativeInt("token_count_hyp");
    }
    try {
      CheckParagraph(p);
    } catch (const DataError& e) {
      throw ParseError(line, e.what());
    }
    paragraphs.push_back(std::move(p));
  }
  return paragraphs;
}

namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

template <typename T>
bool ParseNumber(std::string_view text, T& value) {
  if (text.empty()) return false;
  if (text.front() == '+') return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::pair<std::string, ScoringMode> SplitMetricMode(std::string_view column) {
  const std::size_t at = column.rfind('@');
  if (at != std::string_view::npos) {
    const std::string_view suffix = column.substr(at + 1);
    if (suffix == "direct") {
      return {std::string(column.substr(0, at)), ScoringMode::kDirect};
    }
    if (suffix == "aligned") {
      return {std::string(column.substr(0, at)), ScoringMode::kAlignedAvg};
    }
  }
  return {std::string(column), ScoringMode::kExternal};
}

}  // namespace

std::vector<ScoreTable> ParseExternalScores(std::string_view bytes) {
  using TableKey = std::tuple<std::string, std::string, int, ScoringMode>;
  std::map<TableKey, ScoreTable> tables;
  const auto lines = SplitLines(bytes);
  std::size_t first = 0;
  while (first < lines.size() && lines[first].empty()) ++first;
  if (first == lines.size()) {
    throw ParseError(1, "missing header row");
  }
  if (lines[first] != kScoresHeader) {
    throw ParseError(first + 1, "header must be \"metric\\tlang_pair\\tsystem"
                                "\\tdoc_id\\tstart_index\\tk\\tscore\"");
  }
  for (std::size_t i = first + 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::size_t line = i + 1;
    const auto fields = SplitTabs(lines[i]);
    if (fields.size() != 7) {
      throw ParseError(line, "expected 7 columns, got " +
                                 std::to_string(fields.size()));
    }
    std::int64_t start = 0;
    int k = 0;
    double score = 0.0;
    if (!ParseNumber(fields[4], start) || start < 0) {
      throw ParseError(line, "start_index must be a non-negative integer");
    }
    if (!ParseNumber(fields[5], k) || k < 1) {
      throw ParseError(line, "k must be a positive integer");
    }
    if (!ParseNumber(fields[6], score) || !std::isfinite(score)) {
      throw ParseError(line, "score must be a finite real");
    }
    auto [metric, mode] = SplitMetricMode(fields[0]);
    const std::string lang_pair(fields[1]);
    TableKey key{metric, lang_pair, k, mode};
    auto it = tables.find(key);
    if (it == tables.end()) {
      it = tables.emplace(key, ScoreTable(metric, mode, lang_pair, k)).first;
    }
    try {
      it->second.Insert(std::string(fields[2]),
                        ItemKey{std::string(fields[3]), start, k}, score);
    } catch (const DataError& e) {
      throw ParseError(line, e.what());
    }
  }
  std::vector<ScoreTable> out;
  for (auto& [key, table] : tables) out.push_back(std::move(table));
  return out;
}

std::string WriteScores(std::span<const ScoreTable> tables) {
  auto check = [](std::string_view field) {
    if (field.find_first_of("\t\n\r") != std::string_view::npos) {
      throw DataError("scores field contains a tab or newline: " +
                      std::string(field));
    }
    return field;
  };
  std::string out(kScoresHeader);
  out.push_back('\n');
  for (const ScoreTable& table : tables) {
    std::string metric = table.metric_name();
    if (table.mode() != ScoringMode::kExternal) {
      metric += "@";
      metric += ScoringModeName(table.mode());
    }
    check(metric);
    check(table.lang_pair());
    for (const auto& [key, score] : table.entries()) {
      out += metric;
      out.push_back('\t');
      out += table.lang_pair();
      out.push_back('\t');
      out += check(key.system_id);
      out.push_back('\t');
      out += check(key.item.doc_id);
      out.push_back('\t');
      out += std::to_string(key.item.start_index);
      out.push_back('\t');
      out += std::to_string(key.item.k);
      out.push_back('\t');
      out += FormatDouble(score);
      out.push_back('\n');
    }
  }
  return out;
}

}  // namespace paraeval
