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

#ifndef PARAEVAL_INGEST_H_
#define PARAEVAL_INGEST_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "model.h"

namespace paraeval {

// Ratings file: one JSON object per line with exactly the RatingRecord
// fields (token_count_ref and token_count_hyp optional). Blank lines are
// skipped. Throws ParseError for a malformed line.
std::vector<RatingRecord> ParseRatingsUnchecked(std::string_view bytes);

// As above, then validates; throws DataError listing every validation
// error.
std::vector<RatingRecord> ParseRatings(std::string_view bytes);

std::string WriteRatings(std::span<const RatingRecord> records);

// Paragraph file: one JSON object per line, fields in a fixed order.
// Reading checks every ParagraphInstance invariant.
std::string WriteParagraphs(std::span<const ParagraphInstance> paragraphs);
std::vector<ParagraphInstance> ReadParagraphs(std::string_view bytes);

// Scores file header.
inline constexpr std::string_view kScoresHeader =
    "metric\tlang_pair\tsystem\tdoc_id\tstart_index\tk\tscore";

// Parses a scores file into one table per (metric, lang_pair, k), sorted by
// that triple. A metric column of the form "name@direct" or "name@aligned"
// (as written by WriteScores) restores that scoring mode; anything else is
// an external metric.
std::vector<ScoreTable> ParseExternalScores(std::string_view bytes);

// Inverse of ParseExternalScores. Throws DataError for fields containing
// tabs or newlines.
std::string WriteScores(std::span<const ScoreTable> tables);

// Shortest decimal that round-trips to the same double.
std::string FormatDouble(double value);

}  // namespace paraeval

#endif  // PARAEVAL_INGEST_H_
