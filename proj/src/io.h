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

#ifndef PARAEVAL_IO_H_
#define PARAEVAL_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace paraeval {

// Reads a whole file. Gzip input is detected by its magic bytes and
// inflated. Throws IoError naming the path.
std::string ReadInput(const std::filesystem::path& path);

// Inflates a gzip stream (possibly several concatenated members).
std::string Gunzip(std::string_view compressed);

// Writes to a temporary sibling and renames it over `path`.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents);

// Expands directories to their *.jsonl and *.jsonl.gz files (sorted by
// name); plain file arguments are kept in order. Missing paths throw
// IoError.
std::vector<std::filesystem::path> ExpandInputs(
    const std::vector<std::string>& paths);

// Splits on '\n'; a trailing '\r' is dropped from each line.
std::vector<std::string_view> SplitLines(std::string_view text);

}  // namespace paraeval

#endif  // PARAEVAL_IO_H_
