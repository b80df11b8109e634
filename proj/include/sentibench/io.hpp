// Copyright 2026 The sentibench Authors.
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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace sentibench {

/// Writes `content` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partial file. Throws Error on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_text_file(const std::filesystem::path& path);

/// Parses a JSON file; DataError on unreadable or malformed input.
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Stable text form for files: two-space indent, sorted keys (for
/// nlohmann::json), invalid UTF-8 replaced, trailing newline.
std::string dump_json(const nlohmann::json& j);
std::string dump_json(const nlohmann::ordered_json& j);

/// Rounds to `decimals` places for reporting.
double round_to(double value, int decimals);

}  // namespace sentibench
