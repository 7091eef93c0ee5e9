// Copyright 2026 The qkl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qkl::csv {

/// Shortest representation that parses back to the identical double.
std::string format_double(double value);
double parse_double(std::string_view text);
std::int64_t parse_int(std::string_view text);

using Value = std::variant<std::int64_t, double, std::string>;

/// UTF-8, comma-separated, LF newlines, header row first. Fields containing
/// commas, quotes or newlines are quoted RFC-4180 style.
class Writer {
  public:
    explicit Writer(std::vector<std::string> header);

    void add_row(const std::vector<Value>& values);

    std::string str() const;
    void write(const std::filesystem::path& path) const;  // throws IoError

    std::size_t row_count() const { return rows_.size(); }

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

Table parse(std::string_view text);
Table read(const std::filesystem::path& path);  // throws IoError

/// FNV-1a 64-bit checksum, hex-encoded; used in run manifests.
std::uint64_t fnv1a64(std::string_view bytes);
std::string file_checksum(const std::filesystem::path& path);  // throws IoError

}  // namespace qkl::csv
