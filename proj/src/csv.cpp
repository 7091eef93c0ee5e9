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

#include "qkl/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qkl/errors.hpp"

namespace qkl::csv {

namespace {

bool needs_quoting(std::string_view field) {
    return field.find_first_of(",\"\n\r") != std::string_view::npos;
}

std::string quote(std::string_view field) {
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string render(const Value& value) {
    if (const auto* i = std::get_if<std::int64_t>(&value)) {
        return std::to_string(*i);
    }
    if (const auto* d = std::get_if<double>(&value)) {
        return format_double(*d);
    }
    return std::get<std::string>(value);
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
        throw std::invalid_argument("parse_double: bad number: " + std::string(text));
    }
    return value;
}

std::int64_t parse_int(std::string_view text) {
    std::int64_t value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
        throw std::invalid_argument("parse_int: bad integer: " + std::string(text));
    }
    return value;
}

Writer::Writer(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) {
        throw std::invalid_argument("csv::Writer: empty header");
    }
}

void Writer::add_row(const std::vector<Value>& values) {
    if (values.size() != header_.size()) {
        throw std::invalid_argument("csv::Writer: row width does not match header");
    }
    std::vector<std::string> row;
    row.reserve(values.size());
    for (const Value& value : values) {
        row.push_back(render(value));
    }
    rows_.push_back(std::move(row));
}

std::string Writer::str() const {
    std::ostringstream out;
    auto emit_line = [&out](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << (needs_quoting(fields[i]) ? quote(fields[i]) : fields[i]);
        }
        out << '\n';
    };
    emit_line(header_);
    for (const auto& row : rows_) {
        emit_line(row);
    }
    return out.str();
}

void Writer::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("csv: cannot open for writing: " + path.string());
    }
    out << str();
    if (!out) {
        throw IoError("csv: write failed: " + path.string());
    }
}

Table parse(std::string_view text) {
    Table table;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool saw_any = false;

    auto end_field = [&] {
        fields.push_back(field);
        field.clear();
    };
    auto end_line = [&] {
        end_field();
        if (!saw_any) {
            table.header = fields;
            saw_any = true;
        } else {
            table.rows.push_back(fields);
        }
        fields.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            end_line();
        } else if (c != '\r') {
            field += c;
        }
    }
    if (!field.empty() || !fields.empty()) {
        end_line();
    }
    if (!saw_any) {
        throw std::invalid_argument("csv::parse: missing header row");
    }
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw std::invalid_argument("csv::parse: ragged row");
        }
    }
    return table;
}

Table read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("csv: cannot open for reading: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string file_checksum(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("checksum: cannot open: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(buffer.str())));
    return std::string(hex);
}

}  // namespace qkl::csv
