// Copyright 2026 The repro-bound Authors
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

/// \file
/// Minimal CSV writing and reading for the toolkit's own tables. Fields never
/// contain commas, quotes or newlines, so no quoting is needed.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "repro/errors.hpp"

namespace repro {

/// Renders with 17 significant digits so values round-trip exactly.
inline std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format_number(long long x) { return std::to_string(x); }
inline std::string format_number(unsigned long long x) { return std::to_string(x); }
inline std::string format_number(int x) { return std::to_string(x); }
inline std::string format_number(unsigned long x) { return std::to_string(x); }
inline std::string format_number(long x) { return std::to_string(x); }

/// Replaces characters that would break a CSV field.
inline std::string sanitize_field(std::string_view text) {
    std::string out(text);
    for (char &c : out) {
        if (c == ',' || c == '\n' || c == '\r' || c == '"') {
            c = ' ';
        }
    }
    return out;
}

class CsvWriter {
   public:
    explicit CsvWriter(const std::filesystem::path &path) : path_(path), out_(path, std::ios::binary) {
        if (!out_) {
            throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
        }
    }

    void row(const std::vector<std::string> &fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) {
                out_ << ',';
            }
            out_ << fields[i];
        }
        out_ << '\n';
        if (!out_) {
            throw Error(ErrorKind::io, "write to " + path_.string() + " failed");
        }
    }

    void close() {
        out_.close();
        if (!out_) {
            throw Error(ErrorKind::io, "closing " + path_.string() + " failed");
        }
    }

   private:
    std::filesystem::path path_;
    std::ofstream out_;
};

/// A parsed CSV table with a header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(std::string_view name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) {
                return i;
            }
        }
        throw Error(ErrorKind::input, "missing column '" + std::string(name) + "'");
    }
};

inline std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

/// Reads a CSV file. Missing files raise `missing_kind` so callers can decide
/// whether absence means bad input or incomplete artifacts.
inline CsvTable read_csv(const std::filesystem::path &path, ErrorKind missing_kind = ErrorKind::input) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(missing_kind, "cannot read " + path.string());
    }
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        auto fields = split_csv_line(line);
        if (table.header.empty()) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw Error(ErrorKind::input, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                              std::to_string(table.header.size()) + " fields, got " +
                                              std::to_string(fields.size()));
        }
        table.rows.push_back(std::move(fields));
    }
    if (table.header.empty()) {
        throw Error(ErrorKind::input, path.string() + " is empty");
    }
    return table;
}

/// Parses a numeric CSV field; "nan"/"inf" are accepted.
inline double parse_double(const std::string &text, std::string_view what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw Error(ErrorKind::input, "field '" + std::string(what) + "' is not a number: '" + text + "'");
}

inline long long parse_integer(const std::string &text, std::string_view what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used == text.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw Error(ErrorKind::input, "field '" + std::string(what) + "' is not an integer: '" + text + "'");
}

}  // namespace repro
