// Copyright 2026 The Oracle Lab Authors
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

#include "oracle_lab/csv.h"

#include <stdexcept>

namespace oracle_lab {

namespace {

void append_row(std::string &out, const std::vector<std::string> &fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += csv_escape(fields[i]);
    }
    out += '\n';
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::string current;
    bool quoted = false;
    for (char c : text) {
        if (c == '"') {
            quoted = !quoted;
        }
        if (c == '\n' && !quoted) {
            lines.push_back(std::move(current));
            current.clear();
            continue;
        }
        current += c;
    }
    if (quoted) {
        throw std::invalid_argument("csv: unterminated quoted field");
    }
    if (!current.empty()) {
        lines.push_back(std::move(current));
    }
    return lines;
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    fields.back() += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

}  // namespace

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string write_csv(const CsvDocument &doc) {
    std::string out;
    for (size_t t = 0; t < doc.tables.size(); ++t) {
        if (t) {
            out += '\n';
        }
        const CsvTable &table = doc.tables[t];
        for (const auto &c : table.comments) {
            out += "# ";
            out += c;
            out += '\n';
        }
        append_row(out, table.header);
        for (const auto &row : table.rows) {
            append_row(out, row);
        }
    }
    return out;
}

CsvDocument parse_csv(std::string_view text) {
    CsvDocument doc;
    CsvTable current;
    bool have_header = false;
    auto flush = [&]() {
        if (have_header) {
            doc.tables.push_back(std::move(current));
        } else if (!current.comments.empty()) {
            throw std::invalid_argument("csv: comment block without a header row");
        }
        current = CsvTable{};
        have_header = false;
    };
    for (const std::string &line : split_lines(text)) {
        if (line.empty()) {
            flush();
            continue;
        }
        if (!have_header && line.starts_with("#")) {
            current.comments.push_back(line.starts_with("# ") ? line.substr(2) : line.substr(1));
            continue;
        }
        auto fields = split_fields(line);
        if (!have_header) {
            current.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != current.header.size()) {
            throw std::invalid_argument("csv: row has " + std::to_string(fields.size()) + " fields, header has " +
                                        std::to_string(current.header.size()));
        }
        current.rows.push_back(std::move(fields));
    }
    flush();
    return doc;
}

}  // namespace oracle_lab
