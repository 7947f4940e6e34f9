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

#ifndef ORACLE_LAB_CSV_H
#define ORACLE_LAB_CSV_H

#include <string>
#include <string_view>
#include <vector>

namespace oracle_lab {

/// One block of a CSV document: leading "# ..." comment lines (stored
/// without the "# " prefix), a header row, and data rows.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    bool operator==(const CsvTable &) const = default;
};

/// Tables separated by a single blank line. Lines end in '\n'.
struct CsvDocument {
    std::vector<CsvTable> tables;

    bool operator==(const CsvDocument &) const = default;
};

/// Quotes a field only if it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

std::string write_csv(const CsvDocument &doc);

/// Inverse of write_csv. Throws std::invalid_argument on ragged rows or
/// unterminated quotes.
CsvDocument parse_csv(std::string_view text);

}  // namespace oracle_lab

#endif
