// Copyright 2026 The adiabatic-pointer Authors
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

#include <string>
#include <string_view>
#include <vector>

namespace adiabatic::csv {

struct Row {
  int line = 0;
  std::vector<std::string> fields;
};

/// Minimal RFC 4180 reader: comma separated, double-quoted fields may hold
/// commas and "" escapes. Blank lines and lines starting with '#' are skipped.
/// Returns false with `error` set on an unterminated quote.
inline bool read(std::string_view text, std::vector<Row>& rows, std::string& error) {
  rows.clear();
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t eol = text.find('\n', i);
    std::string_view raw = text.substr(i, eol == std::string_view::npos ? text.npos : eol - i);
    const std::size_t first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || raw[first] == '#') {
      if (eol == std::string_view::npos) break;
      i = eol + 1;
      ++line;
      continue;
    }
    Row row{line, {}};
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (;; ++i) {
      if (i >= text.size()) {
        if (quoted) {
          error = "line " + std::to_string(row.line) + ": unterminated quoted field";
          return false;
        }
        break;
      }
      const char ch = text[i];
      if (quoted) {
        if (ch == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field += '"';
            ++i;
          } else {
            quoted = false;
          }
        } else {
          if (ch == '\n') ++line;
          field += ch;
        }
        continue;
      }
      if (ch == '"' && field.empty() && !was_quoted) {
        quoted = was_quoted = true;
      } else if (ch == ',') {
        row.fields.push_back(std::move(field));
        field.clear();
        was_quoted = false;
      } else if (ch == '\n') {
        ++i;
        break;
      } else if (ch != '\r') {
        field += ch;
      }
    }
    row.fields.push_back(std::move(field));
    rows.push_back(std::move(row));
    ++line;
  }
  return true;
}

/// Quotes a field when it contains a comma, quote or newline.
inline std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += escape(fields[i]);
  }
  return out;
}

}  // namespace adiabatic::csv
