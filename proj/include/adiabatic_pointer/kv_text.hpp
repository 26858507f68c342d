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

// Line-oriented `key = value` text used by run configs and constants tables.
//
//   # comment
//   total_time = 500
//   total_times = [50, 100, 200]
//   profile = square

#pragma once

#include <charconv>
#include <cmath>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "adiabatic_pointer/errors.hpp"

namespace adiabatic {

using KvValue = std::variant<double, std::vector<double>, std::string>;

struct KvEntry {
  std::string key;
  KvValue value;
  int line = 0;
  int column = 0;
};

namespace detail {

inline bool is_key_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
inline bool is_key_char(char c) { return is_key_start(c) || (c >= '0' && c <= '9'); }
inline bool is_word_char(char c) {
  return is_key_char(c) || c == '.' || c == '-' || c == '+' || c == '/' || c == ':';
}

[[noreturn]] inline void parse_fail(int line, int column, const std::string& what) {
  fail(ErrorKind::ParseError,
       "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

inline bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace detail

/// Parses `source`; throws ParseError annotated with 1-based line and column.
inline std::vector<KvEntry> parse_kv_text(std::string_view source) {
  std::vector<KvEntry> entries;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    std::size_t eol = source.find('\n', pos);
    if (eol == std::string_view::npos) eol = source.size();
    std::string_view line = source.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    };
    skip_ws();
    if (i == line.size()) {
      if (eol == source.size()) break;
      continue;
    }

    if (!detail::is_key_start(line[i]))
      detail::parse_fail(line_no, static_cast<int>(i) + 1, "expected a key");
    const std::size_t key_begin = i;
    while (i < line.size() && detail::is_key_char(line[i])) ++i;
    std::string key(line.substr(key_begin, i - key_begin));
    skip_ws();
    if (i == line.size() || line[i] != '=')
      detail::parse_fail(line_no, static_cast<int>(i) + 1, "expected '=' after key '" + key + "'");
    ++i;
    skip_ws();
    if (i == line.size())
      detail::parse_fail(line_no, static_cast<int>(i) + 1, "missing value for key '" + key + "'");

    KvEntry entry;
    entry.key = key;
    entry.line = line_no;
    entry.column = static_cast<int>(key_begin) + 1;

    if (line[i] == '[') {
      ++i;
      std::vector<double> values;
      bool closed = false;
      while (i < line.size()) {
        skip_ws();
        if (i < line.size() && line[i] == ']') {
          closed = true;
          ++i;
          break;
        }
        const std::size_t item_begin = i;
        while (i < line.size() && line[i] != ',' && line[i] != ']' && line[i] != ' ' &&
               line[i] != '\t')
          ++i;
        double v = 0.0;
        if (!detail::parse_double(line.substr(item_begin, i - item_begin), v))
          detail::parse_fail(line_no, static_cast<int>(item_begin) + 1,
                             "expected a number in list for key '" + key + "'");
        values.push_back(v);
        skip_ws();
        if (i < line.size() && line[i] == ',') ++i;
      }
      if (!closed)
        detail::parse_fail(line_no, static_cast<int>(line.size()) + 1, "unterminated list");
      entry.value = std::move(values);
    } else {
      const std::size_t value_begin = i;
      while (i < line.size() && detail::is_word_char(line[i])) ++i;
      std::string_view token = line.substr(value_begin, i - value_begin);
      if (token.empty())
        detail::parse_fail(line_no, static_cast<int>(value_begin) + 1, "malformed value");
      double v = 0.0;
      if (detail::parse_double(token, v)) {
        entry.value = v;
      } else {
        entry.value = std::string(token);
      }
    }
    skip_ws();
    if (i != line.size())
      detail::parse_fail(line_no, static_cast<int>(i) + 1, "unexpected trailing characters");
    if (!seen.insert(entry.key).second)
      detail::parse_fail(line_no, entry.column, "duplicate key '" + entry.key + "'");
    entries.push_back(std::move(entry));
    if (eol == source.size()) break;
  }
  return entries;
}

/// Shortest round-trip decimal form, independent of the C locale.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

inline std::string format_kv_value(const KvValue& value) {
  if (const auto* d = std::get_if<double>(&value)) return format_double(*d);
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  const auto& list = std::get<std::vector<double>>(value);
  std::string out = "[";
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ", ";
    out += format_double(list[i]);
  }
  return out + "]";
}

}  // namespace adiabatic
