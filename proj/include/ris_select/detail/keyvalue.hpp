// SPDX-License-Identifier: Apache-2.0
//
// ris-select: RIS type selection and sum-rate analysis
// Copyright (C) 2026 The ris-select Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "../errors.hpp"

namespace ris_select::detail {

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

// Flat `key = value` text. `#` starts a comment; blank lines are ignored.
inline std::vector<KeyValue> parse_key_values(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<KeyValue> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw SyntaxError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw SyntaxError(line_no, "empty key");
    for (char c : key) {
      const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
      if (!ok) throw SyntaxError(line_no, "invalid character in key '" + std::string(key) + "'");
    }
    if (value.empty()) throw SyntaxError(line_no, "missing value for '" + std::string(key) + "'");
    entries.push_back({std::string(key), std::string(value), line_no});
  }
  return entries;
}

inline double parse_double(const KeyValue& kv) {
  std::string_view s = kv.value;
  if (s.starts_with('+')) s.remove_prefix(1);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw SyntaxError(kv.line, kv.key + ": expected a number, got '" + kv.value + "'");
  return out;
}

inline long long parse_integer(const KeyValue& kv) {
  std::string_view s = kv.value;
  if (s.starts_with('+')) s.remove_prefix(1);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw SyntaxError(kv.line, kv.key + ": expected an integer, got '" + kv.value + "'");
  return out;
}

inline unsigned long long parse_unsigned(const KeyValue& kv) {
  std::string_view s = kv.value;
  unsigned long long out = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw SyntaxError(kv.line, kv.key + ": expected a non-negative integer, got '" + kv.value + "'");
  return out;
}

// Comma- and/or whitespace-separated tokens.
inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

inline std::vector<double> parse_double_list(const KeyValue& kv) {
  std::vector<double> out;
  for (auto& token : split_list(kv.value)) out.push_back(parse_double({kv.key, token, kv.line}));
  return out;
}

// Shortest round-trip representation, locale independent.
inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// Fixed significant digits, locale independent.
inline std::string format_double(double v, int significant_digits) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, significant_digits);
  return std::string(buf, ptr);
}

}  // namespace ris_select::detail
