// Copyright 2026 The mtstreams Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Status file format (ASCII, LF endings, no trailing whitespace):
//
//   MT19937-STATUS v1
//   <mt[0]>
//   ...
//   <mt[623]>
//   <mti>
//
// Values are plain decimal without leading zeros, so two equal statuses
// always produce byte-identical files.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

#include "mtstreams/error.hpp"
#include "mtstreams/mt19937.hpp"

namespace mts {

inline constexpr std::string_view kStatusHeader = "MT19937-STATUS v1";
inline constexpr std::size_t kStatusLines = 1 + kStateWords + 1;

inline std::string serialize_status(const MtState& state) {
  std::string out;
  out.reserve(kStateWords * 11 + 32);
  out += kStatusHeader;
  out += '\n';
  char buf[16];
  for (std::uint32_t w : state.words()) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, w);
    out.append(buf, end);
    out += '\n';
  }
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, state.index());
  out.append(buf, end);
  out += '\n';
  return out;
}

namespace detail {

inline std::uint32_t parse_status_value(std::string_view text, std::size_t line_no,
                                        std::uint64_t max_value) {
  auto fail = [&](const char* what) {
    return ParseError("status line " + std::to_string(line_no) + ": " + what);
  };
  if (text.empty()) throw fail("empty value");
  if (text.size() > 1 && text.front() == '0') throw fail("leading zero");
  for (char c : text)
    if (c < '0' || c > '9') throw fail("non-digit character");
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v > max_value)
    throw fail("value out of range");
  return static_cast<std::uint32_t>(v);
}

}  // namespace detail

// Strict inverse of serialize_status: anything serialize_status could not
// have produced is rejected with ParseError.
inline MtState parse_status(std::string_view text) {
  if (text.empty() || text.back() != '\n') throw ParseError("status file must end with a newline");
  text.remove_suffix(1);
  std::size_t line_no = 0;
  StateWords words{};
  std::uint32_t index = 0;
  std::size_t pos = 0;
  while (true) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    ++line_no;
    if (line_no > kStatusLines)
      throw ParseError("status file has more than " + std::to_string(kStatusLines) + " lines");
    if (line_no == 1) {
      if (line != kStatusHeader) throw ParseError("status line 1: bad header");
    } else if (line_no <= 1 + kStateWords) {
      words[line_no - 2] = detail::parse_status_value(line, line_no, 0xFFFFFFFFull);
    } else {
      index = detail::parse_status_value(line, line_no, kStateWords);
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (line_no != kStatusLines)
    throw ParseError("status file has " + std::to_string(line_no) + " lines, expected " +
                     std::to_string(kStatusLines));
  try {
    return MtState(words, index);
  } catch (const ConfigError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace mts
