// Copyright 2026 The screenparse Authors.
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

#ifndef SCREENPARSE_UTF8_H_
#define SCREENPARSE_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace screenparse::utf8 {

// Decodes UTF-8; each byte of a malformed sequence becomes U+FFFD.
std::u32string Decode(std::string_view s);

void Append(char32_t cp, std::string& out);
std::string Encode(std::u32string_view cps);

// Number of Unicode scalar values (malformed bytes count one each).
std::size_t Length(std::string_view s);

// Largest prefix length <= max_bytes that does not split a sequence.
std::size_t PrefixBoundary(std::string_view s, std::size_t max_bytes);

// ASCII whitespace only; NBSP and friends are deliberately not included.
inline bool IsSpace(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Collapses runs of ASCII whitespace to one space and trims both ends.
std::string CollapseWhitespace(std::string_view s);

}  // namespace screenparse::utf8

#endif  // SCREENPARSE_UTF8_H_
