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

#ifndef SCREENPARSE_SPAN_MASKER_H_
#define SCREENPARSE_SPAN_MASKER_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "screenparse/html_condenser.h"
#include "screenparse/image.h"
#include "screenparse/parse_format.h"

namespace screenparse {

inline constexpr double kDefaultMaskFraction = 0.5;
inline constexpr double kDefaultMeanSpanChars = 20.0;
inline constexpr Rgb kDefaultMaskColor{128, 128, 128};

// A masked character range [char_start, char_end) of one text leaf, in
// Unicode scalar values of the unescaped text.
struct MaskSpan {
  std::optional<NodeId> source_id;
  std::size_t leaf_index = 0;  // position among the subtree's text leaves
  std::size_t char_start = 0;
  std::size_t char_end = 0;

  friend bool operator==(const MaskSpan&, const MaskSpan&) = default;
};

struct MaskPlan {
  std::vector<MaskSpan> spans;  // sorted by (leaf_index, char_start)
  std::vector<BBox> rects;      // screen rectangles to paint
  std::size_t masked_chars = 0;
  std::size_t total_chars = 0;  // all text-leaf characters of the subtree
  double masked_fraction = 0.0;

  friend bool operator==(const MaskPlan&, const MaskPlan&) = default;
};

struct MaskOptions {
  double fraction = kDefaultMaskFraction;
  double mean_span_chars = kDefaultMeanSpanChars;
};

// Text leaves of `node` in document order. Image alt-text is never masked.
std::vector<const ParseNode*> TextLeaves(const ParseNode& node);

// Samples word-aligned spans until the masked share of the subtree's text
// characters reaches `options.fraction` or no unmasked word is left:
//  - pick a text leaf with probability proportional to its unmasked word
//    characters, then a uniformly random unmasked word in it;
//  - draw a target length from a geometric distribution with the configured
//    mean, capped at the characters still needed;
//  - extend over following unmasked words until the target is covered.
// Deterministic in (subtree, regions, options, seed). Throws
// Error(kInvalidArgument) unless 0 <= fraction < 1.
MaskPlan PlanMasks(const ParseNode& subtree, const RegionMap& regions,
                   const MaskOptions& options, std::uint64_t seed);

// Screen rectangle for characters [start, end) of an n-character leaf drawn
// in `box`. The line count is estimated from the box shape assuming glyphs
// half as wide as a line is tall; edges round outward.
BBox SpanRect(const BBox& box, std::size_t n, std::size_t start,
              std::size_t end);

// Fills every rect of the plan; all other pixels are untouched.
Image ApplyMasks(const Image& screenshot, const MaskPlan& plan,
                 Rgb color = kDefaultMaskColor);

}  // namespace screenparse

#endif  // SCREENPARSE_SPAN_MASKER_H_
