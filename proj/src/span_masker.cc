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

#include "screenparse/span_masker.h"

#include <algorithm>
#include <cmath>

#include "screenparse/error.h"
#include "screenparse/random.h"
#include "screenparse/utf8.h"

namespace screenparse {
namespace {

void CollectTextLeaves(const ParseNode& node,
                       std::vector<const ParseNode*>& out) {
  if (node.kind == NodeKind::kText) {
    out.push_back(&node);
  } else if (node.kind == NodeKind::kGroup) {
    for (const ParseNode& child : node.children) CollectTextLeaves(child, out);
  }
}

struct Word {
  std::size_t begin;
  std::size_t end;
  bool masked = false;
};

struct LeafState {
  const ParseNode* node;
  std::size_t length;  // characters
  std::vector<Word> words;
  std::size_t unmasked_word_chars = 0;
};

bool IsWordBreak(char32_t c) { return utf8::IsSpace(c) || c == 0xA0; }

LeafState Tokenize(const ParseNode* node) {
  const std::u32string cps = utf8::Decode(node->text);
  LeafState leaf{node, cps.size(), {}, 0};
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && IsWordBreak(cps[i])) ++i;
    const std::size_t begin = i;
    while (i < cps.size() && !IsWordBreak(cps[i])) ++i;
    if (i > begin) {
      leaf.words.push_back({begin, i});
      leaf.unmasked_word_chars += i - begin;
    }
  }
  return leaf;
}

}  // namespace

std::vector<const ParseNode*> TextLeaves(const ParseNode& node) {
  std::vector<const ParseNode*> out;
  CollectTextLeaves(node, out);
  return out;
}

MaskPlan PlanMasks(const ParseNode& subtree, const RegionMap& regions,
                   const MaskOptions& options, std::uint64_t seed) {
  if (!(options.fraction >= 0.0 && options.fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mask fraction must be in [0, 1)");
  }
  std::vector<LeafState> leaves;
  MaskPlan plan;
  for (const ParseNode* node : TextLeaves(subtree)) {
    leaves.push_back(Tokenize(node));
    plan.total_chars += leaves.back().length;
  }
  const double goal = options.fraction * static_cast<double>(plan.total_chars);
  Rng rng(seed);
  while (static_cast<double>(plan.masked_chars) < goal) {
    std::uint64_t weight_total = 0;
    for (const LeafState& leaf : leaves) weight_total += leaf.unmasked_word_chars;
    if (weight_total == 0) break;

    std::uint64_t pick = rng.Uniform(weight_total);
    std::size_t leaf_index = 0;
    while (pick >= leaves[leaf_index].unmasked_word_chars) {
      pick -= leaves[leaf_index].unmasked_word_chars;
      ++leaf_index;
    }
    LeafState& leaf = leaves[leaf_index];

    std::vector<std::size_t> open;
    for (std::size_t w = 0; w < leaf.words.size(); ++w) {
      if (!leaf.words[w].masked) open.push_back(w);
    }
    const std::size_t first = open[rng.Uniform(open.size())];

    const auto deficit = static_cast<std::int64_t>(
        std::ceil(goal - static_cast<double>(plan.masked_chars)));
    const std::int64_t target =
        std::max<std::int64_t>(1, std::min(rng.Geometric(options.mean_span_chars),
                                           deficit));

    std::size_t last = first;
    auto span_length = [&] {
      return static_cast<std::int64_t>(leaf.words[last].end -
                                       leaf.words[first].begin);
    };
    while (span_length() < target && last + 1 < leaf.words.size() &&
           !leaf.words[last + 1].masked) {
      ++last;
    }
    for (std::size_t w = first; w <= last; ++w) {
      leaf.words[w].masked = true;
      leaf.unmasked_word_chars -= leaf.words[w].end - leaf.words[w].begin;
    }
    plan.masked_chars += static_cast<std::size_t>(span_length());
    plan.spans.push_back({leaf.node->source_id, leaf_index,
                          leaf.words[first].begin, leaf.words[last].end});
  }

  std::sort(plan.spans.begin(), plan.spans.end(),
            [](const MaskSpan& a, const MaskSpan& b) {
              return a.leaf_index != b.leaf_index
                         ? a.leaf_index < b.leaf_index
                         : a.char_start < b.char_start;
            });
  for (const MaskSpan& span : plan.spans) {
    if (!span.source_id) continue;
    const BBox* box = regions.Find(*span.source_id);
    if (box == nullptr || box->empty()) continue;
    const BBox rect = Intersect(
        SpanRect(*box, leaves[span.leaf_index].length, span.char_start,
                 span.char_end),
        {0, 0, regions.canvas_width, regions.canvas_height});
    if (!rect.empty()) plan.rects.push_back(rect);
  }
  plan.masked_fraction =
      plan.total_chars == 0 ? 0.0
                            : static_cast<double>(plan.masked_chars) /
                                  static_cast<double>(plan.total_chars);
  return plan;
}

BBox SpanRect(const BBox& box, std::size_t n, std::size_t start,
              std::size_t end) {
  if (box.empty() || n == 0 || end <= start) return {};
  const auto chars = static_cast<long long>(n);
  const long long w = box.w;
  const long long h = box.h;
  long long lines = std::llround(
      std::sqrt(static_cast<double>(chars * h) / static_cast<double>(2 * w)));
  lines = std::clamp<long long>(lines, 1, std::min<long long>(chars, h));
  const long long per_line = (chars + lines - 1) / lines;
  const auto s = static_cast<long long>(start);
  const auto e = static_cast<long long>(end);
  const long long first_line = s / per_line;
  const long long last_line = (e - 1) / per_line;
  const long long y0 = box.y + (h * first_line) / lines;
  const long long y1 = box.y + (h * (last_line + 1) + lines - 1) / lines;
  long long x0 = box.x;
  long long x1 = box.right();
  if (first_line == last_line) {
    const long long offset = first_line * per_line;
    x0 = box.x + (w * (s - offset)) / per_line;
    x1 = box.x + (w * (e - offset) + per_line - 1) / per_line;
  }
  return {static_cast<int>(x0), static_cast<int>(y0),
          static_cast<int>(std::max(1LL, x1 - x0)),
          static_cast<int>(std::max(1LL, y1 - y0))};
}

Image ApplyMasks(const Image& screenshot, const MaskPlan& plan, Rgb color) {
  Image out = screenshot;
  for (const BBox& rect : plan.rects) out.FillRect(rect, color);
  return out;
}

}  // namespace screenparse
