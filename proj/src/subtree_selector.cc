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

#include "screenparse/subtree_selector.h"

#include <optional>

#include "screenparse/error.h"

namespace screenparse {
namespace {

void AccumulateLeaves(const ParseNode& node, const RegionMap& regions,
                      std::optional<BBox>& acc) {
  if (node.is_leaf()) {
    if (!node.source_id) return;
    const BBox* box = regions.Find(*node.source_id);
    if (box == nullptr || box->empty()) return;
    acc = acc ? Union(*acc, *box) : *box;
    return;
  }
  for (const ParseNode& child : node.children) {
    AccumulateLeaves(child, regions, acc);
  }
}

}  // namespace

BBox LeafRegionUnion(const ParseNode& node, const RegionMap& regions) {
  std::optional<BBox> acc;
  AccumulateLeaves(node, regions, acc);
  if (!acc) return {};
  return Intersect(*acc,
                   {0, 0, regions.canvas_width, regions.canvas_height});
}

Selection SelectSubtree(const ParseNode& tree, const RegionMap& regions,
                        std::size_t budget_chars) {
  if (budget_chars < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "budget must allow at least one character node");
  }
  const auto index = IndexTree(tree);
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto& cand = index[i];
    if (cand.char_length > budget_chars) continue;
    if (!best) {
      best = i;
      continue;
    }
    const auto& cur = index[*best];
    // Preorder visits earlier nodes first, so strict comparisons keep the
    // earliest among equals.
    if (cand.char_length > cur.char_length ||
        (cand.char_length == cur.char_length && cand.depth < cur.depth)) {
      best = i;
    }
  }
  if (!best) {
    throw Error(ErrorCode::kNoFeasibleSubtree,
                "no subtree fits in " + std::to_string(budget_chars) +
                    " characters");
  }
  const auto& chosen = index[*best];
  Selection selection;
  selection.subtree = *chosen.node;
  selection.bbox = LeafRegionUnion(*chosen.node, regions);
  selection.char_length = chosen.char_length;
  selection.depth = chosen.depth;
  selection.preorder_index = *best;
  return selection;
}

Image DrawSelection(const Image& screenshot, const BBox& bbox,
                    const StrokeStyle& style) {
  return DrawBBox(screenshot, bbox, style).image;
}

}  // namespace screenparse
