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

#ifndef SCREENPARSE_SUBTREE_SELECTOR_H_
#define SCREENPARSE_SUBTREE_SELECTOR_H_

#include <cstddef>

#include "screenparse/html_condenser.h"
#include "screenparse/image.h"
#include "screenparse/parse_format.h"
#include "screenparse/render_ops.h"

namespace screenparse {

inline constexpr std::size_t kDefaultTargetBudgetChars = 1024;

struct Selection {
  ParseNode subtree;
  BBox bbox;                   // union of the leaf regions, clipped
  std::size_t char_length = 0;
  int depth = 0;               // of the chosen node in the input tree
  std::size_t preorder_index = 0;
};

// Picks the node whose serialization is the longest one not exceeding
// `budget_chars`. Ties go to the shallower node, then the earlier one in
// document order. Throws Error(kInvalidArgument) for budgets below 3 and
// Error(kNoFeasibleSubtree) when no node fits.
Selection SelectSubtree(const ParseNode& tree, const RegionMap& regions,
                        std::size_t budget_chars = kDefaultTargetBudgetChars);

// Union of the region boxes of every leaf under `node`, clipped to the
// canvas. Leaves without a region are skipped.
BBox LeafRegionUnion(const ParseNode& node, const RegionMap& regions);

inline const StrokeStyle kDefaultSelectionStroke{{255, 0, 0}, 2};

// The screenshot with the selection outlined.
Image DrawSelection(const Image& screenshot, const BBox& bbox,
                    const StrokeStyle& style = kDefaultSelectionStroke);

}  // namespace screenparse

#endif  // SCREENPARSE_SUBTREE_SELECTOR_H_
