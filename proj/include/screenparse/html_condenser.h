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

#ifndef SCREENPARSE_HTML_CONDENSER_H_
#define SCREENPARSE_HTML_CONDENSER_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "screenparse/image.h"
#include "screenparse/parse_format.h"
#include "screenparse/snapshot.h"

namespace screenparse {

// Pixel boxes of condensed nodes, keyed by the DOM id in
// ParseNode::source_id. Boxes are clipped to the canvas.
struct RegionMap {
  int canvas_width = 0;
  int canvas_height = 0;
  std::map<NodeId, BBox> boxes;

  const BBox* Find(NodeId id) const {
    const auto it = boxes.find(id);
    return it == boxes.end() ? nullptr : &it->second;
  }
};

struct CondensedPage {
  ParseNode tree;
  RegionMap regions;
};

// DOM -> parse tree:
//  1. Nodes that are neither visible-with-content nor ancestors of such
//     nodes are dropped. Invisible nodes never contribute their own text.
//  2. A node without own content and a single surviving child is replaced
//     by that child, repeatedly, so chains collapse to their innermost node.
//  3. Own content is the whitespace-collapsed text and/or the image stub and
//     alt-text. A node with both content and children becomes a group whose
//     first items are its own content, followed by the children in
//     document order.
// Throws Error(kEmptyTree) when nothing visible remains.
CondensedPage Condense(const PageSnapshot& snapshot);

// Filename stub of an image URL: the last path segment without query,
// fragment or extension ("/img/py_logo.png?v=2" -> "py_logo"). Returns
// nullopt for data: URLs and empty stubs.
std::optional<std::string> ImageStub(std::string_view src);

}  // namespace screenparse

#endif  // SCREENPARSE_HTML_CONDENSER_H_
