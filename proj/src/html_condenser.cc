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

#include "screenparse/html_condenser.h"

#include <utility>
#include <vector>

#include "screenparse/error.h"
#include "screenparse/utf8.h"

namespace screenparse {
namespace {

class Condenser {
 public:
  explicit Condenser(const PageSnapshot& snapshot) : snapshot_(snapshot) {
    regions_.canvas_width = snapshot.screenshot.width();
    regions_.canvas_height = snapshot.screenshot.height();
  }

  std::optional<ParseNode> Visit(NodeId id) {
    const DomNode& dom = snapshot_.node(id);
    std::vector<ParseNode> items;
    if (dom.visible) {
      if (dom.text) {
        std::string text = utf8::CollapseWhitespace(*dom.text);
        if (!text.empty()) items.push_back(ParseNode::Text(std::move(text), id));
      }
      std::optional<std::string> src;
      if (dom.img_src) src = ImageStub(*dom.img_src);
      std::optional<std::string> alt;
      if (dom.img_alt) {
        alt = utf8::CollapseWhitespace(*dom.img_alt);
        if (alt->empty()) alt.reset();
      }
      if (src || alt) {
        items.push_back(ParseNode::Image(std::move(src), std::move(alt), id));
      }
    }
    for (NodeId child : dom.children) {
      if (auto condensed = Visit(child)) items.push_back(std::move(*condensed));
    }
    if (items.empty()) return std::nullopt;
    if (items.size() == 1) return std::move(items.front());
    Record(id);
    return ParseNode::Group(std::move(items), id);
  }

  void RecordLeaves(const ParseNode& node) {
    if (node.is_leaf()) {
      Record(*node.source_id);
      return;
    }
    for (const ParseNode& child : node.children) RecordLeaves(child);
  }

  RegionMap TakeRegions() { return std::move(regions_); }

 private:
  void Record(NodeId id) {
    regions_.boxes[id] = Intersect(snapshot_.node(id).bbox,
                                   snapshot_.screenshot.bounds());
  }

  const PageSnapshot& snapshot_;
  RegionMap regions_;
};

}  // namespace

std::optional<std::string> ImageStub(std::string_view src) {
  if (src.starts_with("data:")) return std::nullopt;
  const std::size_t cut = src.find_first_of("?#");
  if (cut != std::string_view::npos) src = src.substr(0, cut);
  while (!src.empty() && (src.back() == '/' || src.back() == '\\')) {
    src.remove_suffix(1);
  }
  const std::size_t slash = src.find_last_of("/\\");
  if (slash != std::string_view::npos) src = src.substr(slash + 1);
  const std::size_t dot = src.rfind('.');
  if (dot != std::string_view::npos && dot > 0) src = src.substr(0, dot);
  std::string stub = utf8::CollapseWhitespace(src);
  if (stub.empty()) return std::nullopt;
  return stub;
}

CondensedPage Condense(const PageSnapshot& snapshot) {
  Condenser condenser(snapshot);
  std::optional<ParseNode> tree = condenser.Visit(snapshot.root);
  if (!tree) {
    throw Error(ErrorCode::kEmptyTree,
                "no visible content in page '" + snapshot.page_id + "'");
  }
  condenser.RecordLeaves(*tree);
  return {std::move(*tree), condenser.TakeRegions()};
}

}  // namespace screenparse
