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

#ifndef SCREENPARSE_SNAPSHOT_H_
#define SCREENPARSE_SNAPSHOT_H_

// On-disk page snapshot produced by the capture harness:
//
//   <id>/manifest.json   {url, viewport_width, capture_time,
//                         screenshot_path, dom_path}
//   <id>/screenshot.png  full-page screenshot, width = viewport_width
//   <id>/dom.jsonl       one DOM node per line:
//                        {"id", "tag", "visible", "bbox": [x, y, w, h],
//                         "children": [ids], "text"?, "img_src"?, "img_alt"?}
//
// Node ids are 0..n-1 in any line order. Text runs of elements with mixed
// content appear as children with tag "#text".

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "screenparse/image.h"
#include "screenparse/parse_format.h"

namespace screenparse {

inline constexpr int kDefaultViewportWidth = 1024;

struct SnapshotManifest {
  std::string url;
  int viewport_width = kDefaultViewportWidth;
  std::string capture_time;
  std::string screenshot_path = "screenshot.png";
  std::string dom_path = "dom.jsonl";
};

struct DomNode {
  NodeId id = 0;
  std::string tag;
  bool visible = false;
  BBox bbox;
  std::optional<std::string> text;
  std::optional<std::string> img_src;
  std::optional<std::string> img_alt;
  std::vector<NodeId> children;
};

struct PageSnapshot {
  std::string page_id;
  SnapshotManifest manifest;
  Image screenshot;
  std::vector<DomNode> nodes;  // nodes[i].id == i
  NodeId root = 0;

  const DomNode& node(NodeId id) const {
    return nodes[static_cast<std::size_t>(id)];
  }
};

// Checks the DOM is a single tree over ids 0..n-1 and sets `root`. Throws
// Error(kInvalidSnapshot).
void LinkSnapshot(PageSnapshot& snapshot);

struct SnapshotCheckOptions {
  int expected_width = kDefaultViewportWidth;  // 0 disables the check
};

// Contract checks beyond LinkSnapshot: visible boxes have positive area and
// lie inside the screenshot, and widths match. Returns one message per
// problem; empty means valid.
std::vector<std::string> CheckSnapshot(const PageSnapshot& snapshot,
                                       const SnapshotCheckOptions& options);

DomNode ParseDomLine(const std::string& line);
std::string FormatDomLine(const DomNode& node);

// Loads `<dir>/manifest.json` and the files it references. The page id is
// the directory name.
PageSnapshot LoadSnapshot(const std::string& dir);
void WriteSnapshot(const std::string& dir, const PageSnapshot& snapshot);

// Subdirectories of `root` holding a manifest.json, sorted by name.
std::vector<std::string> ListSnapshotDirs(const std::string& root);

}  // namespace screenparse

#endif  // SCREENPARSE_SNAPSHOT_H_
