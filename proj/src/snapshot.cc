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

#include "screenparse/snapshot.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "screenparse/error.h"

namespace screenparse {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::optional<std::string> OptionalString(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(ErrorCode::kInvalidSnapshot,
                std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

// Browser boxes are fractional; round outward to whole pixels.
BBox BoxFromJson(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw Error(ErrorCode::kInvalidSnapshot, "bbox must be [x, y, w, h]");
  }
  const double x = j[0].get<double>(), y = j[1].get<double>();
  const double w = j[2].get<double>(), h = j[3].get<double>();
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = static_cast<int>(std::ceil(x + w));
  const int y1 = static_cast<int>(std::ceil(y + h));
  return {x0, y0, std::max(0, x1 - x0), std::max(0, y1 - y0)};
}

}  // namespace

DomNode ParseDomLine(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidSnapshot,
                std::string("bad dom.jsonl line: ") + e.what());
  }
  try {
    DomNode node;
    node.id = j.at("id").get<NodeId>();
    node.tag = j.value("tag", "");
    node.visible = j.value("visible", false);
    if (j.contains("bbox")) node.bbox = BoxFromJson(j["bbox"]);
    node.text = OptionalString(j, "text");
    node.img_src = OptionalString(j, "img_src");
    node.img_alt = OptionalString(j, "img_alt");
    if (j.contains("children")) {
      node.children = j["children"].get<std::vector<NodeId>>();
    }
    return node;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidSnapshot,
                std::string("bad dom.jsonl node: ") + e.what());
  }
}

std::string FormatDomLine(const DomNode& node) {
  json j = {{"id", node.id},
            {"tag", node.tag},
            {"visible", node.visible},
            {"bbox", {node.bbox.x, node.bbox.y, node.bbox.w, node.bbox.h}},
            {"children", node.children}};
  if (node.text) j["text"] = *node.text;
  if (node.img_src) j["img_src"] = *node.img_src;
  if (node.img_alt) j["img_alt"] = *node.img_alt;
  return j.dump();
}

void LinkSnapshot(PageSnapshot& snapshot) {
  auto& nodes = snapshot.nodes;
  const auto n = static_cast<NodeId>(nodes.size());
  if (n == 0) throw Error(ErrorCode::kInvalidSnapshot, "DOM has no nodes");
  std::sort(nodes.begin(), nodes.end(),
            [](const DomNode& a, const DomNode& b) { return a.id < b.id; });
  for (NodeId i = 0; i < n; ++i) {
    if (nodes[i].id != i) {
      throw Error(ErrorCode::kInvalidSnapshot,
                  "node ids must be unique and cover 0..n-1");
    }
  }
  std::vector<int> parents(nodes.size(), 0);
  for (const DomNode& node : nodes) {
    for (NodeId child : node.children) {
      if (child < 0 || child >= n || child == node.id) {
        throw Error(ErrorCode::kInvalidSnapshot,
                    "node " + std::to_string(node.id) +
                        " has an invalid child " + std::to_string(child));
      }
      if (++parents[child] > 1) {
        throw Error(ErrorCode::kInvalidSnapshot,
                    "node " + std::to_string(child) + " has two parents");
      }
    }
  }
  std::optional<NodeId> root;
  for (NodeId i = 0; i < n; ++i) {
    if (parents[i] == 0) {
      if (root) {
        throw Error(ErrorCode::kInvalidSnapshot, "DOM has more than one root");
      }
      root = i;
    }
  }
  if (!root) throw Error(ErrorCode::kInvalidSnapshot, "DOM has a cycle");
  // One parent per node plus a unique root still allows detached cycles;
  // reachability from the root rules them out.
  std::vector<bool> seen(nodes.size(), false);
  std::vector<NodeId> stack = {*root};
  std::size_t reached = 0;
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    seen[id] = true;
    ++reached;
    for (NodeId child : nodes[id].children) stack.push_back(child);
  }
  if (reached != nodes.size()) {
    throw Error(ErrorCode::kInvalidSnapshot, "DOM has a detached cycle");
  }
  snapshot.root = *root;
}

std::vector<std::string> CheckSnapshot(const PageSnapshot& snapshot,
                                       const SnapshotCheckOptions& options) {
  std::vector<std::string> problems;
  const Image& shot = snapshot.screenshot;
  if (options.expected_width > 0 &&
      snapshot.manifest.viewport_width != options.expected_width) {
    problems.push_back("viewport_width " +
                       std::to_string(snapshot.manifest.viewport_width) +
                       " != " + std::to_string(options.expected_width));
  }
  if (shot.width() != snapshot.manifest.viewport_width) {
    problems.push_back("screenshot width " + std::to_string(shot.width()) +
                       " != viewport_width " +
                       std::to_string(snapshot.manifest.viewport_width));
  }
  for (const DomNode& node : snapshot.nodes) {
    if (!node.visible) continue;
    if (node.bbox.empty()) {
      problems.push_back("visible node " + std::to_string(node.id) +
                         " has an empty box");
    } else if (!Contains(shot.bounds(), node.bbox)) {
      problems.push_back("visible node " + std::to_string(node.id) +
                         " lies outside the screenshot");
    }
  }
  return problems;
}

PageSnapshot LoadSnapshot(const std::string& dir) {
  const fs::path base(dir);
  PageSnapshot snapshot;
  snapshot.page_id = fs::path(dir).lexically_normal().filename().string();
  if (snapshot.page_id.empty()) {
    snapshot.page_id =
        fs::path(dir).lexically_normal().parent_path().filename().string();
  }
  std::ifstream manifest_in(base / "manifest.json");
  if (!manifest_in) {
    throw Error(ErrorCode::kIo, "missing manifest.json in " + dir);
  }
  try {
    const json m = json::parse(manifest_in);
    snapshot.manifest.url = m.value("url", "");
    snapshot.manifest.viewport_width =
        m.value("viewport_width", kDefaultViewportWidth);
    snapshot.manifest.capture_time = m.value("capture_time", "");
    snapshot.manifest.screenshot_path =
        m.value("screenshot_path", "screenshot.png");
    snapshot.manifest.dom_path = m.value("dom_path", "dom.jsonl");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidSnapshot,
                "bad manifest.json in " + dir + ": " + e.what());
  }
  snapshot.screenshot =
      ReadPng((base / snapshot.manifest.screenshot_path).string());
  std::ifstream dom_in(base / snapshot.manifest.dom_path);
  if (!dom_in) throw Error(ErrorCode::kIo, "missing DOM dump in " + dir);
  std::string line;
  while (std::getline(dom_in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    snapshot.nodes.push_back(ParseDomLine(line));
  }
  LinkSnapshot(snapshot);
  return snapshot;
}

void WriteSnapshot(const std::string& dir, const PageSnapshot& snapshot) {
  const fs::path base(dir);
  fs::create_directories(base);
  const json m = {{"url", snapshot.manifest.url},
                  {"viewport_width", snapshot.manifest.viewport_width},
                  {"capture_time", snapshot.manifest.capture_time},
                  {"screenshot_path", snapshot.manifest.screenshot_path},
                  {"dom_path", snapshot.manifest.dom_path}};
  std::ofstream(base / "manifest.json") << m.dump(2) << "\n";
  WritePng((base / snapshot.manifest.screenshot_path).string(),
           snapshot.screenshot);
  std::ofstream dom_out(base / snapshot.manifest.dom_path);
  for (const DomNode& node : snapshot.nodes) {
    dom_out << FormatDomLine(node) << "\n";
  }
  if (!dom_out) throw Error(ErrorCode::kIo, "cannot write DOM dump in " + dir);
}

std::vector<std::string> ListSnapshotDirs(const std::string& root) {
  std::vector<std::string> dirs;
  if (!fs::is_directory(root)) {
    throw Error(ErrorCode::kIo, "not a directory: " + root);
  }
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() &&
        fs::exists(entry.path() / "manifest.json")) {
      dirs.push_back(entry.path().string());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

}  // namespace screenparse
