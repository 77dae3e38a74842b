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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "testing/synthetic.h"

namespace screenparse {
namespace {

namespace fs = std::filesystem;
using testgen::ThrownCode;

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("snapshot_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(SnapshotTest, LoadsFixture) {
  const PageSnapshot s = LoadSnapshot(testgen::DataPath("snapshots/figure3"));
  EXPECT_EQ(s.page_id, "figure3");
  EXPECT_EQ(s.manifest.viewport_width, 1024);
  EXPECT_EQ(s.root, 0);
  EXPECT_EQ(s.nodes.size(), 20u);
  EXPECT_EQ(s.node(7).img_src, "images/py_logo.png");
  EXPECT_FALSE(s.node(11).visible);
  EXPECT_TRUE(CheckSnapshot(s, {}).empty());
}

TEST(SnapshotTest, WriteThenLoadRoundTrips) {
  Rng rng(11);
  testgen::PageOptions options;
  options.paint_screenshot = true;
  options.height = 200;
  PageSnapshot s = testgen::RandomSnapshot(rng, options);
  s.manifest.url = "https://example.com/x";
  const fs::path dir = TempDir("roundtrip") / "page-1";
  WriteSnapshot(dir.string(), s);
  const PageSnapshot back = LoadSnapshot(dir.string());
  EXPECT_EQ(back.page_id, "page-1");
  EXPECT_EQ(back.manifest.url, s.manifest.url);
  EXPECT_EQ(back.screenshot, s.screenshot);
  ASSERT_EQ(back.nodes.size(), s.nodes.size());
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    EXPECT_EQ(FormatDomLine(back.nodes[i]), FormatDomLine(s.nodes[i]));
  }
}

TEST(SnapshotTest, DomLineParsing) {
  const DomNode n = ParseDomLine(
      R"({"id":3,"tag":"img","visible":true,"bbox":[1.5,2,3.2,4],)"
      R"("img_src":"a.png","children":[4,5]})");
  EXPECT_EQ(n.id, 3);
  EXPECT_EQ(n.bbox, (BBox{1, 2, 4, 4}));  // rounded outward
  EXPECT_EQ(n.img_src, "a.png");
  EXPECT_FALSE(n.text.has_value());
  EXPECT_EQ(n.children, (std::vector<NodeId>{4, 5}));
  EXPECT_EQ(ThrownCode([] { ParseDomLine("{not json"); }),
            ErrorCode::kInvalidSnapshot);
  EXPECT_EQ(ThrownCode([] { ParseDomLine(R"({"tag":"div"})"); }),
            ErrorCode::kInvalidSnapshot);
}

PageSnapshot Chain(std::vector<std::vector<NodeId>> children) {
  PageSnapshot s;
  s.screenshot = Image(16, 16);
  for (std::size_t i = 0; i < children.size(); ++i) {
    DomNode n;
    n.id = static_cast<NodeId>(i);
    n.children = children[i];
    s.nodes.push_back(n);
  }
  return s;
}

TEST(SnapshotTest, LinkRejectsMalformedForests) {
  auto link = [](PageSnapshot s) { LinkSnapshot(s); };
  EXPECT_FALSE(ThrownCode([&] { link(Chain({{1}, {2}, {}})); }));
  EXPECT_EQ(ThrownCode([&] { link(Chain({{1}, {}, {}})); }),
            ErrorCode::kInvalidSnapshot);  // two roots
  EXPECT_EQ(ThrownCode([&] { link(Chain({{1, 1}, {}})); }),
            ErrorCode::kInvalidSnapshot);  // two parents
  EXPECT_EQ(ThrownCode([&] { link(Chain({{}, {2}, {1}})); }),
            ErrorCode::kInvalidSnapshot);  // detached cycle
  EXPECT_EQ(ThrownCode([&] { link(Chain({{5}})); }),
            ErrorCode::kInvalidSnapshot);
  PageSnapshot dup = Chain({{1}, {}});
  dup.nodes[1].id = 0;
  EXPECT_EQ(ThrownCode([&] { link(dup); }), ErrorCode::kInvalidSnapshot);
}

TEST(SnapshotTest, CheckFlagsGeometryAndWidth) {
  PageSnapshot s = Chain({{1}, {}});
  s.manifest.viewport_width = 16;
  s.nodes[0].visible = true;
  s.nodes[0].bbox = {0, 0, 16, 16};
  s.nodes[1].visible = true;
  s.nodes[1].bbox = {8, 8, 16, 4};
  LinkSnapshot(s);
  EXPECT_EQ(CheckSnapshot(s, {16}).size(), 1u);  // node 1 out of bounds
  EXPECT_EQ(CheckSnapshot(s, {1024}).size(), 2u);
  EXPECT_EQ(CheckSnapshot(s, {0}).size(), 1u);
  s.nodes[1].bbox = {0, 0, 0, 4};
  EXPECT_EQ(CheckSnapshot(s, {16}).size(), 1u);  // visible but empty
  s.nodes[1].visible = false;
  EXPECT_TRUE(CheckSnapshot(s, {16}).empty());
}

TEST(SnapshotTest, RandomSnapshotsPassTheirOwnCheck) {
  Rng rng(2);
  testgen::PageOptions options;
  for (int i = 0; i < 200; ++i) {
    const PageSnapshot s = testgen::RandomSnapshot(rng, options);
    ASSERT_TRUE(CheckSnapshot(s, {}).empty());
  }
}

TEST(SnapshotTest, MissingFilesAreErrors) {
  const fs::path dir = TempDir("missing");
  EXPECT_TRUE(ThrownCode([&] { LoadSnapshot(dir.string()); }).has_value());
}

TEST(SnapshotTest, ListSnapshotDirsIsSorted) {
  const fs::path root = TempDir("list");
  for (const char* name : {"b", "a", "c"}) {
    fs::create_directories(root / name);
    std::ofstream(root / name / "manifest.json") << "{}";
  }
  fs::create_directories(root / "not-a-snapshot");
  const auto dirs = ListSnapshotDirs(root.string());
  ASSERT_EQ(dirs.size(), 3u);
  EXPECT_EQ(fs::path(dirs[0]).filename(), "a");
  EXPECT_EQ(fs::path(dirs[2]).filename(), "c");
}

}  // namespace
}  // namespace screenparse
