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

#include <gtest/gtest.h>

#include <functional>

#include "testing/synthetic.h"

namespace screenparse {
namespace {

using testgen::ThrownCode;

constexpr char kFigure3Parse[] =
    "<<<Python> <img_src=py_logo img_alt=Python>> "
    "<<C++> <img_src=cpp_logo img_alt=C++>> "
    "<<Java> <img_src=java_logo img_alt=Java>> <Submit>>";

// Builds a snapshot from (parent, node) pairs listed in preorder.
class PageBuilder {
 public:
  PageBuilder() { snapshot_.screenshot = Image(100, 100); }

  NodeId Add(std::optional<NodeId> parent, bool visible = true) {
    DomNode n;
    n.id = static_cast<NodeId>(snapshot_.nodes.size());
    n.tag = "div";
    n.visible = visible;
    n.bbox = {0, 0, 10, 10};
    snapshot_.nodes.push_back(n);
    if (parent) snapshot_.nodes[*parent].children.push_back(n.id);
    return n.id;
  }
  NodeId AddText(std::optional<NodeId> parent, const std::string& text,
                 bool visible = true) {
    const NodeId id = Add(parent, visible);
    snapshot_.nodes[id].text = text;
    return id;
  }
  DomNode& node(NodeId id) { return snapshot_.nodes[id]; }
  PageSnapshot Build() {
    LinkSnapshot(snapshot_);
    return snapshot_;
  }

 private:
  PageSnapshot snapshot_;
};

TEST(CondenseTest, Figure3Fixture) {
  const CondensedPage page =
      Condense(LoadSnapshot(testgen::DataPath("snapshots/figure3")));
  EXPECT_EQ(Serialize(page.tree), kFigure3Parse);
}

TEST(CondenseTest, ChainedWrappersCollapse) {
  PageBuilder b;
  const NodeId d0 = b.Add(std::nullopt);
  const NodeId d1 = b.Add(d0);
  const NodeId d2 = b.Add(d1);
  b.AddText(d2, "x");
  EXPECT_EQ(Condense(b.Build()).tree, ParseNode::Text("x"));
}

TEST(CondenseTest, InvisibleSubtreesAreDropped) {
  PageBuilder b;
  const NodeId root = b.Add(std::nullopt);
  b.AddText(root, "shown");
  const NodeId hidden = b.AddText(root, "hidden", false);
  b.AddText(hidden, "also hidden", false);
  b.AddText(root, "too");
  EXPECT_EQ(Serialize(Condense(b.Build()).tree), "<<shown> <too>>");
}

TEST(CondenseTest, VisibleChildOfInvisibleParentSurvives) {
  PageBuilder b;
  const NodeId root = b.Add(std::nullopt);
  const NodeId hidden = b.AddText(root, "parent text", false);
  b.AddText(hidden, "child");
  b.AddText(root, "sibling");
  EXPECT_EQ(Serialize(Condense(b.Build()).tree), "<<child> <sibling>>");
}

TEST(CondenseTest, MixedContentKeepsOwnTextFirst) {
  PageBuilder b;
  const NodeId p = b.AddText(std::nullopt, "Hello  \n world");
  b.AddText(p, "bold");
  EXPECT_EQ(Serialize(Condense(b.Build()).tree), "<<Hello world> <bold>>");
}

TEST(CondenseTest, NodeWithPayloadAndOneChildStaysAGroup) {
  PageBuilder b;
  const NodeId root = b.Add(std::nullopt);
  const NodeId li = b.AddText(root, "item");
  const NodeId span = b.Add(li);
  b.AddText(span, "detail");
  EXPECT_EQ(Serialize(Condense(b.Build()).tree), "<<item> <detail>>");
}

TEST(CondenseTest, ImagesUseStubAndAlt) {
  PageBuilder b;
  const NodeId root = b.Add(std::nullopt);
  const NodeId img = b.Add(root);
  b.node(img).img_src = "https://x.org/a/cropped-blogheader.jpg?w=300";
  const NodeId alt_only = b.Add(root);
  b.node(alt_only).img_src = "data:image/png;base64,AAA";
  b.node(alt_only).img_alt = "A  chart";
  const NodeId nothing = b.Add(root);
  b.node(nothing).img_src = "data:image/gif;base64,R0";
  b.node(nothing).img_alt = "  ";
  EXPECT_EQ(Serialize(Condense(b.Build()).tree),
            "<<img_src=cropped-blogheader> <img_alt=A chart>>");
}

TEST(CondenseTest, WhitespaceOnlyTextIsNotPayload) {
  PageBuilder b;
  const NodeId root = b.AddText(std::nullopt, " \n ");
  b.AddText(root, "x");
  EXPECT_EQ(Condense(b.Build()).tree, ParseNode::Text("x"));
}

TEST(CondenseTest, EmptyPageIsAnError) {
  PageBuilder b;
  const NodeId root = b.Add(std::nullopt);
  b.AddText(root, "hidden", false);
  b.AddText(root, "   ");
  EXPECT_EQ(ThrownCode([&] { Condense(b.Build()); }), ErrorCode::kEmptyTree);
}

TEST(ImageStubTest, Examples) {
  EXPECT_EQ(ImageStub("images/py_logo.png"), "py_logo");
  EXPECT_EQ(ImageStub("/static/img/cpp_logo.svg?v=3"), "cpp_logo");
  EXPECT_EQ(ImageStub("https://cdn.example.com/logos/java_logo.png"),
            "java_logo");
  EXPECT_EQ(ImageStub("photo.final.webp#frag"), "photo.final");
  EXPECT_EQ(ImageStub(".hidden"), ".hidden");
  EXPECT_EQ(ImageStub("/assets/icons/"), "icons");
  EXPECT_EQ(ImageStub("spacer"), "spacer");
  EXPECT_EQ(ImageStub("data:image/png;base64,AAAA"), std::nullopt);
  EXPECT_EQ(ImageStub(""), std::nullopt);
  EXPECT_EQ(ImageStub("?x=1"), std::nullopt);
}

void ExpectCondensedShape(const ParseNode& node) {
  if (node.is_leaf()) return;
  EXPECT_GE(node.children.size(), 2u) << "singleton group survived";
  for (const ParseNode& child : node.children) ExpectCondensedShape(child);
}

void CollectLeaves(const ParseNode& node, std::vector<const ParseNode*>& out) {
  if (node.is_leaf()) {
    out.push_back(&node);
    return;
  }
  for (const ParseNode& child : node.children) CollectLeaves(child, out);
}

TEST(CondenseProperty, MatchesReferenceOnRandomPages) {
  Rng rng(77);
  testgen::PageOptions options;
  options.max_nodes = 200;
  options.invisible_rate = 0.25;
  int empty = 0;
  for (int i = 0; i < 1500; ++i) {
    const PageSnapshot page = testgen::RandomSnapshot(rng, options);
    const auto expected = testgen::ReferenceCondense(page);
    if (!expected) {
      ++empty;
      ASSERT_EQ(ThrownCode([&] { Condense(page); }), ErrorCode::kEmptyTree);
      continue;
    }
    const CondensedPage got = Condense(page);
    ASSERT_EQ(Serialize(got.tree), Serialize(*expected)) << "page " << i;
    ExpectCondensedShape(got.tree);
    std::vector<const ParseNode*> leaves;
    CollectLeaves(got.tree, leaves);
    for (const ParseNode* leaf : leaves) {
      ASSERT_TRUE(leaf->source_id.has_value());
      ASSERT_TRUE(page.node(*leaf->source_id).visible);
      ASSERT_NE(got.regions.Find(*leaf->source_id), nullptr);
    }
  }
  EXPECT_LT(empty, 1500);
}

TEST(CondenseProperty, IdempotentOnCondensedShape) {
  // Re-expressing a condensed tree as a DOM and condensing again changes
  // nothing.
  Rng rng(78);
  for (int i = 0; i < 300; ++i) {
    const ParseNode tree = testgen::RandomParseTree(rng, 30);
    PageBuilder b;
    std::function<void(const ParseNode&, std::optional<NodeId>)> emit =
        [&](const ParseNode& n, std::optional<NodeId> parent) {
          const NodeId id = b.Add(parent);
          if (n.kind == NodeKind::kText) b.node(id).text = n.text;
          for (const ParseNode& c : n.children) emit(c, id);
        };
    // Only text trees with whitespace-normalized leaves are fixed points.
    ParseNode normalized = tree;
    std::function<bool(ParseNode&)> normalize = [&](ParseNode& n) {
      if (n.kind == NodeKind::kImage) return false;
      if (n.kind == NodeKind::kText) {
        n.text = "t" + std::to_string(n.text.size());
        return true;
      }
      for (ParseNode& c : n.children) {
        if (!normalize(c)) return false;
      }
      return true;
    };
    if (!normalize(normalized)) continue;
    if (normalized.kind == NodeKind::kGroup &&
        normalized.children.size() == 1) {
      continue;
    }
    bool singleton = false;
    std::function<void(const ParseNode&)> scan = [&](const ParseNode& n) {
      if (!n.is_leaf() && n.children.size() == 1) singleton = true;
      for (const ParseNode& c : n.children) scan(c);
    };
    scan(normalized);
    if (singleton) continue;
    emit(normalized, std::nullopt);
    ASSERT_EQ(Condense(b.Build()).tree, normalized);
  }
}

}  // namespace
}  // namespace screenparse
