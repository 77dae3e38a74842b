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

#ifndef SCREENPARSE_PARSE_FORMAT_H_
#define SCREENPARSE_PARSE_FORMAT_H_

// The simplified-HTML parse tree and its bracket notation:
//
//   <<<Python> <img_src=py_logo img_alt=Python>> <Submit>>
//
// Every node renders as `<BODY>`. A text body is the escaped text, an image
// body is `img_src=STUB` and/or `img_alt=TEXT` (in that order), and a group
// body is its children joined by single spaces.
//
// Escapes: `\<` `\>` `\\` everywhere, `\=` for every `=` inside image
// values and for the `=` of a text that would otherwise read as an image
// keyword (`img_src=...`). C0/C1 controls and U+00A0 render as `\xHH`.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace screenparse {

using NodeId = std::int64_t;

enum class NodeKind : std::uint8_t { kText, kImage, kGroup };

struct ParseNode {
  NodeKind kind = NodeKind::kText;
  std::string text;                    // kText only, nonempty
  std::optional<std::string> img_src;  // kImage only
  std::optional<std::string> img_alt;  // kImage only
  std::vector<ParseNode> children;     // kGroup only, nonempty
  // Links back to the snapshot DOM. Not serialized.
  std::optional<NodeId> source_id;

  static ParseNode Text(std::string text,
                        std::optional<NodeId> id = std::nullopt);
  static ParseNode Image(std::optional<std::string> src,
                         std::optional<std::string> alt,
                         std::optional<NodeId> id = std::nullopt);
  static ParseNode Group(std::vector<ParseNode> children,
                         std::optional<NodeId> id = std::nullopt);

  bool is_leaf() const { return kind != NodeKind::kGroup; }

  // Structural equality; source_id is ignored.
  friend bool operator==(const ParseNode& a, const ParseNode& b);
};

// Throws Error(kInvalidArgument) naming the first violated invariant.
void Validate(const ParseNode& node);

std::string Serialize(const ParseNode& node);

// Inverse of Serialize. Any run of ASCII whitespace is accepted between
// siblings and around the root, so ToPretty output parses too. Throws
// ParseError (kUnbalancedBrackets, kEmptyNode, kBadEscape) with the byte
// offset of the problem.
ParseNode Deserialize(std::string_view s);

// Number of Unicode scalar values in Serialize(node), without serializing.
std::size_t CharLength(const ParseNode& node);

// Multi-line display form (one child per line, indented by depth). Display
// only; the canonical target is always Serialize().
std::string ToPretty(const ParseNode& node);

// Preorder view of a tree with memoized subtree lengths.
struct IndexedNode {
  const ParseNode* node;
  int depth;
  std::size_t char_length;  // CharLength(*node)
  std::size_t subtree_size;  // number of nodes in the subtree, incl. self
};

// O(nodes). Entry i+1..i+subtree_size-1 are the descendants of entry i.
std::vector<IndexedNode> IndexTree(const ParseNode& root);

}  // namespace screenparse

#endif  // SCREENPARSE_PARSE_FORMAT_H_
