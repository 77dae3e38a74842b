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

#include "screenparse/parse_format.h"

#include <utility>

#include "screenparse/error.h"
#include "screenparse/utf8.h"

namespace screenparse {
namespace {

constexpr std::string_view kSrcKey = "img_src=";
constexpr std::string_view kAltKey = "img_alt=";
constexpr std::string_view kAltSeparator = " img_alt=";

bool IsEscapedControl(char32_t c) {
  return c < 0x20 || (c >= 0x7F && c <= 0xA0);
}

bool StartsWithKeyword(std::string_view s) {
  return s.starts_with(kSrcKey) || s.starts_with(kAltKey);
}

void AppendHexEscape(char32_t c, std::string& out) {
  static constexpr char kHex[] = "0123456789abcdef";
  out += "\\x";
  out.push_back(kHex[(c >> 4) & 0xF]);
  out.push_back(kHex[c & 0xF]);
}

// `escape_all_equals` is set for image values; for text only the keyword
// `=` at byte 7 is escaped.
void AppendEscaped(std::string_view value, bool escape_all_equals,
                   std::string& out) {
  const bool keyword_text = !escape_all_equals && StartsWithKeyword(value);
  const std::u32string cps = utf8::Decode(value);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t c = cps[i];
    if (c == '<' || c == '>' || c == '\\') {
      out.push_back('\\');
      out.push_back(static_cast<char>(c));
    } else if (c == '=' && (escape_all_equals || (keyword_text && i == 7))) {
      out += "\\=";
    } else if (IsEscapedControl(c)) {
      AppendHexEscape(c, out);
    } else {
      utf8::Append(c, out);
    }
  }
}

std::size_t EscapedLength(std::string_view value, bool escape_all_equals) {
  const bool keyword_text = !escape_all_equals && StartsWithKeyword(value);
  const std::u32string cps = utf8::Decode(value);
  std::size_t n = 0;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t c = cps[i];
    if (c == '<' || c == '>' || c == '\\') {
      n += 2;
    } else if (c == '=' && (escape_all_equals || (keyword_text && i == 7))) {
      n += 2;
    } else if (IsEscapedControl(c)) {
      n += 4;
    } else {
      n += 1;
    }
  }
  return n;
}

void SerializeInto(const ParseNode& node, std::string& out) {
  out.push_back('<');
  switch (node.kind) {
    case NodeKind::kText:
      AppendEscaped(node.text, false, out);
      break;
    case NodeKind::kImage:
      if (node.img_src) {
        out += kSrcKey;
        AppendEscaped(*node.img_src, true, out);
      }
      if (node.img_alt) {
        if (node.img_src) out.push_back(' ');
        out += kAltKey;
        AppendEscaped(*node.img_alt, true, out);
      }
      break;
    case NodeKind::kGroup:
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i > 0) out.push_back(' ');
        SerializeInto(node.children[i], out);
      }
      break;
  }
  out.push_back('>');
}

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ParseNode ParseDocument() {
    SkipSpace();
    if (pos_ >= s_.size() || s_[pos_] != '<') {
      throw ParseError(ErrorCode::kUnbalancedBrackets, pos_,
                       "expected '<'");
    }
    ParseNode root = ParseNodeAt();
    SkipSpace();
    if (pos_ != s_.size()) {
      throw ParseError(ErrorCode::kUnbalancedBrackets, pos_,
                       "content after the root node");
    }
    return root;
  }

 private:
  void SkipSpace() {
    while (pos_ < s_.size() &&
           utf8::IsSpace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }

  // Precondition: s_[pos_] == '<'.
  ParseNode ParseNodeAt() {
    const std::size_t open = pos_++;
    std::size_t peek = pos_;
    while (peek < s_.size() &&
           utf8::IsSpace(static_cast<unsigned char>(s_[peek]))) {
      ++peek;
    }
    if (peek < s_.size() && s_[peek] == '<') {
      pos_ = peek;
      return ParseGroup();
    }
    if (pos_ >= s_.size()) {
      throw ParseError(ErrorCode::kUnbalancedBrackets, pos_,
                       "unterminated node");
    }
    if (s_[pos_] == '>') {
      throw ParseError(ErrorCode::kEmptyNode, open, "empty node");
    }
    return ParseLeaf();
  }

  ParseNode ParseGroup() {
    std::vector<ParseNode> children;
    while (true) {
      children.push_back(ParseNodeAt());
      SkipSpace();
      if (pos_ >= s_.size()) {
        throw ParseError(ErrorCode::kUnbalancedBrackets, pos_,
                         "unterminated group");
      }
      if (s_[pos_] == '>') {
        ++pos_;
        return ParseNode::Group(std::move(children));
      }
      if (s_[pos_] != '<') {
        throw ParseError(ErrorCode::kUnbalancedBrackets, pos_,
                         "text outside brackets inside a group");
      }
    }
  }

  // Finds the unescaped '>' closing a leaf and validates escapes on the way.
  std::size_t FindLeafEnd(std::size_t from) const {
    std::size_t i = from;
    while (i < s_.size()) {
      const char c = s_[i];
      if (c == '\\') {
        if (i + 1 >= s_.size()) {
          throw ParseError(ErrorCode::kBadEscape, i, "dangling backslash");
        }
        const char e = s_[i + 1];
        if (e == '<' || e == '>' || e == '\\' || e == '=') {
          i += 2;
        } else if (e == 'x') {
          if (i + 3 >= s_.size() || HexValue(s_[i + 2]) < 0 ||
              HexValue(s_[i + 3]) < 0) {
            throw ParseError(ErrorCode::kBadEscape, i,
                             "\\x needs two hex digits");
          }
          i += 4;
        } else {
          throw ParseError(ErrorCode::kBadEscape, i, "unknown escape");
        }
      } else if (c == '<') {
        throw ParseError(ErrorCode::kUnbalancedBrackets, i,
                         "unescaped '<' inside a leaf");
      } else if (c == '>') {
        return i;
      } else {
        ++i;
      }
    }
    throw ParseError(ErrorCode::kUnbalancedBrackets, s_.size(),
                     "unterminated leaf");
  }

  // Unescapes s_[begin, end); escapes were validated by FindLeafEnd.
  std::string Unescape(std::size_t begin, std::size_t end) const {
    std::string out;
    out.reserve(end - begin);
    for (std::size_t i = begin; i < end;) {
      if (s_[i] != '\\') {
        out.push_back(s_[i++]);
      } else if (s_[i + 1] == 'x') {
        utf8::Append(static_cast<char32_t>(HexValue(s_[i + 2]) * 16 +
                                           HexValue(s_[i + 3])),
                     out);
        i += 4;
      } else {
        out.push_back(s_[i + 1]);
        i += 2;
      }
    }
    return out;
  }

  // First unescaped " img_alt=" in [begin, end), or end.
  std::size_t FindAltSeparator(std::size_t begin, std::size_t end) const {
    for (std::size_t i = begin; i < end;) {
      if (s_[i] == '\\') {
        i += s_[i + 1] == 'x' ? 4 : 2;
        continue;
      }
      if (s_.substr(i, end - i).starts_with(kAltSeparator)) return i;
      ++i;
    }
    return end;
  }

  ParseNode ParseLeaf() {
    const std::size_t begin = pos_;
    const std::size_t end = FindLeafEnd(begin);
    pos_ = end + 1;
    const std::string_view raw = s_.substr(begin, end - begin);
    if (raw.starts_with(kSrcKey)) {
      const std::size_t value_begin = begin + kSrcKey.size();
      const std::size_t sep = FindAltSeparator(value_begin, end);
      std::optional<std::string> alt;
      if (sep != end) alt = Unescape(sep + kAltSeparator.size(), end);
      return ParseNode::Image(Unescape(value_begin, sep), std::move(alt));
    }
    if (raw.starts_with(kAltKey)) {
      return ParseNode::Image(std::nullopt,
                              Unescape(begin + kAltKey.size(), end));
    }
    return ParseNode::Text(Unescape(begin, end));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void AppendPretty(const ParseNode& node, int depth, std::string& out) {
  out.push_back('<');
  if (node.kind != NodeKind::kGroup) {
    const std::string s = Serialize(node);
    out.append(s, 1, s.size() - 2);
  } else {
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      if (i > 0) {
        out.push_back('\n');
        out.append(static_cast<std::size_t>(depth + 1), ' ');
      }
      AppendPretty(node.children[i], depth + 1, out);
    }
  }
  out.push_back('>');
}

std::size_t IndexInto(const ParseNode& node, int depth,
                      std::vector<IndexedNode>& out) {
  const std::size_t self = out.size();
  out.push_back({&node, depth, 0, 1});
  std::size_t length = 2;
  switch (node.kind) {
    case NodeKind::kText:
      length += EscapedLength(node.text, false);
      break;
    case NodeKind::kImage:
      if (node.img_src) {
        length += kSrcKey.size() + EscapedLength(*node.img_src, true);
      }
      if (node.img_alt) {
        if (node.img_src) length += 1;
        length += kAltKey.size() + EscapedLength(*node.img_alt, true);
      }
      break;
    case NodeKind::kGroup:
      length += node.children.size() - 1;
      for (const ParseNode& child : node.children) {
        length += IndexInto(child, depth + 1, out);
      }
      break;
  }
  out[self].char_length = length;
  out[self].subtree_size = out.size() - self;
  return length;
}

}  // namespace

ParseNode ParseNode::Text(std::string text, std::optional<NodeId> id) {
  ParseNode n;
  n.kind = NodeKind::kText;
  n.text = std::move(text);
  n.source_id = id;
  return n;
}

ParseNode ParseNode::Image(std::optional<std::string> src,
                           std::optional<std::string> alt,
                           std::optional<NodeId> id) {
  ParseNode n;
  n.kind = NodeKind::kImage;
  n.img_src = std::move(src);
  n.img_alt = std::move(alt);
  n.source_id = id;
  return n;
}

ParseNode ParseNode::Group(std::vector<ParseNode> children,
                           std::optional<NodeId> id) {
  ParseNode n;
  n.kind = NodeKind::kGroup;
  n.children = std::move(children);
  n.source_id = id;
  return n;
}

bool operator==(const ParseNode& a, const ParseNode& b) {
  return a.kind == b.kind && a.text == b.text && a.img_src == b.img_src &&
         a.img_alt == b.img_alt && a.children == b.children;
}

void Validate(const ParseNode& node) {
  switch (node.kind) {
    case NodeKind::kText:
      if (node.text.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "text node with empty text");
      }
      if (!node.children.empty() || node.img_src || node.img_alt) {
        throw Error(ErrorCode::kInvalidArgument,
                    "text node with image payload or children");
      }
      break;
    case NodeKind::kImage:
      if (!node.img_src && !node.img_alt) {
        throw Error(ErrorCode::kInvalidArgument,
                    "image node without img_src or img_alt");
      }
      if (!node.children.empty() || !node.text.empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "image node with text or children");
      }
      break;
    case NodeKind::kGroup:
      if (node.children.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "group without children");
      }
      if (!node.text.empty() || node.img_src || node.img_alt) {
        throw Error(ErrorCode::kInvalidArgument, "group with a payload");
      }
      for (const ParseNode& child : node.children) Validate(child);
      break;
  }
}

std::string Serialize(const ParseNode& node) {
  std::string out;
  SerializeInto(node, out);
  return out;
}

ParseNode Deserialize(std::string_view s) { return Parser(s).ParseDocument(); }

std::size_t CharLength(const ParseNode& node) {
  std::vector<IndexedNode> scratch;
  return IndexInto(node, 0, scratch);
}

std::string ToPretty(const ParseNode& node) {
  std::string out;
  AppendPretty(node, 0, out);
  return out;
}

std::vector<IndexedNode> IndexTree(const ParseNode& root) {
  std::vector<IndexedNode> out;
  IndexInto(root, 0, out);
  return out;
}

}  // namespace screenparse
