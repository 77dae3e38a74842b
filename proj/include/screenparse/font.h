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

#ifndef SCREENPARSE_FONT_H_
#define SCREENPARSE_FONT_H_

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace screenparse {

struct Glyph {
  int advance_q6 = 0;  // 1/64 px at the atlas reference size
  int left = 0;        // bitmap offset from the pen position
  int top = 0;         // bitmap offset from the top of the line box
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> coverage;  // width * height, row-major
};

// Pre-rasterized glyphs at one reference pixel size (the .spfa format
// written by tools/gen_font_atlas.py). Rendering at other sizes resamples
// these bitmaps, so output depends only on the atlas bytes.
class FontAtlas {
 public:
  static FontAtlas Parse(std::span<const std::uint8_t> bytes, std::string id);
  static FontAtlas LoadFile(const std::string& path);

  // DejaVu Sans, compiled into the library.
  static std::shared_ptr<const FontAtlas> Builtin();
  static constexpr const char* kBuiltinId = "dejavu-sans";

  const std::string& id() const { return id_; }
  int ref_px() const { return ref_px_; }
  int ascent() const { return ascent_; }
  int descent() const { return descent_; }
  const Glyph* Find(char32_t cp) const;
  std::size_t glyph_count() const { return glyphs_.size(); }

 private:
  std::string id_;
  int ref_px_ = 0;
  int ascent_ = 0;
  int descent_ = 0;
  std::map<char32_t, Glyph> glyphs_;
};

// The fonts warmup sampling draws from. Always contains the builtin font
// first; a font directory adds its *.spfa files in filename order.
class FontSet {
 public:
  FontSet();
  static FontSet FromDirectory(const std::string& dir);

  std::size_t size() const { return fonts_.size(); }
  const FontAtlas& at(std::size_t i) const { return *fonts_[i]; }
  // Falls back to the builtin font for unknown ids.
  const FontAtlas& Get(const std::string& id) const;

 private:
  std::vector<std::shared_ptr<const FontAtlas>> fonts_;
};

}  // namespace screenparse

#endif  // SCREENPARSE_FONT_H_
