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

#ifndef SCREENPARSE_RENDER_OPS_H_
#define SCREENPARSE_RENDER_OPS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "screenparse/font.h"
#include "screenparse/image.h"

namespace screenparse {

inline constexpr int kWarmupWidth = 640;
inline constexpr int kMinWarmupPt = 12;
inline constexpr int kMaxWarmupPt = 36;

struct GlyphSource {
  std::string font_id = FontAtlas::kBuiltinId;
  int size_pt = 12;
  Rgb color{0, 0, 0};
  Rgb background{255, 255, 255};
};

// Points to pixels at 96 dpi, rounded: 12pt -> 16px, 36pt -> 48px.
int PointsToPixels(int size_pt);

// Line box height of `font` at `px`.
int LineHeight(const FontAtlas& font, int px);

struct TextLine {
  std::u32string text;
  int advance_px = 0;  // rounded up
};

// Greedy word wrap. Runs of ASCII whitespace act as single spaces; a word
// wider than `width` is broken between characters. Empty input gives no
// lines.
std::vector<TextLine> LayoutText(std::string_view text, const FontAtlas& font,
                                 int px, int width);

struct RenderedText {
  Image image;
  int missing_glyphs = 0;  // characters drawn as replacement boxes
  int line_count = 0;
};

// Left-aligned text at `width`, with the height fit to the wrapped lines.
// Throws Error(kInvalidArgument) on empty text.
RenderedText RenderTextImage(std::string_view text, const GlyphSource& style,
                             int width, const FontSet& fonts = FontSet());

// Uniform RGB color, uniform font from `fonts`, uniform integer size in
// [12, 36] pt, white background.
GlyphSource SampleWarmupStyle(std::uint64_t seed,
                              const FontSet& fonts = FontSet());

// Banner convention for rendered questions: black text on white with
// padding, closed by a 2px black rule above the original image.
struct HeaderStyle {
  int size_pt = 15;
  int padding = 8;
  int rule_height = 2;
  Rgb text_color{0, 0, 0};
  Rgb background{255, 255, 255};
  Rgb rule_color{0, 0, 0};
};

// Prepends a banner of the image's width holding `text`, wrapped as needed.
// The original pixels form the bottom image.height() rows untouched.
// Throws Error(kInvalidHeader) when `text` is empty or only whitespace.
Image RenderHeader(const Image& image, std::string_view text,
                   const HeaderStyle& style = {});

struct StrokeStyle {
  Rgb color{255, 0, 0};
  int width = 2;
};

struct DrawResult {
  Image image;
  bool clipped = false;  // the box extended past the image and was clipped
};

// Outlines `box` with strokes drawn inward from its edges. Zero-width or
// zero-height boxes are widened to 1px. Pixels outside the strokes are
// unchanged.
DrawResult DrawBBox(const Image& image, const BBox& box,
                    const StrokeStyle& style = {});

// The four stroke rectangles DrawBBox paints for `box` (after clamping and
// clipping), for callers that need the exact footprint.
std::vector<BBox> StrokeRects(const Image& image, const BBox& box,
                              int stroke_width);

}  // namespace screenparse

#endif  // SCREENPARSE_RENDER_OPS_H_
