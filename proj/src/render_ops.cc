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

#include "screenparse/render_ops.h"

#include <algorithm>
#include <map>

#include "screenparse/error.h"
#include "screenparse/random.h"
#include "screenparse/utf8.h"

namespace screenparse {
namespace {

constexpr int kSubsamples = 4;

// Glyph bitmaps resampled to one pixel size, built lazily per render call.
class ScaledFont {
 public:
  ScaledFont(const FontAtlas& font, int px) : font_(font), px_(px) {}

  struct Scaled {
    bool missing = false;
    int advance_q6 = 0;
    int left = 0;
    int top = 0;
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> coverage;
  };

  const Scaled& Get(char32_t cp) {
    auto it = cache_.find(cp);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(cp, Build(cp)).first->second;
  }

  int line_height() const { return LineHeight(font_, px_); }

 private:
  int Scale(int v) const {
    // Round half away from zero so negative offsets mirror positive ones.
    const long long n = static_cast<long long>(v) * px_;
    const long long d = font_.ref_px();
    return static_cast<int>(n >= 0 ? (2 * n + d) / (2 * d)
                                   : -((-2 * n + d) / (2 * d)));
  }

  Scaled Build(char32_t cp) const {
    const Glyph* g = font_.Find(cp);
    if (g == nullptr && utf8::IsSpace(cp)) g = font_.Find(U' ');
    if (g == nullptr && cp == 0xA0) g = font_.Find(U' ');
    Scaled s;
    if (g == nullptr) {
      // Replacement box: hollow rectangle, 0.6em wide, cap-height tall.
      s.missing = true;
      s.advance_q6 = px_ * 64 * 6 / 10;
      s.left = std::max(1, px_ / 16);
      s.width = std::max(2, s.advance_q6 / 64 - 2 * s.left);
      s.top = std::max(0, Scale(font_.ascent()) - px_ * 7 / 10);
      s.height = std::max(2, px_ * 7 / 10);
      s.coverage.assign(static_cast<std::size_t>(s.width) * s.height, 0);
      for (int y = 0; y < s.height; ++y) {
        for (int x = 0; x < s.width; ++x) {
          if (x == 0 || y == 0 || x == s.width - 1 || y == s.height - 1) {
            s.coverage[static_cast<std::size_t>(y) * s.width + x] = 255;
          }
        }
      }
      return s;
    }
    const int ref = font_.ref_px();
    s.advance_q6 = static_cast<int>(
        static_cast<long long>(g->advance_q6) * px_ / ref);
    s.left = Scale(g->left);
    s.top = Scale(g->top);
    s.width = (g->width * px_ + ref - 1) / ref;
    s.height = (g->height * px_ + ref - 1) / ref;
    s.coverage.assign(static_cast<std::size_t>(s.width) * s.height, 0);
    // Box filter by supersampling: each output pixel averages a 4x4 grid of
    // source samples taken at sub-pixel centers.
    const long long denom = 2LL * kSubsamples * px_;
    for (int y = 0; y < s.height; ++y) {
      for (int x = 0; x < s.width; ++x) {
        int sum = 0;
        for (int sy = 0; sy < kSubsamples; ++sy) {
          const long long src_y =
              ((2LL * (y * kSubsamples + sy) + 1) * ref) / denom;
          if (src_y >= g->height) continue;
          for (int sx = 0; sx < kSubsamples; ++sx) {
            const long long src_x =
                ((2LL * (x * kSubsamples + sx) + 1) * ref) / denom;
            if (src_x >= g->width) continue;
            sum += g->coverage[static_cast<std::size_t>(src_y) * g->width +
                               static_cast<std::size_t>(src_x)];
          }
        }
        constexpr int kCount = kSubsamples * kSubsamples;
        s.coverage[static_cast<std::size_t>(y) * s.width + x] =
            static_cast<std::uint8_t>((sum + kCount / 2) / kCount);
      }
    }
    return s;
  }

  const FontAtlas& font_;
  int px_;
  std::map<char32_t, Scaled> cache_;
};

std::uint8_t Blend(std::uint8_t bg, std::uint8_t fg, int alpha) {
  return static_cast<std::uint8_t>((bg * (255 - alpha) + fg * alpha + 127) /
                                   255);
}

// Draws glyph runs onto `canvas` starting at (x, line_top) per line.
int DrawLines(Image& canvas, const std::vector<TextLine>& lines,
              ScaledFont& scaled, int x, int y, Rgb color) {
  int missing = 0;
  const int line_height = scaled.line_height();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int line_top = y + static_cast<int>(i) * line_height;
    long long pen_q6 = static_cast<long long>(x) * 64;
    for (char32_t cp : lines[i].text) {
      const auto& g = scaled.Get(cp);
      if (g.missing) ++missing;
      const int gx = static_cast<int>(pen_q6 >> 6) + g.left;
      const int gy = line_top + g.top;
      for (int row = 0; row < g.height; ++row) {
        const int py = gy + row;
        if (py < 0 || py >= canvas.height()) continue;
        for (int col = 0; col < g.width; ++col) {
          const int px = gx + col;
          if (px < 0 || px >= canvas.width()) continue;
          const int a = g.coverage[static_cast<std::size_t>(row) * g.width +
                                   col];
          if (a == 0) continue;
          const Rgb bg = canvas.at(px, py);
          canvas.set(px, py, {Blend(bg.r, color.r, a), Blend(bg.g, color.g, a),
                              Blend(bg.b, color.b, a)});
        }
      }
      pen_q6 += g.advance_q6;
    }
  }
  return missing;
}

}  // namespace

int PointsToPixels(int size_pt) { return (size_pt * 96 + 36) / 72; }

int LineHeight(const FontAtlas& font, int px) {
  const long long extent = font.ascent() + font.descent();
  return static_cast<int>((extent * px + font.ref_px() - 1) / font.ref_px());
}

std::vector<TextLine> LayoutText(std::string_view text, const FontAtlas& font,
                                 int px, int width) {
  ScaledFont scaled(font, px);
  const long long limit_q6 = static_cast<long long>(std::max(width, 1)) * 64;
  auto advance = [&](std::u32string_view s) {
    long long q6 = 0;
    for (char32_t cp : s) q6 += scaled.Get(cp).advance_q6;
    return q6;
  };
  const long long space_q6 = scaled.Get(U' ').advance_q6;

  std::vector<std::u32string> words;
  std::u32string current;
  for (char32_t cp : utf8::Decode(text)) {
    if (utf8::IsSpace(cp)) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(cp);
    }
  }
  if (!current.empty()) words.push_back(std::move(current));

  std::vector<TextLine> lines;
  std::u32string line;
  long long line_q6 = 0;
  auto flush = [&] {
    if (line.empty()) return;
    lines.push_back({line, static_cast<int>((line_q6 + 63) / 64)});
    line.clear();
    line_q6 = 0;
  };
  for (const auto& word : words) {
    const long long word_q6 = advance(word);
    const long long needed = (line.empty() ? 0 : space_q6) + word_q6;
    if (line_q6 + needed <= limit_q6) {
      if (!line.empty()) line.push_back(U' ');
      line += word;
      line_q6 += needed;
      continue;
    }
    flush();
    if (word_q6 <= limit_q6) {
      line = word;
      line_q6 = word_q6;
      continue;
    }
    // Break an overlong word between characters; every line keeps at least
    // one character so narrow widths still make progress.
    for (char32_t cp : word) {
      const long long cp_q6 = scaled.Get(cp).advance_q6;
      if (!line.empty() && line_q6 + cp_q6 > limit_q6) flush();
      line.push_back(cp);
      line_q6 += cp_q6;
    }
  }
  flush();
  return lines;
}

RenderedText RenderTextImage(std::string_view text, const GlyphSource& style,
                             int width, const FontSet& fonts) {
  if (text.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot render empty text");
  }
  if (width < 1) throw Error(ErrorCode::kInvalidArgument, "width < 1");
  const FontAtlas& font = fonts.Get(style.font_id);
  const int px = PointsToPixels(style.size_pt);
  auto lines = LayoutText(text, font, px, width);
  // Whitespace-only input still yields one (blank) line of content height.
  if (lines.empty()) lines.push_back({});
  ScaledFont scaled(font, px);
  RenderedText out;
  out.line_count = static_cast<int>(lines.size());
  out.image = Image(width, out.line_count * scaled.line_height(),
                    style.background);
  out.missing_glyphs = DrawLines(out.image, lines, scaled, 0, 0, style.color);
  return out;
}

GlyphSource SampleWarmupStyle(std::uint64_t seed, const FontSet& fonts) {
  Rng rng(seed);
  GlyphSource style;
  style.color = {static_cast<std::uint8_t>(rng.Uniform(256)),
                 static_cast<std::uint8_t>(rng.Uniform(256)),
                 static_cast<std::uint8_t>(rng.Uniform(256))};
  style.font_id = fonts.at(rng.Uniform(fonts.size())).id();
  style.size_pt =
      static_cast<int>(rng.UniformInRange(kMinWarmupPt, kMaxWarmupPt));
  style.background = {255, 255, 255};
  return style;
}

Image RenderHeader(const Image& image, std::string_view text,
                   const HeaderStyle& style) {
  if (utf8::CollapseWhitespace(text).empty()) {
    throw Error(ErrorCode::kInvalidHeader, "header text is empty");
  }
  const FontAtlas& font = *FontAtlas::Builtin();
  const int px = PointsToPixels(style.size_pt);
  const int text_width = std::max(1, image.width() - 2 * style.padding);
  const auto lines = LayoutText(text, font, px, text_width);
  ScaledFont scaled(font, px);
  const int text_height = static_cast<int>(lines.size()) * scaled.line_height();
  const int banner_height = 2 * style.padding + text_height + style.rule_height;

  Image out(image.width(), banner_height + image.height(), style.background);
  DrawLines(out, lines, scaled, style.padding, style.padding,
            style.text_color);
  out.FillRect({0, banner_height - style.rule_height, image.width(),
                style.rule_height},
               style.rule_color);
  out.Blit(image, 0, banner_height);
  return out;
}

std::vector<BBox> StrokeRects(const Image& image, const BBox& box,
                              int stroke_width) {
  BBox b = box;
  b.w = std::max(b.w, 1);
  b.h = std::max(b.h, 1);
  b = Intersect(b, image.bounds());
  if (b.empty()) return {};
  const int s = std::max(stroke_width, 1);
  const int sw = std::min(s, b.w);
  const int sh = std::min(s, b.h);
  return {
      {b.x, b.y, b.w, sh},               // top
      {b.x, b.bottom() - sh, b.w, sh},   // bottom
      {b.x, b.y, sw, b.h},               // left
      {b.right() - sw, b.y, sw, b.h},    // right
  };
}

DrawResult DrawBBox(const Image& image, const BBox& box,
                    const StrokeStyle& style) {
  DrawResult result{image, false};
  BBox clamped = box;
  clamped.w = std::max(clamped.w, 1);
  clamped.h = std::max(clamped.h, 1);
  result.clipped = !Contains(image.bounds(), clamped);
  for (const BBox& r : StrokeRects(image, box, style.width)) {
    result.image.FillRect(r, style.color);
  }
  return result;
}

}  // namespace screenparse
