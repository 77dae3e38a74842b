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

#include "screenparse/font.h"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <filesystem>

#include "screenparse/error.h"
#include "screenparse/image.h"

namespace screenparse {
namespace {

#include "embedded_font_data.inc"

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint32_t U32() {
    Need(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | bytes_[pos_ + i];
    pos_ += 4;
    return v;
  }
  std::int32_t I32() { return static_cast<std::int32_t>(U32()); }
  std::span<const std::uint8_t> Bytes(std::size_t n) {
    Need(n);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  void Need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) {
      throw Error(ErrorCode::kInvalidInput, "truncated font atlas");
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

FontAtlas FontAtlas::Parse(std::span<const std::uint8_t> bytes,
                           std::string id) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "SPFA", 4) != 0) {
    throw Error(ErrorCode::kInvalidInput, "not a font atlas: " + id);
  }
  Reader r(bytes.subspan(4));
  if (r.U32() != 1) {
    throw Error(ErrorCode::kInvalidInput, "unsupported atlas version");
  }
  FontAtlas atlas;
  atlas.id_ = std::move(id);
  atlas.ref_px_ = static_cast<int>(r.U32());
  atlas.ascent_ = r.I32();
  atlas.descent_ = r.I32();
  const std::uint32_t count = r.U32();
  if (atlas.ref_px_ <= 0) {
    throw Error(ErrorCode::kInvalidInput, "bad atlas reference size");
  }
  for (std::uint32_t i = 0; i < count; ++i) {
    const char32_t cp = r.U32();
    Glyph g;
    g.advance_q6 = static_cast<int>(r.U32());
    g.left = r.I32();
    g.top = r.I32();
    g.width = static_cast<int>(r.U32());
    g.height = static_cast<int>(r.U32());
    const auto data =
        r.Bytes(static_cast<std::size_t>(g.width) * g.height);
    g.coverage.assign(data.begin(), data.end());
    atlas.glyphs_.emplace(cp, std::move(g));
  }
  return atlas;
}

FontAtlas FontAtlas::LoadFile(const std::string& path) {
  return Parse(ReadFileBytes(path),
               std::filesystem::path(path).stem().string());
}

std::shared_ptr<const FontAtlas> FontAtlas::Builtin() {
  static const std::shared_ptr<const FontAtlas> builtin = [] {
    std::vector<std::uint8_t> raw(kDejaVuSansAtlasRawSize);
    uLongf raw_size = raw.size();
    if (uncompress(raw.data(), &raw_size, kDejaVuSansAtlas,
                   sizeof(kDejaVuSansAtlas)) != Z_OK ||
        raw_size != raw.size()) {
      throw Error(ErrorCode::kInvalidInput, "corrupt builtin font");
    }
    return std::make_shared<const FontAtlas>(Parse(raw, kBuiltinId));
  }();
  return builtin;
}

const Glyph* FontAtlas::Find(char32_t cp) const {
  const auto it = glyphs_.find(cp);
  return it == glyphs_.end() ? nullptr : &it->second;
}

FontSet::FontSet() { fonts_.push_back(FontAtlas::Builtin()); }

FontSet FontSet::FromDirectory(const std::string& dir) {
  namespace fs = std::filesystem;
  FontSet set;
  if (dir.empty()) return set;
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "font directory not found: " + dir);
  }
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".spfa") {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  for (const auto& path : paths) {
    auto font = std::make_shared<const FontAtlas>(
        FontAtlas::LoadFile(path.string()));
    if (font->id() == FontAtlas::kBuiltinId) continue;
    set.fonts_.push_back(std::move(font));
  }
  return set;
}

const FontAtlas& FontSet::Get(const std::string& id) const {
  for (const auto& font : fonts_) {
    if (font->id() == id) return *font;
  }
  return *fonts_.front();
}

}  // namespace screenparse
