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

#ifndef SCREENPARSE_IMAGE_H_
#define SCREENPARSE_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace screenparse {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Parses "#rrggbb", "rrggbb" or "r,g,b".
Rgb ParseRgb(const std::string& s);
std::string FormatRgb(Rgb c);

// Pixel rectangle; x/y is the top-left corner.
struct BBox {
  int x = 0, y = 0, w = 0, h = 0;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  long long area() const { return static_cast<long long>(w) * h; }
  bool empty() const { return w <= 0 || h <= 0; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

BBox Union(const BBox& a, const BBox& b);
BBox Intersect(const BBox& a, const BBox& b);
bool Contains(const BBox& outer, const BBox& inner);

// 8-bit RGB raster, row-major, no padding.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = {255, 255, 255});

  int width() const { return width_; }
  int height() const { return height_; }
  BBox bounds() const { return {0, 0, width_, height_}; }

  Rgb at(int x, int y) const {
    const std::size_t i = Offset(x, y);
    return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
  }
  void set(int x, int y, Rgb c) {
    const std::size_t i = Offset(x, y);
    pixels_[i] = c.r;
    pixels_[i + 1] = c.g;
    pixels_[i + 2] = c.b;
  }

  // Fills the part of `box` that lies inside the image.
  void FillRect(const BBox& box, Rgb c);

  // Copies `src` with its top-left corner at (x, y), clipped.
  void Blit(const Image& src, int x, int y);

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> mutable_pixels() { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t Offset(int x, int y) const {
    return (static_cast<std::size_t>(y) * width_ + x) * 3;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Lossless PNG codec (libpng). Encoding is deterministic: fixed filter and
// compression settings, no timestamps or text chunks.
std::vector<std::uint8_t> EncodePng(const Image& image);
Image DecodePng(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path,
                    std::span<const std::uint8_t> bytes);
Image ReadPng(const std::string& path);
void WritePng(const std::string& path, const Image& image);

}  // namespace screenparse

#endif  // SCREENPARSE_IMAGE_H_
