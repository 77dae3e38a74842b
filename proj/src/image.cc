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

#include "screenparse/image.h"

#include <png.h>

#include <algorithm>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>

#include "screenparse/error.h"

namespace screenparse {

Rgb ParseRgb(const std::string& s) {
  unsigned r, g, b;
  std::string body = s;
  if (!body.empty() && body[0] == '#') body.erase(0, 1);
  if (body.size() == 6 &&
      std::sscanf(body.c_str(), "%2x%2x%2x", &r, &g, &b) == 3) {
    return {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
            static_cast<std::uint8_t>(b)};
  }
  char tail;
  if (std::sscanf(s.c_str(), "%u,%u,%u%c", &r, &g, &b, &tail) == 3 &&
      r < 256 && g < 256 && b < 256) {
    return {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
            static_cast<std::uint8_t>(b)};
  }
  throw Error(ErrorCode::kInvalidArgument, "bad color '" + s + "'");
}

std::string FormatRgb(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

BBox Union(const BBox& a, const BBox& b) {
  const int x0 = std::min(a.x, b.x);
  const int y0 = std::min(a.y, b.y);
  return {x0, y0, std::max(a.right(), b.right()) - x0,
          std::max(a.bottom(), b.bottom()) - y0};
}

BBox Intersect(const BBox& a, const BBox& b) {
  const int x0 = std::max(a.x, b.x);
  const int y0 = std::max(a.y, b.y);
  const int x1 = std::min(a.right(), b.right());
  const int y1 = std::min(a.bottom(), b.bottom());
  return {x0, y0, std::max(0, x1 - x0), std::max(0, y1 - y0)};
}

bool Contains(const BBox& outer, const BBox& inner) {
  return inner.x >= outer.x && inner.y >= outer.y &&
         inner.right() <= outer.right() && inner.bottom() <= outer.bottom();
}

Image::Image(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative image size");
  }
  pixels_.resize(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

void Image::FillRect(const BBox& box, Rgb c) {
  const BBox clip = Intersect(box, bounds());
  for (int y = clip.y; y < clip.bottom(); ++y) {
    for (int x = clip.x; x < clip.right(); ++x) set(x, y, c);
  }
}

void Image::Blit(const Image& src, int x, int y) {
  const BBox clip = Intersect({x, y, src.width(), src.height()}, bounds());
  for (int row = clip.y; row < clip.bottom(); ++row) {
    const auto* from = &src.pixels_[src.Offset(clip.x - x, row - y)];
    std::memcpy(&pixels_[Offset(clip.x, row)], from,
                static_cast<std::size_t>(clip.w) * 3);
  }
}

namespace {

struct PngWriteState {
  std::vector<std::uint8_t>* out;
};

void PngWrite(png_structp png, png_bytep data, png_size_t length) {
  auto* state = static_cast<PngWriteState*>(png_get_io_ptr(png));
  state->out->insert(state->out->end(), data, data + length);
}

void PngFlush(png_structp) {}

struct PngReadState {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;
};

void PngRead(png_structp png, png_bytep data, png_size_t length) {
  auto* state = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (state->pos + length > state->bytes.size()) {
    png_error(png, "truncated PNG");
  }
  std::memcpy(data, state->bytes.data() + state->pos, length);
  state->pos += length;
}

struct PngErrorState {
  char message[256] = "";
};

void PngErrorHandler(png_structp png, png_const_charp message) {
  auto* state = static_cast<PngErrorState*>(png_get_error_ptr(png));
  std::snprintf(state->message, sizeof(state->message), "%s", message);
  png_longjmp(png, 1);
}

void PngWarningHandler(png_structp, png_const_charp) {}

}  // namespace

// libpng reports errors by longjmp. Every object with a destructor is
// constructed before setjmp so nothing is skipped on the error path.
std::vector<std::uint8_t> EncodePng(const Image& image) {
  if (image.width() == 0 || image.height() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "cannot encode an empty image");
  }
  std::vector<std::uint8_t> out;
  PngErrorState error;
  PngWriteState state{&out};
  png_structp png = png_create_write_struct(
      PNG_LIBPNG_VER_STRING, &error, PngErrorHandler, PngWarningHandler);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::kIo, std::string("png: ") + error.message);
  }
  png_set_write_fn(png, &state, PngWrite, PngFlush);
  png_set_IHDR(png, info, image.width(), image.height(), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_SUB);
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  const std::uint8_t* pixels = image.pixels().data();
  const std::size_t stride = static_cast<std::size_t>(image.width()) * 3;
  for (int y = 0; y < image.height(); ++y) {
    png_write_row(png, const_cast<png_bytep>(pixels + y * stride));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

Image DecodePng(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw Error(ErrorCode::kIo, "not a PNG stream");
  }
  Image image;
  std::vector<png_bytep> rows;
  PngErrorState error;
  PngReadState state{bytes};
  png_structp png = png_create_read_struct(
      PNG_LIBPNG_VER_STRING, &error, PngErrorHandler, PngWarningHandler);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::kIo, std::string("png: ") + error.message);
  }
  png_set_read_fn(png, &state, PngRead);
  png_read_info(png, info);
  // Normalize everything to 8-bit RGB; alpha is composited over white.
  png_set_expand(png);
  png_set_strip_16(png);
  png_set_gray_to_rgb(png);
  png_color_16 white{0, 255, 255, 255, 255};
  png_set_background(png, &white, PNG_BACKGROUND_GAMMA_SCREEN, 0, 1.0);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  if (png_get_rowbytes(png, info) != static_cast<std::size_t>(w) * 3) {
    png_error(png, "unsupported pixel layout");
  }
  image = Image(w, h);
  rows.resize(h);
  std::uint8_t* pixels = image.mutable_pixels().data();
  for (int y = 0; y < h; ++y) {
    rows[y] = pixels + static_cast<std::size_t>(y) * w * 3;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return image;
}

std::vector<std::uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in),
          std::istreambuf_iterator<char>()};
}

void WriteFileBytes(const std::string& path,
                    std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
}

Image ReadPng(const std::string& path) { return DecodePng(ReadFileBytes(path)); }

void WritePng(const std::string& path, const Image& image) {
  WriteFileBytes(path, EncodePng(image));
}

}  // namespace screenparse
