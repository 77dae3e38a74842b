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

#include "screenparse/patchifier.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "screenparse/error.h"

namespace screenparse {
namespace {

void CheckPositive(int width, int height, int patch_size) {
  if (width < 1 || height < 1 || patch_size < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "width, height and patch size must be >= 1");
  }
}

void CheckSide(int patch_size, int side) {
  if (side < patch_size || side % patch_size != 0) {
    throw Error(ErrorCode::kInvalidSide,
                "side " + std::to_string(side) +
                    " is not a positive multiple of patch size " +
                    std::to_string(patch_size));
  }
}

// Column range reachable while the row count is `rows`: the scale runs over
// [rows*p/H, (rows+1)*p/H), or (0, 2p/H) for the clamped first row.
struct ColumnRange {
  long long lo;
  long long hi;
};

ColumnRange ColumnsForRows(long long rows, long long width, long long height) {
  const long long lo = rows == 1 ? 1 : std::max(1LL, rows * width / height);
  // Largest c with c < (rows + 1) * W / H.
  const long long hi = std::max(1LL, ((rows + 1) * width - 1) / height);
  return {lo, hi};
}

void PutU32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b, 4);
}

std::uint32_t GetU32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw Error(ErrorCode::kCorruptRecord, "truncated patch grid");
  }
  return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

std::string GridModeName(GridMode mode) {
  switch (mode) {
    case GridMode::kVariable: return "variable";
    case GridMode::kPadded: return "padded";
    case GridMode::kStretched: return "stretched";
  }
  return "variable";
}

GridMode ParseGridMode(const std::string& name) {
  if (name == "variable") return GridMode::kVariable;
  if (name == "padded") return GridMode::kPadded;
  if (name == "stretched") return GridMode::kStretched;
  throw Error(ErrorCode::kInvalidArgument, "unknown grid mode '" + name + "'");
}

std::string ResamplerName(Resampler resampler) {
  return resampler == Resampler::kNearest ? "nearest" : "bilinear";
}

Resampler ParseResampler(const std::string& name) {
  if (name == "nearest") return Resampler::kNearest;
  if (name == "bilinear") return Resampler::kBilinear;
  throw Error(ErrorCode::kInvalidArgument, "unknown resampler '" + name + "'");
}

GridPlan PlanGrid(int width, int height, int patch_size, int budget) {
  CheckPositive(width, height, patch_size);
  if (budget < 1) throw Error(ErrorCode::kInvalidArgument, "budget < 1");
  const long long W = width, H = height, B = budget;

  const double ideal = std::sqrt(static_cast<double>(B) * patch_size *
                                 patch_size / (static_cast<double>(W) * H));
  const long long start =
      std::max(1LL, static_cast<long long>(std::floor(ideal * H / patch_size)));

  long long best_rows = 1, best_cols = 1;
  auto consider = [&](long long rows) {
    const ColumnRange range = ColumnsForRows(rows, W, H);
    const long long cols = std::min(range.hi, B / rows);
    if (cols >= range.lo && rows * cols > best_rows * best_cols) {
      best_rows = rows;
      best_cols = cols;
    }
  };
  // Upward: the fewest columns available at a row count only grows, so the
  // first infeasible row count ends the walk.
  for (long long rows = start; rows <= B; ++rows) {
    if (rows * ColumnsForRows(rows, W, H).lo > B) break;
    consider(rows);
  }
  // Downward: rows * cols_hi bounds every product at this row count and
  // shrinks as rows does.
  for (long long rows = start - 1; rows >= 1; --rows) {
    if (rows * ColumnsForRows(rows, W, H).hi <= best_rows * best_cols) break;
    consider(rows);
  }

  GridPlan plan;
  plan.rows = static_cast<int>(best_rows);
  plan.cols = static_cast<int>(best_cols);
  plan.patch_size = patch_size;
  // A factor floored up to 1 places no lower bound on the scale.
  const double row_scale =
      best_rows > 1 ? static_cast<double>(best_rows) * patch_size / H : 0.0;
  const double col_scale =
      best_cols > 1 ? static_cast<double>(best_cols) * patch_size / W : 0.0;
  plan.scale = std::max(row_scale, col_scale);
  if (plan.scale == 0.0) {
    plan.scale = static_cast<double>(patch_size) / std::max(W, H);
  }
  plan.target_w = plan.cols * patch_size;
  plan.target_h = plan.rows * patch_size;
  plan.content_w = plan.target_w;
  plan.content_h = plan.target_h;
  plan.budget = budget;
  plan.mode = GridMode::kVariable;
  return plan;
}

GridPlan PlanGridPadded(int width, int height, int patch_size, int side) {
  CheckPositive(width, height, patch_size);
  CheckSide(patch_size, side);
  const long long long_edge = std::max(width, height);
  auto scaled = [&](long long edge) {
    return static_cast<int>(
        std::max(1LL, (2 * edge * side + long_edge) / (2 * long_edge)));
  };
  GridPlan plan;
  plan.rows = plan.cols = side / patch_size;
  plan.patch_size = patch_size;
  plan.scale = static_cast<double>(side) / static_cast<double>(long_edge);
  plan.target_w = plan.target_h = side;
  plan.content_w = width >= height ? side : scaled(width);
  plan.content_h = height >= width ? side : scaled(height);
  plan.budget = plan.rows * plan.cols;
  plan.mode = GridMode::kPadded;
  return plan;
}

GridPlan PlanGridStretched(int width, int height, int patch_size, int side) {
  CheckPositive(width, height, patch_size);
  CheckSide(patch_size, side);
  GridPlan plan;
  plan.rows = plan.cols = side / patch_size;
  plan.patch_size = patch_size;
  plan.scale = static_cast<double>(side) / width;
  plan.target_w = plan.target_h = side;
  plan.content_w = plan.content_h = side;
  plan.budget = plan.rows * plan.cols;
  plan.mode = GridMode::kStretched;
  return plan;
}

double AspectDistortion(const GridPlan& plan, int width, int height) {
  const double source = static_cast<double>(width) / height;
  const double content = static_cast<double>(plan.content_w) / plan.content_h;
  return source / content;
}

Image Resize(const Image& image, int width, int height, Resampler resampler) {
  if (width < 1 || height < 1 || image.width() < 1 || image.height() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "cannot resize empty images");
  }
  const int sw = image.width(), sh = image.height();
  if (sw == width && sh == height) return image;
  Image out(width, height);
  const auto src = image.pixels();
  auto dst = out.mutable_pixels();
  const auto at = [&](int x, int y) {
    return src.data() + (static_cast<std::size_t>(y) * sw + x) * 3;
  };

  if (resampler == Resampler::kNearest) {
    std::vector<int> xs(width);
    for (int x = 0; x < width; ++x) {
      xs[x] = static_cast<int>(((2LL * x + 1) * sw) / (2LL * width));
    }
    for (int y = 0; y < height; ++y) {
      const int sy = static_cast<int>(((2LL * y + 1) * sh) / (2LL * height));
      for (int x = 0; x < width; ++x) {
        std::memcpy(&dst[(static_cast<std::size_t>(y) * width + x) * 3],
                    at(xs[x], sy), 3);
      }
    }
    return out;
  }

  // Source coordinate of a destination center in Q16, clamped at the edges.
  struct Tap {
    int i0, i1;
    std::int64_t frac;
  };
  auto taps = [](int dst_len, int src_len) {
    std::vector<Tap> t(dst_len);
    for (int d = 0; d < dst_len; ++d) {
      std::int64_t q = ((2LL * d + 1) * src_len - dst_len) * 65536LL /
                       (2LL * dst_len);
      if (q < 0) q = 0;
      int i0 = static_cast<int>(q >> 16);
      std::int64_t frac = q & 0xFFFF;
      if (i0 >= src_len - 1) {
        i0 = src_len - 1;
        frac = 0;
      }
      t[d] = {i0, std::min(i0 + 1, src_len - 1), frac};
    }
    return t;
  };
  const auto tx = taps(width, sw);
  const auto ty = taps(height, sh);
  for (int y = 0; y < height; ++y) {
    const Tap& vy = ty[y];
    for (int x = 0; x < width; ++x) {
      const Tap& vx = tx[x];
      const std::uint8_t* p00 = at(vx.i0, vy.i0);
      const std::uint8_t* p10 = at(vx.i1, vy.i0);
      const std::uint8_t* p01 = at(vx.i0, vy.i1);
      const std::uint8_t* p11 = at(vx.i1, vy.i1);
      for (int c = 0; c < 3; ++c) {
        const std::int64_t top = p00[c] * (65536 - vx.frac) + p10[c] * vx.frac;
        const std::int64_t bottom =
            p01[c] * (65536 - vx.frac) + p11[c] * vx.frac;
        const std::int64_t v =
            top * (65536 - vy.frac) + bottom * vy.frac + (1LL << 31);
        dst[(static_cast<std::size_t>(y) * width + x) * 3 + c] =
            static_cast<std::uint8_t>(v >> 32);
      }
    }
  }
  return out;
}

Image RenderGridCanvas(const Image& image, const GridPlan& plan,
                       Resampler resampler, Rgb pad) {
  Image content = Resize(image, plan.content_w, plan.content_h, resampler);
  if (plan.content_w == plan.target_w && plan.content_h == plan.target_h) {
    return content;
  }
  Image canvas(plan.target_w, plan.target_h, pad);
  canvas.Blit(content, 0, 0);
  return canvas;
}

PatchGrid Patchify(const Image& image, const GridPlan& plan,
                   Resampler resampler, Rgb pad) {
  const Image canvas = RenderGridCanvas(image, plan, resampler, pad);
  const int p = plan.patch_size;
  PatchGrid grid;
  grid.plan = plan;
  grid.patches.reserve(static_cast<std::size_t>(plan.patch_count()));
  const auto pixels = canvas.pixels();
  const std::size_t row_bytes = static_cast<std::size_t>(p) * 3;
  for (int r = 0; r < plan.rows; ++r) {
    for (int c = 0; c < plan.cols; ++c) {
      Patch patch{r, c, std::vector<std::uint8_t>(row_bytes * p)};
      for (int y = 0; y < p; ++y) {
        const std::size_t from =
            ((static_cast<std::size_t>(r) * p + y) * canvas.width() +
             static_cast<std::size_t>(c) * p) * 3;
        std::memcpy(&patch.pixels[y * row_bytes], &pixels[from], row_bytes);
      }
      grid.patches.push_back(std::move(patch));
    }
  }
  grid.pad_mask.assign(static_cast<std::size_t>(std::max(plan.budget,
                                                         plan.patch_count())),
                       false);
  std::fill_n(grid.pad_mask.begin(), plan.patch_count(), true);
  return grid;
}

Image ReassemblePatches(const PatchGrid& grid) {
  const int p = grid.plan.patch_size;
  Image canvas(grid.plan.cols * p, grid.plan.rows * p);
  auto pixels = canvas.mutable_pixels();
  const std::size_t row_bytes = static_cast<std::size_t>(p) * 3;
  for (const Patch& patch : grid.patches) {
    for (int y = 0; y < p; ++y) {
      const std::size_t to =
          ((static_cast<std::size_t>(patch.row) * p + y) * canvas.width() +
           static_cast<std::size_t>(patch.col) * p) * 3;
      std::memcpy(&pixels[to], &patch.pixels[y * row_bytes], row_bytes);
    }
  }
  return canvas;
}

void WritePatchGrid(std::ostream& out, const PatchGrid& grid) {
  const GridPlan& plan = grid.plan;
  out.write("SPPG", 4);
  PutU32(out, 1);
  PutU32(out, static_cast<std::uint32_t>(plan.mode));
  for (int v : {plan.rows, plan.cols, plan.patch_size, plan.budget,
                plan.target_w, plan.target_h, plan.content_w,
                plan.content_h}) {
    PutU32(out, static_cast<std::uint32_t>(v));
  }
  const auto bits = std::bit_cast<std::uint64_t>(plan.scale);
  PutU32(out, static_cast<std::uint32_t>(bits));
  PutU32(out, static_cast<std::uint32_t>(bits >> 32));
  for (const Patch& patch : grid.patches) {
    PutU32(out, static_cast<std::uint32_t>(patch.row));
    PutU32(out, static_cast<std::uint32_t>(patch.col));
    out.write(reinterpret_cast<const char*>(patch.pixels.data()),
              static_cast<std::streamsize>(patch.pixels.size()));
  }
}

PatchGrid ReadPatchGrid(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "SPPG", 4) != 0) {
    throw Error(ErrorCode::kCorruptRecord, "not a patch grid");
  }
  if (GetU32(in) != 1) {
    throw Error(ErrorCode::kCorruptRecord, "unsupported patch grid version");
  }
  PatchGrid grid;
  GridPlan& plan = grid.plan;
  plan.mode = static_cast<GridMode>(GetU32(in));
  for (int* v : {&plan.rows, &plan.cols, &plan.patch_size, &plan.budget,
                 &plan.target_w, &plan.target_h, &plan.content_w,
                 &plan.content_h}) {
    *v = static_cast<int>(GetU32(in));
  }
  std::uint64_t bits = GetU32(in);
  bits |= static_cast<std::uint64_t>(GetU32(in)) << 32;
  plan.scale = std::bit_cast<double>(bits);
  const std::size_t patch_bytes =
      static_cast<std::size_t>(plan.patch_size) * plan.patch_size * 3;
  for (int i = 0; i < plan.patch_count(); ++i) {
    Patch patch;
    patch.row = static_cast<int>(GetU32(in));
    patch.col = static_cast<int>(GetU32(in));
    patch.pixels.resize(patch_bytes);
    if (!in.read(reinterpret_cast<char*>(patch.pixels.data()),
                 static_cast<std::streamsize>(patch_bytes))) {
      throw Error(ErrorCode::kCorruptRecord, "truncated patch data");
    }
    grid.patches.push_back(std::move(patch));
  }
  grid.pad_mask.assign(static_cast<std::size_t>(std::max(plan.budget,
                                                         plan.patch_count())),
                       false);
  std::fill_n(grid.pad_mask.begin(), plan.patch_count(), true);
  return grid;
}

std::string DescribeGrid(const GridPlan& plan) {
  std::ostringstream s;
  s << GridModeName(plan.mode) << " " << plan.rows << "x" << plan.cols
    << " patches of " << plan.patch_size << "px (" << plan.patch_count()
    << "/" << plan.budget << " slots), canvas " << plan.target_w << "x"
    << plan.target_h << ", content " << plan.content_w << "x"
    << plan.content_h << ", scale " << plan.scale;
  return s.str();
}

}  // namespace screenparse
