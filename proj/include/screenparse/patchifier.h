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

#ifndef SCREENPARSE_PATCHIFIER_H_
#define SCREENPARSE_PATCHIFIER_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "screenparse/image.h"

namespace screenparse {

inline constexpr int kDefaultPatchSize = 16;
inline constexpr int kDefaultSequenceBudget = 2048;

enum class GridMode { kVariable, kPadded, kStretched };
enum class Resampler { kNearest, kBilinear };

std::string GridModeName(GridMode mode);
GridMode ParseGridMode(const std::string& name);
std::string ResamplerName(Resampler resampler);
Resampler ParseResampler(const std::string& name);

struct GridPlan {
  int rows = 1;
  int cols = 1;
  int patch_size = kDefaultPatchSize;
  // Resize factor. Variable: the smallest scale whose floored grid is
  // rows x cols. Padded: side / long edge. Stretched: the horizontal factor.
  double scale = 1.0;
  int target_w = kDefaultPatchSize;  // cols * patch_size
  int target_h = kDefaultPatchSize;  // rows * patch_size
  // Extent of the resized image inside the target canvas. Smaller than the
  // target only in padded mode; the remainder is pad fill.
  int content_w = kDefaultPatchSize;
  int content_h = kDefaultPatchSize;
  int budget = 1;  // sequence slots the grid is planned against
  GridMode mode = GridMode::kVariable;

  int patch_count() const { return rows * cols; }
  friend bool operator==(const GridPlan&, const GridPlan&) = default;
};

// Variable-resolution planning: the largest rows * cols <= budget reachable
// as (max(1, floor(s * height / p)), max(1, floor(s * width / p))) for some
// scale s > 0. The search starts at the row count of
// s* = sqrt(budget * p^2 / (width * height)) and walks rows up and down,
// stopping once a bound proves no further row count can win.
GridPlan PlanGrid(int width, int height, int patch_size = kDefaultPatchSize,
                  int budget = kDefaultSequenceBudget);

// Aspect-preserving resize of the long edge to `side`, padded to a square.
// Throws Error(kInvalidSide) unless side is a positive multiple of
// patch_size.
GridPlan PlanGridPadded(int width, int height, int patch_size, int side);

// Resize of both edges to `side`, ignoring aspect ratio.
GridPlan PlanGridStretched(int width, int height, int patch_size, int side);

// Source aspect ratio divided by the aspect ratio of the resized content:
// 1 means undistorted, stretched mode gives width / height.
double AspectDistortion(const GridPlan& plan, int width, int height);

// Fixed-point resizers; Nearest is bit-exact everywhere, Bilinear uses
// half-pixel centers with 16-bit weights.
Image Resize(const Image& image, int width, int height, Resampler resampler);

// The plan's target canvas: `image` resized to the content extent at the
// top-left, with pad fill elsewhere.
Image RenderGridCanvas(const Image& image, const GridPlan& plan,
                       Resampler resampler, Rgb pad = {0, 0, 0});

struct Patch {
  int row = 0;
  int col = 0;
  std::vector<std::uint8_t> pixels;  // patch_size^2 * 3, row-major RGB
};

struct PatchGrid {
  GridPlan plan;
  std::vector<Patch> patches;  // row-major
  // One entry per sequence slot (plan.budget); true for the first
  // rows * cols slots, which hold patches.
  std::vector<bool> pad_mask;
};

PatchGrid Patchify(const Image& image, const GridPlan& plan,
                   Resampler resampler = Resampler::kBilinear,
                   Rgb pad = {0, 0, 0});

// Inverse of slicing: the canvas the patches were cut from.
Image ReassemblePatches(const PatchGrid& grid);

// Binary PatchGrid container, little-endian:
//   "SPPG" u32 version=1 u32 mode u32 rows u32 cols u32 patch_size
//   u32 budget u32 target_w u32 target_h u32 content_w u32 content_h
//   f64 scale, then rows*cols x {u32 row u32 col, patch bytes}.
void WritePatchGrid(std::ostream& out, const PatchGrid& grid);
PatchGrid ReadPatchGrid(std::istream& in);

std::string DescribeGrid(const GridPlan& plan);

}  // namespace screenparse

#endif  // SCREENPARSE_PATCHIFIER_H_
