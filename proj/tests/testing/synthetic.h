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

// Random generators and reference implementations shared by the tests.
//
// The reference implementations are deliberately naive: they recompute
// everything from scratch with different algorithms than the library so
// that agreement is evidence of correctness.

#ifndef SCREENPARSE_TESTS_TESTING_SYNTHETIC_H_
#define SCREENPARSE_TESTS_TESTING_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "screenparse/error.h"
#include "screenparse/image.h"
#include "screenparse/parse_format.h"
#include "screenparse/random.h"
#include "screenparse/snapshot.h"

namespace screenparse::testgen {

std::string DataPath(const std::string& relative);

// The error code `f` throws, or nullopt if it returns normally.
template <typename F>
std::optional<ErrorCode> ThrownCode(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Text drawn from an alphabet that stresses escaping: brackets, backslash,
// '=', keyword prefixes, control characters, NBSP and multibyte letters.
std::string RandomText(Rng& rng, std::size_t max_codepoints);

ParseNode RandomParseTree(Rng& rng, int max_nodes);

// Plain prose of roughly `chars` characters.
std::string RandomProse(Rng& rng, std::size_t chars);

struct PageOptions {
  int width = kDefaultViewportWidth;
  int height = 768;
  int max_nodes = 60;
  double invisible_rate = 0.15;
  double text_rate = 0.5;
  double image_rate = 0.15;
  std::size_t max_text_chars = 80;
  bool paint_screenshot = false;  // otherwise plain white
};

// A linked snapshot whose visible boxes lie inside the canvas.
PageSnapshot RandomSnapshot(Rng& rng, const PageOptions& options);

// Writes `count` random pages named page-00000... under `root` and returns
// their directories. Page heights vary between 200 and 3000 pixels.
std::vector<std::string> WriteSyntheticCorpus(const std::string& root,
                                              int count, std::uint64_t seed);

// Rewrites the DOM into condensed form by repeated local reductions until
// nothing changes. Returns nullopt for pages without visible content.
std::optional<ParseNode> ReferenceCondense(const PageSnapshot& snapshot);

struct BruteChoice {
  std::string serialized;
  std::size_t length = 0;  // code points of `serialized`
  int depth = 0;
  std::size_t preorder = 0;
};

// Every subtree, scored by serializing it on its own.
std::vector<BruteChoice> AllSubtrees(const ParseNode& root);
std::optional<BruteChoice> BruteForceSelect(const ParseNode& root,
                                            std::size_t budget);

struct GridOracle {
  int best = 0;                             // largest feasible rows * cols
  std::set<std::pair<int, int>> optimal;   // (rows, cols) attaining it
};

// Enumerates the scales k*p/H and k*p/W, where the floored grid changes.
GridOracle BruteForceGrid(int width, int height, int patch_size, int budget);

// Number of pixels that differ between `a` and `b` outside every box in
// `allowed`.
std::size_t DiffOutside(const Image& a, const Image& b,
                        const std::vector<BBox>& allowed);
std::size_t DiffCount(const Image& a, const Image& b);

}  // namespace screenparse::testgen

#endif  // SCREENPARSE_TESTS_TESTING_SYNTHETIC_H_
