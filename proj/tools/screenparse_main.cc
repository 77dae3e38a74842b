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

// screenparse: command-line driver for the corpus toolkit.
//
//   screenparse validate-snapshots SNAPSHOT_ROOT
//   screenparse condense SNAPSHOT_DIR [--pretty] [--regions]
//   screenparse build-pretrain SNAPSHOT_ROOT OUT_DIR [--seed N] ...
//   screenparse build-warmup CORPUS.txt OUT_DIR [--seed N] ...
//   screenparse build-finetune TASKS.jsonl OUT_DIR [--seed N] ...
//   screenparse patchify IMAGE.png [--budget 2048] [--mode variable] ...
//   screenparse inspect RECORD_FILE [--index 0] [--image-out x.png]
//
// Exit codes: 0 success, 1 usage, 2 data error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "screenparse/corpus_pipeline.h"
#include "screenparse/error.h"
#include "screenparse/html_condenser.h"
#include "screenparse/patchifier.h"
#include "screenparse/snapshot.h"

namespace {

constexpr int kExitData = 2;

using namespace screenparse;

struct OutputFlags {
  int shards = 1;
  std::string format = "binary";
  int workers = 1;

  void Register(CLI::App* app) {
    app->add_option("--shards", shards, "Number of output shards")
        ->check(CLI::PositiveNumber);
    app->add_option("--format", format, "Record container: binary | jsonl")
        ->check(CLI::IsMember({"binary", "jsonl"}));
    app->add_option("--workers", workers,
                    "Worker threads (output does not depend on it)")
        ->check(CLI::PositiveNumber);
  }
  OutputOptions Get() const {
    return {shards, ParseRecordFormat(format), workers};
  }
};

int ValidateSnapshots(const std::string& root, int expected_width) {
  int bad = 0;
  const auto dirs = ResolveSnapshotDirs(root);
  for (const std::string& dir : dirs) {
    std::vector<std::string> problems;
    try {
      problems = CheckSnapshot(LoadSnapshot(dir), {expected_width});
    } catch (const Error& e) {
      problems.push_back(e.what());
    }
    for (const auto& p : problems) std::cout << dir << ": " << p << "\n";
    if (!problems.empty()) ++bad;
  }
  std::cout << dirs.size() - bad << "/" << dirs.size()
            << " snapshots valid\n";
  return bad == 0 ? 0 : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"screenparse: screenshot-parsing corpus toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  std::uint64_t seed = 0;
  std::string input, out_dir;

  auto* validate = app.add_subcommand("validate-snapshots",
                                      "Check snapshot directories");
  int expected_width = kDefaultViewportWidth;
  validate->add_option("snapshots", input, "Snapshot root or page directory")
      ->required();
  validate->add_option("--expect-width", expected_width,
                       "Required viewport width (0 disables)");

  auto* condense = app.add_subcommand("condense",
                                      "Print the condensed parse of a page");
  bool pretty = false, regions = false;
  condense->add_option("snapshot", input, "Page snapshot directory")
      ->required();
  condense->add_flag("--pretty", pretty, "Indented display form");
  condense->add_flag("--regions", regions, "Also print the region map");

  PretrainConfig pretrain;
  std::string mask_color = FormatRgb(kDefaultMaskColor);
  OutputFlags pretrain_out;
  auto* build_pretrain = app.add_subcommand(
      "build-pretrain", "Screenshot-parsing records from snapshots");
  build_pretrain->add_option("snapshots", input, "Snapshot root")->required();
  build_pretrain->add_option("out", out_dir, "Output directory")->required();
  build_pretrain->add_option("--seed", seed, "Global seed");
  build_pretrain->add_option("--target-budget-chars",
                             pretrain.target_budget_chars,
                             "Character budget of the target parse")
      ->check(CLI::Range(3, 1 << 30));
  build_pretrain->add_option("--mask-fraction", pretrain.mask.fraction,
                             "Share of text characters to mask")
      ->check(CLI::Range(0.0, 0.999999));
  build_pretrain->add_option("--mean-span-chars",
                             pretrain.mask.mean_span_chars,
                             "Mean of the geometric span length")
      ->check(CLI::Range(1.0, 1e9));
  build_pretrain->add_option("--mask-color", mask_color,
                             "Mask fill, #rrggbb or r,g,b");
  build_pretrain->add_option("--budget", pretrain.sequence_budget,
                             "Patch sequence budget recorded per example")
      ->check(CLI::PositiveNumber);
  build_pretrain->add_option("--patch-size", pretrain.patch_size,
                             "Patch edge in pixels")
      ->check(CLI::PositiveNumber);
  pretrain_out.Register(build_pretrain);

  WarmupConfig warmup;
  OutputFlags warmup_out;
  auto* build_warmup = app.add_subcommand(
      "build-warmup", "Rendered text-snippet records from a text corpus");
  build_warmup->add_option("corpus", input, "UTF-8 text file")->required();
  build_warmup->add_option("out", out_dir, "Output directory")->required();
  build_warmup->add_option("--seed", seed, "Global seed");
  build_warmup->add_option("--font-dir", warmup.font_dir,
                           "Directory of .spfa font atlases "
                           "(default: $SCREENPARSE_FONT_DIR)");
  build_warmup->add_option("--snippet-bytes", warmup.max_snippet_bytes,
                           "Maximum snippet length in bytes")
      ->check(CLI::Range(std::size_t{4}, std::size_t{1} << 20));
  build_warmup->add_option("--width", warmup.width, "Image width in pixels")
      ->check(CLI::PositiveNumber);
  build_warmup->add_option("--limit", warmup.limit,
                           "Stop after this many snippets (0 = all)");
  warmup_out.Register(build_warmup);

  FinetuneConfig finetune;
  OutputFlags finetune_out;
  auto* build_finetune = app.add_subcommand(
      "build-finetune", "Task records from a JSONL task manifest");
  build_finetune->add_option("manifest", input, "Task manifest (.jsonl)")
      ->required();
  build_finetune->add_option("out", out_dir, "Output directory")->required();
  build_finetune->add_option("--seed", seed, "Global seed");
  finetune_out.Register(build_finetune);

  int budget = kDefaultSequenceBudget, patch_size = kDefaultPatchSize;
  int side = 0;
  std::string mode = "variable", resampler = "bilinear", grid_out;
  auto* patchify = app.add_subcommand("patchify",
                                      "Plan and extract patches of an image");
  patchify->add_option("image", input, "PNG image")->required();
  patchify->add_option("--budget", budget, "Sequence budget (variable mode)")
      ->check(CLI::PositiveNumber);
  patchify->add_option("--patch-size", patch_size, "Patch edge in pixels")
      ->check(CLI::PositiveNumber);
  patchify->add_option("--mode", mode, "variable | padded | stretched")
      ->check(CLI::IsMember({"variable", "padded", "stretched"}));
  patchify->add_option("--side", side,
                       "Square side for padded/stretched (default: the "
                       "largest multiple of the patch size within the "
                       "budget)");
  patchify->add_option("--resampler", resampler, "nearest | bilinear")
      ->check(CLI::IsMember({"nearest", "bilinear"}));
  patchify->add_option("--out", grid_out, "Write the binary patch grid here");

  std::size_t index = 0;
  std::string image_out;
  auto* inspect = app.add_subcommand("inspect", "Dump one record");
  inspect->add_option("records", input, "Record shard")->required();
  inspect->add_option("--index", index, "Record index within the shard");
  inspect->add_option("--image-out", image_out, "Write the record image");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*validate) return ValidateSnapshots(input, expected_width);
    if (*condense) {
      const CondensedPage page = Condense(LoadSnapshot(input));
      std::cout << (pretty ? ToPretty(page.tree) : Serialize(page.tree))
                << "\n";
      if (regions) {
        for (const auto& [id, box] : page.regions.boxes) {
          std::cout << id << "\t" << box.x << " " << box.y << " " << box.w
                    << " " << box.h << "\n";
        }
      }
      return 0;
    }
    if (*build_pretrain) {
      pretrain.seed = seed;
      pretrain.mask_color = ParseRgb(mask_color);
      pretrain.output = pretrain_out.Get();
      std::cout << BuildPretrain(input, out_dir, pretrain).dump(2) << "\n";
      return 0;
    }
    if (*build_warmup) {
      warmup.seed = seed;
      warmup.output = warmup_out.Get();
      if (warmup.font_dir.empty()) {
        if (const char* env = std::getenv("SCREENPARSE_FONT_DIR")) {
          warmup.font_dir = env;
        }
      }
      std::cout << BuildWarmup(input, out_dir, warmup).dump(2) << "\n";
      return 0;
    }
    if (*build_finetune) {
      finetune.seed = seed;
      finetune.output = finetune_out.Get();
      std::cout << BuildFinetune(input, out_dir, finetune).dump(2) << "\n";
      return 0;
    }
    if (*patchify) {
      const Image image = ReadPng(input);
      const GridMode grid_mode = ParseGridMode(mode);
      if (side == 0) {
        int per_side = 1;
        while ((per_side + 1) * (per_side + 1) <= budget) ++per_side;
        side = per_side * patch_size;
      }
      GridPlan plan;
      switch (grid_mode) {
        case GridMode::kVariable:
          plan = PlanGrid(image.width(), image.height(), patch_size, budget);
          break;
        case GridMode::kPadded:
          plan = PlanGridPadded(image.width(), image.height(), patch_size,
                                side);
          break;
        case GridMode::kStretched:
          plan = PlanGridStretched(image.width(), image.height(), patch_size,
                                   side);
          break;
      }
      const PatchGrid grid = Patchify(image, plan, ParseResampler(resampler));
      std::cout << input << ": " << image.width() << "x" << image.height()
                << " -> " << DescribeGrid(plan) << "\n";
      if (!grid_out.empty()) {
        std::ofstream out(grid_out, std::ios::binary);
        WritePatchGrid(out, grid);
        if (!out) throw Error(ErrorCode::kIo, "cannot write " + grid_out);
      }
      return 0;
    }
    if (*inspect) {
      std::cout << InspectRecord(input, index, image_out);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kInvalidArgument ? 1 : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 1;
}
