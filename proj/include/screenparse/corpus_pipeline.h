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

#ifndef SCREENPARSE_CORPUS_PIPELINE_H_
#define SCREENPARSE_CORPUS_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "screenparse/html_condenser.h"
#include "screenparse/patchifier.h"
#include "screenparse/record.h"
#include "screenparse/render_ops.h"
#include "screenparse/snapshot.h"
#include "screenparse/span_masker.h"
#include "screenparse/subtree_selector.h"

namespace screenparse {

// Output layout shared by every builder.
struct OutputOptions {
  int shards = 1;
  RecordFormat format = RecordFormat::kBinary;
  int workers = 1;  // never affects output bytes
};

struct PretrainConfig {
  std::uint64_t seed = 0;
  std::size_t target_budget_chars = kDefaultTargetBudgetChars;
  MaskOptions mask;
  Rgb mask_color = kDefaultMaskColor;
  StrokeStyle selection_stroke = kDefaultSelectionStroke;
  int patch_size = kDefaultPatchSize;
  int sequence_budget = kDefaultSequenceBudget;
  OutputOptions output;
};

// Everything produced for one page before encoding.
struct PretrainExample {
  std::string page_id;
  std::uint64_t seed = 0;
  Selection selection;
  std::string target;  // Serialize(selection.subtree)
  MaskPlan masks;
  Image image;         // selection outline, then masks on top
  GridPlan grid;       // variable-resolution plan for `image`
};

// condense -> select subtree -> plan masks -> draw selection -> paint masks.
// Throws Error(kEmptyTree) / Error(kNoFeasibleSubtree) for pages to skip.
PretrainExample BuildPretrainExample(const PageSnapshot& snapshot,
                                     const PretrainConfig& config);

ExampleRecord ToRecord(const PretrainExample& example,
                       const PageSnapshot& snapshot);

// Runs `fn(i)` for i in [0, count) on `workers` threads. Exceptions are
// rethrown on the caller after all workers stop (first index wins).
void ParallelFor(std::size_t count, int workers,
                 const std::function<void(std::size_t)>& fn);

// Shard index of a record id: Fnv1a64(id) % shards.
int ShardOf(const std::string& id, int shards);

// Writes `<prefix>-SSSSS-of-NNNNN<ext>` shards, each sorted by record id,
// and returns the manifest entries. Records are validated against `schema`
// first; any violation aborts before a file is written.
nlohmann::json WriteShards(std::vector<ExampleRecord> records,
                           const std::string& out_dir,
                           const std::string& prefix,
                           const OutputOptions& output,
                           const RecordSchema& schema);

// Page directories under `root`, or `root` itself when it is a snapshot.
std::vector<std::string> ResolveSnapshotDirs(const std::string& root);

// Builds screenshot-parsing records for every snapshot and writes shards
// plus `manifest.json` (counts, skip reasons, config echo, content hash).
nlohmann::json BuildPretrain(const std::string& snapshot_root,
                             const std::string& out_dir,
                             const PretrainConfig& config);

struct WarmupConfig {
  std::uint64_t seed = 0;
  std::size_t max_snippet_bytes = 128;
  int width = kWarmupWidth;
  std::string font_dir;
  std::size_t limit = 0;  // 0 = the whole corpus
  OutputOptions output;
};

// Consecutive snippets of at most `max_bytes` bytes. Whitespace runs are
// collapsed; cuts fall between words when possible and never inside a
// UTF-8 sequence.
std::vector<std::string> SliceSnippets(std::string_view corpus,
                                       std::size_t max_bytes);

nlohmann::json BuildWarmup(const std::string& corpus_path,
                           const std::string& out_dir,
                           const WarmupConfig& config);

struct FinetuneConfig {
  std::uint64_t seed = 0;
  OutputOptions output;
};

// One record per manifest line (RefExp: 1 + negatives); see docs/tasks.md.
std::vector<ExampleRecord> PreprocessTaskItem(const nlohmann::json& item,
                                              const std::string& base_dir,
                                              std::uint64_t seed);

nlohmann::json BuildFinetune(const std::string& task_manifest,
                             const std::string& out_dir,
                             const FinetuneConfig& config);

// Human-readable dump of record `index`; writes its image to `image_out`
// when non-empty.
std::string InspectRecord(const std::string& record_file, std::size_t index,
                          const std::string& image_out,
                          int patch_size = kDefaultPatchSize,
                          int sequence_budget = kDefaultSequenceBudget);

std::string Hex64(std::uint64_t v);

}  // namespace screenparse

#endif  // SCREENPARSE_CORPUS_PIPELINE_H_
