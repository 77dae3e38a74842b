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

#include "screenparse/corpus_pipeline.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "screenparse/error.h"
#include "screenparse/random.h"
#include "screenparse/task_preprocessors.h"
#include "screenparse/utf8.h"

namespace screenparse {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json GridJson(const GridPlan& plan) {
  return {{"rows", plan.rows},
          {"cols", plan.cols},
          {"patch_size", plan.patch_size},
          {"budget", plan.budget}};
}

json OutputJson(const OutputOptions& output) {
  return {{"shards", output.shards},
          {"format", RecordFormatName(output.format)}};
}

void WriteManifest(const std::string& out_dir, const json& manifest) {
  std::ofstream out(fs::path(out_dir) / "manifest.json");
  out << manifest.dump(2) << "\n";
  if (!out) throw Error(ErrorCode::kIo, "cannot write manifest in " + out_dir);
}

std::string ReadText(const std::string& path) {
  const auto bytes = ReadFileBytes(path);
  return {bytes.begin(), bytes.end()};
}

}  // namespace

std::string Hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

PretrainExample BuildPretrainExample(const PageSnapshot& snapshot,
                                     const PretrainConfig& config) {
  PretrainExample example;
  example.page_id = snapshot.page_id;
  example.seed = DerivePageSeed(config.seed, snapshot.page_id);
  const CondensedPage page = Condense(snapshot);
  example.selection =
      SelectSubtree(page.tree, page.regions, config.target_budget_chars);
  example.target = Serialize(example.selection.subtree);
  example.masks = PlanMasks(example.selection.subtree, page.regions,
                            config.mask, example.seed);
  Image image = snapshot.screenshot;
  if (!example.selection.bbox.empty()) {
    image = DrawSelection(image, example.selection.bbox,
                          config.selection_stroke);
  }
  example.image = ApplyMasks(image, example.masks, config.mask_color);
  example.grid = PlanGrid(example.image.width(), example.image.height(),
                          config.patch_size, config.sequence_budget);
  return example;
}

ExampleRecord ToRecord(const PretrainExample& example,
                       const PageSnapshot& snapshot) {
  ExampleRecord record;
  record.id = example.page_id;
  record.task = TaskKind::kScreenshotParsing;
  record.image_png = EncodePng(example.image);
  record.target = example.target;
  const BBox& box = example.selection.bbox;
  record.meta = {
      {"seed", Hex64(example.seed)},
      {"masked_fraction", example.masks.masked_fraction},
      {"masked_chars", example.masks.masked_chars},
      {"text_chars", example.masks.total_chars},
      {"mask_spans", example.masks.spans.size()},
      {"target_chars", example.selection.char_length},
      {"selection_bbox", {box.x, box.y, box.w, box.h}},
      {"grid", GridJson(example.grid)},
      {"url_hash", Hex64(Fnv1a64(snapshot.manifest.url))},
  };
  return record;
}

void ParallelFor(std::size_t count, int workers,
                 const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < n; ++t) threads.emplace_back(work);
    for (auto& thread : threads) thread.join();
  }
  for (auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

int ShardOf(const std::string& id, int shards) {
  return static_cast<int>(Fnv1a64(id) % static_cast<std::uint64_t>(shards));
}

json WriteShards(std::vector<ExampleRecord> records,
                 const std::string& out_dir, const std::string& prefix,
                 const OutputOptions& output, const RecordSchema& schema) {
  if (output.shards < 1) {
    throw Error(ErrorCode::kInvalidArgument, "shard count must be >= 1");
  }
  for (const ExampleRecord& record : records) ValidateRecord(record, schema);
  std::vector<std::vector<ExampleRecord>> shards(
      static_cast<std::size_t>(output.shards));
  for (ExampleRecord& record : records) {
    shards[ShardOf(record.id, output.shards)].push_back(std::move(record));
  }
  fs::create_directories(out_dir);
  json entries = json::array();
  std::uint64_t content_hash = Fnv1a64("");
  for (int s = 0; s < output.shards; ++s) {
    auto& shard = shards[s];
    std::sort(shard.begin(), shard.end(),
              [](const ExampleRecord& a, const ExampleRecord& b) {
                return a.id < b.id;
              });
    for (std::size_t i = 1; i < shard.size(); ++i) {
      if (shard[i].id == shard[i - 1].id) {
        throw Error(ErrorCode::kSchemaViolation,
                    "duplicate record id '" + shard[i].id + "'");
      }
    }
    char name[64];
    std::snprintf(name, sizeof(name), "-%05d-of-%05d", s, output.shards);
    const std::string file =
        prefix + name + RecordFileExtension(output.format);
    const auto bytes = EncodeRecords(shard, output.format);
    WriteFileBytes((fs::path(out_dir) / file).string(), bytes);
    const std::uint64_t hash = Fnv1a64(
        {reinterpret_cast<const char*>(bytes.data()), bytes.size()});
    content_hash = Fnv1a64(Hex64(hash), content_hash);
    entries.push_back(
        {{"file", file}, {"records", shard.size()}, {"fnv1a64", Hex64(hash)}});
  }
  return {{"shards", entries}, {"content_hash", Hex64(content_hash)}};
}

std::vector<std::string> ResolveSnapshotDirs(const std::string& root) {
  if (fs::exists(fs::path(root) / "manifest.json")) return {root};
  return ListSnapshotDirs(root);
}

json BuildPretrain(const std::string& snapshot_root,
                   const std::string& out_dir, const PretrainConfig& config) {
  const auto dirs = ResolveSnapshotDirs(snapshot_root);
  std::vector<std::optional<ExampleRecord>> results(dirs.size());
  std::vector<std::string> skip_reasons(dirs.size());
  ParallelFor(dirs.size(), config.output.workers, [&](std::size_t i) {
    try {
      const PageSnapshot snapshot = LoadSnapshot(dirs[i]);
      results[i] = ToRecord(BuildPretrainExample(snapshot, config), snapshot);
    } catch (const Error& e) {
      switch (e.code()) {
        case ErrorCode::kEmptyTree:
        case ErrorCode::kNoFeasibleSubtree:
        case ErrorCode::kInvalidSnapshot:
          skip_reasons[i] = std::string(ErrorCodeName(e.code()));
          break;
        default:
          throw;
      }
    }
  });

  std::vector<ExampleRecord> records;
  std::map<std::string, int> skipped;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (results[i]) {
      records.push_back(std::move(*results[i]));
    } else {
      ++skipped[skip_reasons[i]];
    }
  }
  const std::size_t record_count = records.size();
  json manifest = {
      {"kind", "pretrain"},
      {"pages", dirs.size()},
      {"records", record_count},
      {"skipped", skipped},
      {"config",
       {{"seed", config.seed},
        {"target_budget_chars", config.target_budget_chars},
        {"mask_fraction", config.mask.fraction},
        {"mean_span_chars", config.mask.mean_span_chars},
        {"mask_color", FormatRgb(config.mask_color)},
        {"patch_size", config.patch_size},
        {"sequence_budget", config.sequence_budget},
        {"output", OutputJson(config.output)}}},
  };
  manifest.update(WriteShards(std::move(records), out_dir, "pretrain",
                              config.output,
                              {config.target_budget_chars}));
  WriteManifest(out_dir, manifest);
  return manifest;
}

std::vector<std::string> SliceSnippets(std::string_view corpus,
                                       std::size_t max_bytes) {
  if (max_bytes < 4) {
    throw Error(ErrorCode::kInvalidArgument, "snippets need at least 4 bytes");
  }
  const std::string text = utf8::CollapseWhitespace(corpus);
  std::vector<std::string> snippets;
  std::string_view rest = text;
  while (!rest.empty()) {
    if (rest.size() <= max_bytes) {
      snippets.emplace_back(rest);
      break;
    }
    // The space right after the limit also counts as a word boundary.
    std::size_t cut = rest.substr(0, max_bytes + 1).rfind(' ');
    std::size_t next = cut + 1;
    if (cut == std::string_view::npos || cut == 0) {
      cut = utf8::PrefixBoundary(rest, max_bytes);
      next = cut;
    }
    snippets.emplace_back(rest.substr(0, cut));
    rest.remove_prefix(next);
    while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  }
  return snippets;
}

json BuildWarmup(const std::string& corpus_path, const std::string& out_dir,
                 const WarmupConfig& config) {
  const FontSet fonts = FontSet::FromDirectory(config.font_dir);
  auto snippets =
      SliceSnippets(ReadText(corpus_path), config.max_snippet_bytes);
  if (config.limit > 0 && snippets.size() > config.limit) {
    snippets.resize(config.limit);
  }
  std::vector<ExampleRecord> records(snippets.size());
  ParallelFor(snippets.size(), config.output.workers, [&](std::size_t i) {
    char id[32];
    std::snprintf(id, sizeof(id), "warmup-%08zu", i);
    const std::uint64_t seed = DerivePageSeed(config.seed, id);
    const GlyphSource style = SampleWarmupStyle(seed, fonts);
    const RenderedText rendered =
        RenderTextImage(snippets[i], style, config.width, fonts);
    ExampleRecord& record = records[i];
    record.id = id;
    record.task = TaskKind::kWarmup;
    record.image_png = EncodePng(rendered.image);
    record.target = snippets[i];
    record.meta = {{"seed", Hex64(seed)},
                   {"font", style.font_id},
                   {"size_pt", style.size_pt},
                   {"color", FormatRgb(style.color)},
                   {"lines", rendered.line_count},
                   {"missing_glyphs", rendered.missing_glyphs}};
  });
  const std::size_t record_count = records.size();
  std::vector<std::string> font_ids;
  for (std::size_t i = 0; i < fonts.size(); ++i) {
    font_ids.push_back(fonts.at(i).id());
  }
  json manifest = {
      {"kind", "warmup"},
      {"records", record_count},
      {"config",
       {{"seed", config.seed},
        {"max_snippet_bytes", config.max_snippet_bytes},
        {"width", config.width},
        {"fonts", font_ids},
        {"limit", config.limit},
        {"output", OutputJson(config.output)}}},
  };
  manifest.update(
      WriteShards(std::move(records), out_dir, "warmup", config.output, {}));
  WriteManifest(out_dir, manifest);
  return manifest;
}

std::vector<ExampleRecord> PreprocessTaskItem(const json& item,
                                              const std::string& base_dir,
                                              std::uint64_t seed) {
  try {
    const std::string task = item.at("task").get<std::string>();
    const std::string id = item.at("id").get<std::string>();
    const std::string image_path =
        (fs::path(base_dir) / item.at("image").get<std::string>()).string();
    auto bbox_of = [](const json& j) {
      if (!j.is_array() || j.size() != 4) {
        throw Error(ErrorCode::kInvalidInput, "bbox must be [x, y, w, h]");
      }
      return BBox{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(),
                  j[3].get<int>()};
    };
    if (task == "caption") {
      auto bytes = ReadFileBytes(image_path);
      DecodePng(bytes);  // reject unreadable images up front
      return {MakeCaptionExample(id, std::move(bytes),
                                 item.at("caption").get<std::string>())};
    }
    const Image image = ReadPng(image_path);
    if (task == "vqa") {
      std::optional<std::vector<std::string>> choices;
      if (item.contains("choices")) {
        choices = item["choices"].get<std::vector<std::string>>();
      }
      return {MakeVqaExample(id, image, item.at("question").get<std::string>(),
                             choices, item.at("answer").get<std::string>())};
    }
    if (task == "widget") {
      return {MakeWidgetExample(id, image, bbox_of(item.at("bbox")),
                                item.at("caption").get<std::string>())};
    }
    if (task == "refexp") {
      std::vector<BBox> candidates;
      for (const json& c : item.at("candidates")) {
        candidates.push_back(bbox_of(c));
      }
      return MakeRefExpInstances(id, image,
                                 item.at("expression").get<std::string>(),
                                 candidates,
                                 item.at("positive_index").get<std::size_t>(),
                                 DerivePageSeed(seed, id));
    }
    throw Error(ErrorCode::kInvalidInput, "unknown task '" + task + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput,
                std::string("bad task item: ") + e.what());
  }
}

json BuildFinetune(const std::string& task_manifest, const std::string& out_dir,
                   const FinetuneConfig& config) {
  std::ifstream in(task_manifest);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + task_manifest);
  const std::string base_dir = fs::path(task_manifest).parent_path().string();
  std::vector<json> items;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      items.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kInvalidInput,
                  "bad task manifest line " + std::to_string(items.size() + 1) +
                      ": " + e.what());
    }
  }
  std::vector<std::vector<ExampleRecord>> produced(items.size());
  std::vector<std::string> skip_reasons(items.size());
  ParallelFor(items.size(), config.output.workers, [&](std::size_t i) {
    try {
      produced[i] = PreprocessTaskItem(items[i], base_dir, config.seed);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kIo) throw;
      skip_reasons[i] = std::string(ErrorCodeName(e.code()));
    }
  });
  std::vector<ExampleRecord> records;
  std::map<std::string, int> inputs, outputs, skipped;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string task = items[i].value("task", "unknown");
    ++inputs[task];
    if (!skip_reasons[i].empty()) {
      ++skipped[skip_reasons[i]];
      continue;
    }
    outputs[task] += static_cast<int>(produced[i].size());
    for (auto& record : produced[i]) records.push_back(std::move(record));
  }
  const std::size_t record_count = records.size();
  json manifest = {
      {"kind", "finetune"},
      {"items", items.size()},
      {"records", record_count},
      {"inputs_by_task", inputs},
      {"records_by_task", outputs},
      {"skipped", skipped},
      {"config",
       {{"seed", config.seed}, {"output", OutputJson(config.output)}}},
  };
  manifest.update(
      WriteShards(std::move(records), out_dir, "finetune", config.output, {}));
  WriteManifest(out_dir, manifest);
  return manifest;
}

std::string InspectRecord(const std::string& record_file, std::size_t index,
                          const std::string& image_out, int patch_size,
                          int sequence_budget) {
  const auto records = ReadRecordFile(record_file);
  if (index >= records.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "index " + std::to_string(index) + " out of range (" +
                    std::to_string(records.size()) + " records)");
  }
  const ExampleRecord& record = records[index];
  std::ostringstream out;
  out << "id:     " << record.id << "\n"
      << "task:   " << TaskName(record.task) << "\n"
      << "target: " << record.target << "\n";
  if (record.task == TaskKind::kScreenshotParsing) {
    out << "parse:\n" << ToPretty(Deserialize(record.target)) << "\n";
  }
  if (!record.image_png.empty()) {
    const Image image = DecodePng(record.image_png);
    out << "image:  " << image.width() << "x" << image.height() << " ("
        << record.image_png.size() << " PNG bytes)\n"
        << "grid:   "
        << DescribeGrid(PlanGrid(image.width(), image.height(), patch_size,
                                 sequence_budget))
        << "\n";
    if (!image_out.empty()) {
      WriteFileBytes(image_out, record.image_png);
      out << "wrote:  " << image_out << "\n";
    }
  } else {
    out << "image:  " << record.image_path << "\n";
  }
  out << "meta:   " << record.meta.dump() << "\n";
  return out.str();
}

}  // namespace screenparse
