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

#include "screenparse/task_preprocessors.h"

#include <algorithm>
#include <numeric>

#include "screenparse/error.h"
#include "screenparse/random.h"

namespace screenparse {
namespace {

std::string ChoiceLabel(std::size_t index) {
  std::string label;
  std::size_t n = index + 1;
  while (n > 0) {
    --n;
    label.insert(label.begin(), static_cast<char>('a' + n % 26));
    n /= 26;
  }
  return label;
}

std::string RequireTarget(std::string target, const char* what) {
  if (target.empty()) {
    throw Error(ErrorCode::kInvalidTarget, std::string("empty ") + what);
  }
  return target;
}

}  // namespace

ExampleRecord MakeCaptionExample(std::string id,
                                 std::vector<std::uint8_t> image_png,
                                 std::string caption) {
  ExampleRecord record;
  record.id = std::move(id);
  record.task = TaskKind::kCaption;
  record.image_png = std::move(image_png);
  record.target = RequireTarget(std::move(caption), "caption");
  return record;
}

std::string EnumerateChoices(std::span<const std::string> choices) {
  std::string out;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += "(" + ChoiceLabel(i) + ") " + choices[i];
  }
  return out;
}

std::string VqaHeaderText(
    const std::string& question,
    const std::optional<std::vector<std::string>>& choices) {
  if (!choices || choices->empty()) return question;
  return question + " | " + EnumerateChoices(*choices);
}

ExampleRecord MakeVqaExample(
    std::string id, const Image& image, const std::string& question,
    const std::optional<std::vector<std::string>>& choices,
    std::string answer, const HeaderStyle& header) {
  answer = RequireTarget(std::move(answer), "answer");
  if (choices && !choices->empty() &&
      std::find(choices->begin(), choices->end(), answer) == choices->end()) {
    throw Error(ErrorCode::kInvalidAnswer,
                "answer '" + answer + "' is not among the choices");
  }
  const std::string header_text = VqaHeaderText(question, choices);
  ExampleRecord record;
  record.id = std::move(id);
  record.task = TaskKind::kVqa;
  record.image_png = EncodePng(RenderHeader(image, header_text, header));
  record.target = std::move(answer);
  record.meta["header"] = header_text;
  record.meta["source_height"] = image.height();
  if (choices) record.meta["choices"] = *choices;
  return record;
}

ExampleRecord MakeWidgetExample(std::string id, const Image& image,
                                const BBox& bbox, std::string caption,
                                const StrokeStyle& stroke) {
  if (bbox.w < 0 || bbox.h < 0) {
    throw Error(ErrorCode::kInvalidInput, "bbox with negative size");
  }
  BBox probe = bbox;
  probe.w = std::max(probe.w, 1);
  probe.h = std::max(probe.h, 1);
  if (Intersect(probe, image.bounds()).empty()) {
    throw Error(ErrorCode::kInvalidInput, "bbox lies outside the image");
  }
  caption = RequireTarget(std::move(caption), "caption");
  const DrawResult drawn = DrawBBox(image, bbox, stroke);
  ExampleRecord record;
  record.id = std::move(id);
  record.task = TaskKind::kWidget;
  record.image_png = EncodePng(drawn.image);
  record.target = std::move(caption);
  record.meta["bbox"] = {bbox.x, bbox.y, bbox.w, bbox.h};
  if (drawn.clipped) record.meta["clipped"] = true;
  return record;
}

std::vector<std::size_t> SampleNegatives(std::size_t candidate_count,
                                         std::size_t positive_index,
                                         std::size_t count,
                                         std::uint64_t seed) {
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < candidate_count; ++i) {
    if (i != positive_index) pool.push_back(i);
  }
  count = std::min(count, pool.size());
  Rng rng(seed);
  // Partial Fisher-Yates: the first `count` slots are the sample.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.Uniform(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

std::vector<ExampleRecord> MakeRefExpInstances(
    const std::string& id, const Image& image, const std::string& expression,
    std::span<const BBox> candidates, std::size_t positive_index,
    std::uint64_t seed, const StrokeStyle& stroke, const HeaderStyle& header) {
  if (candidates.empty() || positive_index >= candidates.size()) {
    throw Error(ErrorCode::kInvalidInput, "positive index out of range");
  }
  std::vector<std::size_t> order = {positive_index};
  const auto negatives = SampleNegatives(
      candidates.size(), positive_index, kRefExpNegativesPerPositive, seed);
  order.insert(order.end(), negatives.begin(), negatives.end());

  std::vector<ExampleRecord> records;
  for (std::size_t index : order) {
    const DrawResult drawn = DrawBBox(image, candidates[index], stroke);
    ExampleRecord record;
    record.id = id + "/c" + std::to_string(index);
    record.task = TaskKind::kRefExp;
    record.image_png = EncodePng(RenderHeader(drawn.image, expression, header));
    record.target = index == positive_index ? kRefExpTrue : kRefExpFalse;
    record.meta["candidate_index"] = index;
    record.meta["positive_index"] = positive_index;
    record.meta["expression"] = expression;
    if (drawn.clipped) record.meta["clipped"] = true;
    records.push_back(std::move(record));
  }
  return records;
}

std::size_t SelectRefExpCandidate(std::span<const Generation> generations) {
  if (generations.empty()) {
    throw Error(ErrorCode::kInvalidInput, "no generations to choose from");
  }
  std::optional<std::size_t> best_true;
  for (std::size_t i = 0; i < generations.size(); ++i) {
    if (generations[i].text != kRefExpTrue) continue;
    if (!best_true || generations[i].score > generations[*best_true].score) {
      best_true = i;
    }
  }
  if (best_true) return *best_true;
  std::size_t lowest = 0;
  for (std::size_t i = 1; i < generations.size(); ++i) {
    if (generations[i].score < generations[lowest].score) lowest = i;
  }
  return lowest;
}

}  // namespace screenparse
