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

#ifndef SCREENPARSE_TASK_PREPROCESSORS_H_
#define SCREENPARSE_TASK_PREPROCESSORS_H_

// Finetuning examples are image/text pairs: everything a task provides
// besides the image (questions, choices, expressions, target boxes) is
// painted onto the image, and the target is plain text.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "screenparse/image.h"
#include "screenparse/record.h"
#include "screenparse/render_ops.h"

namespace screenparse {

inline constexpr std::size_t kRefExpNegativesPerPositive = 5;
inline constexpr const char* kRefExpTrue = "true";
inline constexpr const char* kRefExpFalse = "false";

// Image bytes are passed through untouched. Throws Error(kInvalidTarget)
// for an empty caption.
ExampleRecord MakeCaptionExample(std::string id,
                                 std::vector<std::uint8_t> image_png,
                                 std::string caption);

// "(a) first (b) second ..."; labels continue "(aa)", "(ab)" past "(z)".
std::string EnumerateChoices(std::span<const std::string> choices);

// The question alone, or "question | (a) ... (b) ..." with choices.
std::string VqaHeaderText(const std::string& question,
                          const std::optional<std::vector<std::string>>& choices);

// Header-rendered question (and choices) above the image; target = answer.
// Throws Error(kInvalidAnswer) when choices are given and the answer is not
// one of them, Error(kInvalidTarget) for an empty answer.
ExampleRecord MakeVqaExample(
    std::string id, const Image& image, const std::string& question,
    const std::optional<std::vector<std::string>>& choices,
    std::string answer, const HeaderStyle& header = {});

// The target box drawn on the image; target = caption. Throws
// Error(kInvalidInput) for boxes with negative size or no overlap with the
// image; partially outside boxes are clipped and flagged in meta.
ExampleRecord MakeWidgetExample(std::string id, const Image& image,
                                const BBox& bbox, std::string caption,
                                const StrokeStyle& stroke = {});

// Up to `count` candidate indices other than `positive_index`, uniformly
// without replacement, in sampling order.
std::vector<std::size_t> SampleNegatives(std::size_t candidate_count,
                                         std::size_t positive_index,
                                         std::size_t count,
                                         std::uint64_t seed);

// One "true" record for the positive candidate followed by
// min(5, candidates - 1) "false" records. Each image has its candidate box
// drawn and the expression rendered as a header.
std::vector<ExampleRecord> MakeRefExpInstances(
    const std::string& id, const Image& image, const std::string& expression,
    std::span<const BBox> candidates, std::size_t positive_index,
    std::uint64_t seed, const StrokeStyle& stroke = {},
    const HeaderStyle& header = {});

struct Generation {
  std::string text;
  double score = 0.0;  // log-probability; higher is more confident
};

// Inference-time choice among RefExp candidates: the highest-scoring
// candidate that generated "true"; if none did, the lowest-scoring one.
// Ties go to the lowest index. Throws Error(kInvalidInput) when empty.
std::size_t SelectRefExpCandidate(std::span<const Generation> generations);

}  // namespace screenparse

#endif  // SCREENPARSE_TASK_PREPROCESSORS_H_
