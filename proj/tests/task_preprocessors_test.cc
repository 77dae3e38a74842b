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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "testing/synthetic.h"

namespace screenparse {
namespace {

using testgen::ThrownCode;

Image Screen() {
  Image img(160, 240, {240, 240, 240});
  img.FillRect({10, 10, 50, 50}, {0, 0, 200});
  return img;
}

std::vector<BBox> Rows(int n) {
  std::vector<BBox> rows;
  for (int i = 0; i < n; ++i) rows.push_back({8, 8 + i * 32, 140, 28});
  return rows;
}

TEST(CaptionTest, PassThrough) {
  const auto png = EncodePng(Screen());
  const ExampleRecord r = MakeCaptionExample("c", png, "a <b> \\c");
  EXPECT_EQ(r.image_png, png);
  EXPECT_EQ(r.target, "a <b> \\c");
  EXPECT_EQ(r.task, TaskKind::kCaption);
  EXPECT_EQ(DecodeRecords(EncodeRecords(std::vector{r}, RecordFormat::kBinary))
                .front(),
            r);
  EXPECT_EQ(ThrownCode([&] { MakeCaptionExample("c", png, ""); }),
            ErrorCode::kInvalidTarget);
}

TEST(VqaTest, ChoicesAreEnumeratedInOrder) {
  const std::vector<std::string> choices = {"triangle", "rectangle", "star",
                                            "hexagon"};
  EXPECT_EQ(EnumerateChoices(choices),
            "(a) triangle (b) rectangle (c) star (d) hexagon");
  const std::string header = VqaHeaderText("Which shape?", choices);
  EXPECT_EQ(header,
            "Which shape? | (a) triangle (b) rectangle (c) star (d) hexagon");
  std::size_t pos = 0;
  for (const char* label : {"(a) ", "(b) ", "(c) ", "(d) "}) {
    const std::size_t next = header.find(label, pos);
    ASSERT_NE(next, std::string::npos);
    pos = next;
  }
  const Image img = Screen();
  const ExampleRecord r =
      MakeVqaExample("v", img, "Which shape?", choices, "rectangle");
  EXPECT_EQ(r.target, "rectangle");
  EXPECT_EQ(r.meta["header"], header);
  EXPECT_GT(DecodePng(r.image_png).height(), img.height());
  EXPECT_EQ(ThrownCode([&] {
              MakeVqaExample("v", img, "Which shape?", choices, "circle");
            }),
            ErrorCode::kInvalidAnswer);
}

TEST(VqaTest, ManyChoicesGetTwoLetterLabels) {
  std::vector<std::string> many(28, "x");
  const std::string s = EnumerateChoices(many);
  EXPECT_NE(s.find("(z) x (aa) x (ab) x"), std::string::npos);
}

TEST(VqaTest, NoChoicesHeaderIsTheQuestion) {
  EXPECT_EQ(VqaHeaderText("How many lines?", std::nullopt), "How many lines?");
  const ExampleRecord r =
      MakeVqaExample("v", Screen(), "How many lines?", std::nullopt, "18");
  EXPECT_EQ(r.meta["header"], "How many lines?");
  EXPECT_EQ(ThrownCode([] {
              MakeVqaExample("v", Screen(), " ", std::nullopt, "18");
            }),
            ErrorCode::kInvalidHeader);
}

TEST(WidgetTest, DrawsOnlyTheBox) {
  const Image img = Screen();
  const BBox box{20, 40, 60, 30};
  const ExampleRecord r = MakeWidgetExample("w", img, box, "open settings");
  const Image out = DecodePng(r.image_png);
  EXPECT_EQ(testgen::DiffOutside(img, out, StrokeRects(img, box, 2)), 0u);
  EXPECT_GT(testgen::DiffCount(img, out), 0u);
  EXPECT_EQ(r.target, "open settings");
  EXPECT_EQ(ThrownCode([&] {
              MakeWidgetExample("w", img, {500, 500, 5, 5}, "x");
            }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(ThrownCode([&] {
              MakeWidgetExample("w", img, {1, 1, -5, 5}, "x");
            }),
            ErrorCode::kInvalidInput);
}

TEST(RefExpTest, CandidateCountsAndTargets) {
  const Image img = Screen();
  struct Case {
    int candidates;
    std::size_t records;
  };
  for (const Case c : {Case{7, 6}, Case{6, 6}, Case{1, 1}, Case{3, 3}}) {
    const auto rows = Rows(c.candidates);
    const auto records = MakeRefExpInstances(
        "r", img, "the second row", rows,
        static_cast<std::size_t>(c.candidates - 1), 17);
    ASSERT_EQ(records.size(), c.records);
    EXPECT_EQ(records[0].target, kRefExpTrue);
    std::set<int> seen;
    for (std::size_t i = 1; i < records.size(); ++i) {
      EXPECT_EQ(records[i].target, kRefExpFalse);
      const int idx = records[i].meta["candidate_index"];
      EXPECT_NE(idx, c.candidates - 1);
      EXPECT_TRUE(seen.insert(idx).second);
    }
    for (const auto& r : records) {
      EXPECT_FALSE(ThrownCode([&] { ValidateRecord(r, {}); }));
      EXPECT_GT(DecodePng(r.image_png).height(), img.height());
    }
  }
}

TEST(RefExpTest, DeterministicAndUniformNegatives) {
  EXPECT_EQ(SampleNegatives(10, 3, 5, 9), SampleNegatives(10, 3, 5, 9));
  std::vector<int> counts(10);
  for (std::uint64_t seed = 0; seed < 20000; ++seed) {
    for (std::size_t i : SampleNegatives(10, 3, 5, seed)) ++counts[i];
  }
  EXPECT_EQ(counts[3], 0);
  // Each of the 9 negatives is chosen with probability 5/9.
  for (int i = 0; i < 10; ++i) {
    if (i != 3) EXPECT_NEAR(counts[i] / 20000.0, 5.0 / 9.0, 0.02);
  }
}

TEST(SelectRefExpCandidateTest, Examples) {
  const std::vector<Generation> a = {{"true", -1.0}, {"false", -0.2}};
  EXPECT_EQ(SelectRefExpCandidate(a), 0u);
  const std::vector<Generation> b = {{"true", -3.0}, {"true", -1.0}};
  EXPECT_EQ(SelectRefExpCandidate(b), 1u);
  const std::vector<Generation> c = {{"false", -0.1}, {"no", -5.0}};
  EXPECT_EQ(SelectRefExpCandidate(c), 1u);
  const std::vector<Generation> ties = {{"true", -1.0}, {"true", -1.0}};
  EXPECT_EQ(SelectRefExpCandidate(ties), 0u);
  EXPECT_EQ(ThrownCode([] { SelectRefExpCandidate({}); }),
            ErrorCode::kInvalidInput);
}

TEST(SelectRefExpCandidateProperty, ShiftAndPermutationInvariant) {
  Rng rng(61);
  for (int i = 0; i < 2000; ++i) {
    std::vector<Generation> g(1 + rng.Uniform(8));
    for (auto& x : g) {
      x.text = rng.Uniform(3) == 0 ? "true" : "false";
      x.score = -static_cast<double>(rng.Uniform(1000)) / 7.0;
    }
    const std::size_t pick = SelectRefExpCandidate(g);
    auto shifted = g;
    for (auto& x : shifted) x.score += 3.25;
    ASSERT_EQ(SelectRefExpCandidate(shifted), pick);
    // Reversing the list relabels the winner unless scores tie.
    auto reversed = g;
    std::reverse(reversed.begin(), reversed.end());
    const std::size_t rpick = SelectRefExpCandidate(reversed);
    const Generation& w = g[pick];
    const Generation& rw = reversed[rpick];
    ASSERT_EQ(w.text, rw.text);
    ASSERT_EQ(w.score, rw.score);
  }
}

}  // namespace
}  // namespace screenparse
