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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Tolerances are fixed constants below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "screenparse/corpus_pipeline.h"
#include "screenparse/task_preprocessors.h"
#include "screenparse/utf8.h"
#include "testing/synthetic.h"

namespace screenparse {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr char kFigure3Parse[] =
    "<<<Python> <img_src=py_logo img_alt=Python>> "
    "<<C++> <img_src=cpp_logo img_alt=C++>> "
    "<<Java> <img_src=java_logo img_alt=Java>> <Submit>>";

constexpr double kGoldenSeconds = 1.0;
constexpr int kRoundTripTrees = 10000;
constexpr int kSelectorTrees = 1000;
constexpr int kSelectorMaxNodes = 50;
constexpr double kSelectorSeconds = 30.0;
constexpr int kBudgetPages = 1000;
constexpr std::size_t kTargetBudget = 1024;
constexpr int kSequenceBudget = 2048;
constexpr int kMaskPages = 10000;
constexpr std::size_t kMaskMinText = 200;
constexpr double kMaskLo = 0.45, kMaskHi = 0.60;
constexpr double kMedianLo = 0.49, kMedianHi = 0.55;
constexpr std::size_t kWarmupRecords = 1000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void Fail(const std::string& why) {
    if (outcome_.pass) outcome_.detail = why;
    outcome_.pass = false;
  }
  void Expect(bool ok, const std::string& why) {
    if (!ok) Fail(why);
  }
  void Note(const std::string& note) {
    if (outcome_.pass) outcome_.detail = note;
  }
  Outcome Take() { return outcome_; }

 private:
  Outcome outcome_;
};

std::string Scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() /
                       ("screenparse_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::string ReadBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

Outcome Figure3Golden() {
  Checker c;
  const auto start = std::chrono::steady_clock::now();
  const CondensedPage page =
      Condense(LoadSnapshot(testgen::DataPath("snapshots/figure3")));
  const std::string got = Serialize(page.tree);
  const double secs = SecondsSince(start);
  c.Expect(utf8::CollapseWhitespace(got) == kFigure3Parse, "got " + got);
  c.Expect(secs < kGoldenSeconds, "took " + std::to_string(secs) + "s");
  c.Note(std::to_string(secs * 1000).substr(0, 5) + " ms");
  return c.Take();
}

Outcome RoundTrip() {
  Checker c;
  Rng rng(101);
  for (int i = 0; i < kRoundTripTrees; ++i) {
    const ParseNode tree = testgen::RandomParseTree(rng, 60);
    const std::string s = Serialize(tree);
    try {
      if (!(Deserialize(s) == tree)) {
        c.Fail("tree " + std::to_string(i) + " differs: " + s);
        break;
      }
    } catch (const Error& e) {
      c.Fail("tree " + std::to_string(i) + ": " + e.what());
      break;
    }
  }
  c.Note(std::to_string(kRoundTripTrees) + " trees");
  return c.Take();
}

Outcome SelectorVsBruteForce() {
  Checker c;
  Rng rng(102);
  const auto start = std::chrono::steady_clock::now();
  int compared = 0;
  for (int i = 0; i < kSelectorTrees && c.Take().pass; ++i) {
    const ParseNode tree = testgen::RandomParseTree(rng, kSelectorMaxNodes);
    for (std::size_t budget : {64u, 256u, 1024u}) {
      const auto expected = testgen::BruteForceSelect(tree, budget);
      std::optional<Selection> got;
      const auto code = testgen::ThrownCode(
          [&] { got = SelectSubtree(tree, RegionMap{}, budget); });
      if (!expected) {
        c.Expect(code == ErrorCode::kNoFeasibleSubtree,
                 "tree " + std::to_string(i) + ": expected no feasible subtree");
        continue;
      }
      if (!got) {
        c.Fail("tree " + std::to_string(i) + ": selector threw");
        break;
      }
      ++compared;
      c.Expect(Serialize(got->subtree) == expected->serialized &&
                   got->preorder_index == expected->preorder,
               "tree " + std::to_string(i) + " budget " +
                   std::to_string(budget) + " disagrees");
    }
  }
  const double secs = SecondsSince(start);
  c.Expect(secs < kSelectorSeconds, "took " + std::to_string(secs) + "s");
  c.Note(std::to_string(compared) + " comparisons in " +
         std::to_string(secs).substr(0, 5) + " s");
  return c.Take();
}

Outcome GridMaximality() {
  Checker c;
  const GridPlan a = PlanGrid(1024, 1024, 16, 2048);
  c.Expect(a.rows == 45 && a.cols == 45 && a.patch_count() == 2025,
           "(1024,1024) anchor: " + DescribeGrid(a));
  const GridPlan b = PlanGrid(2048, 1024, 16, 2048);
  c.Expect(b.rows == 32 && b.cols == 64, "(2048,1024) anchor: " +
                                             DescribeGrid(b));
  // 19 x 19 lattice over [16, 512]^2 for each budget: 1,083 cases.
  int cases = 0;
  for (int budget : {16, 64, 256}) {
    for (int i = 0; i <= 18; ++i) {
      for (int j = 0; j <= 18; ++j) {
        const int w = 16 + (i * 496 + 9) / 18;
        const int h = 16 + (j * 496 + 9) / 18;
        const GridPlan plan = PlanGrid(w, h, 16, budget);
        const auto oracle = testgen::BruteForceGrid(w, h, 16, budget);
        ++cases;
        c.Expect(plan.patch_count() == oracle.best &&
                     oracle.optimal.count({plan.rows, plan.cols}) == 1,
                 "(" + std::to_string(w) + "," + std::to_string(h) + "," +
                     std::to_string(budget) + "): " + DescribeGrid(plan) +
                     " vs best " + std::to_string(oracle.best));
      }
    }
  }
  c.Note(std::to_string(cases) + " lattice cases + 2 anchors");
  return c.Take();
}

Outcome BudgetCompliance() {
  Checker c;
  Rng rng(103);
  int built = 0, skipped = 0;
  std::size_t longest = 0;
  int most_patches = 0;
  PretrainConfig config;
  while (built < kBudgetPages) {
    testgen::PageOptions options;
    options.height = static_cast<int>(rng.UniformInRange(100, 8000));
    options.width = rng.Uniform(4) == 0
                        ? static_cast<int>(rng.UniformInRange(320, 2560))
                        : kDefaultViewportWidth;
    options.max_nodes = static_cast<int>(rng.UniformInRange(5, 300));
    options.max_text_chars = 400;
    PageSnapshot page = testgen::RandomSnapshot(rng, options);
    page.page_id = "budget-" + std::to_string(built + skipped);
    std::optional<PretrainExample> ex;
    const auto code =
        testgen::ThrownCode([&] { ex = BuildPretrainExample(page, config); });
    if (code) {
      ++skipped;
      continue;
    }
    ++built;
    const std::size_t chars = utf8::Length(ex->target);
    longest = std::max(longest, chars);
    most_patches = std::max(most_patches, ex->grid.patch_count());
    c.Expect(chars <= kTargetBudget && chars == CharLength(ex->selection.subtree),
             page.page_id + ": target of " + std::to_string(chars) + " chars");
    c.Expect(ex->grid.patch_count() <= kSequenceBudget &&
                 ex->grid.patch_size == 16,
             page.page_id + ": " + DescribeGrid(ex->grid));
  }
  c.Note("longest target " + std::to_string(longest) + " chars, most patches " +
         std::to_string(most_patches) + ", " + std::to_string(skipped) +
         " pages skipped as empty or infeasible");
  return c.Take();
}

Outcome MaskFraction() {
  Checker c;
  Rng rng(104);
  std::vector<double> fractions;
  double lo = 1, hi = 0;
  const MaskOptions options;
  while (fractions.size() < static_cast<std::size_t>(kMaskPages)) {
    testgen::PageOptions page_options;
    page_options.height = 64;
    page_options.max_nodes = static_cast<int>(rng.UniformInRange(3, 80));
    page_options.text_rate = 0.7;
    page_options.max_text_chars = 300;
    PageSnapshot page = testgen::RandomSnapshot(rng, page_options);
    const std::string id = "mask-" + std::to_string(fractions.size());
    std::optional<Selection> selection;
    std::optional<CondensedPage> condensed;
    if (testgen::ThrownCode([&] {
          condensed = Condense(page);
          selection = SelectSubtree(condensed->tree, condensed->regions, 1024);
        })) {
      continue;
    }
    const MaskPlan plan = PlanMasks(selection->subtree, condensed->regions,
                                    options, DerivePageSeed(9, id));
    if (plan.total_chars < kMaskMinText) continue;
    fractions.push_back(plan.masked_fraction);
    lo = std::min(lo, plan.masked_fraction);
    hi = std::max(hi, plan.masked_fraction);
    c.Expect(plan.masked_fraction >= kMaskLo && plan.masked_fraction <= kMaskHi,
             id + ": masked fraction " + std::to_string(plan.masked_fraction));
  }
  std::sort(fractions.begin(), fractions.end());
  const std::size_t n = fractions.size();
  const double median = n % 2 ? fractions[n / 2]
                              : (fractions[n / 2 - 1] + fractions[n / 2]) / 2;
  c.Expect(median >= kMedianLo && median <= kMedianHi,
           "median " + std::to_string(median));
  char note[128];
  std::snprintf(note, sizeof(note), "%zu pages, range [%.3f, %.3f], median %.4f",
                n, lo, hi, median);
  c.Note(note);
  return c.Take();
}

Outcome Warmup() {
  Checker c;
  const std::string corpus_path = testgen::DataPath("warmup_corpus.txt");
  const std::string out = Scratch("warmup");
  WarmupConfig config;
  config.limit = kWarmupRecords;
  config.output.workers = 4;
  const json m = BuildWarmup(corpus_path, out, config);
  std::vector<ExampleRecord> records;
  for (const json& shard : m["shards"]) {
    for (auto& r : ReadRecordFile(out + "/" + shard["file"].get<std::string>())) {
      records.push_back(std::move(r));
    }
  }
  c.Expect(records.size() == kWarmupRecords,
           std::to_string(records.size()) + " records");
  const std::string corpus = utf8::CollapseWhitespace(ReadBytes(corpus_path));
  std::size_t pos = 0;
  std::size_t max_bytes = 0;
  for (const ExampleRecord& r : records) {
    const Image img = DecodePng(r.image_png);
    c.Expect(img.width() == 640, r.id + " width " + std::to_string(img.width()));
    c.Expect(r.target.size() <= 128, r.id + " snippet of " +
                                         std::to_string(r.target.size()) +
                                         " bytes");
    max_bytes = std::max(max_bytes, r.target.size());
    // The target is the next piece of the source text, verbatim.
    const std::size_t at = corpus.find(r.target, pos);
    c.Expect(at != std::string::npos && at <= pos + 1,
             r.id + " target is not the next snippet");
    if (at != std::string::npos) pos = at + r.target.size();
  }
  c.Note(std::to_string(records.size()) + " records, longest snippet " +
         std::to_string(max_bytes) + " bytes");
  return c.Take();
}

Outcome RefExp() {
  Checker c;
  Rng rng(105);
  const Image img(200, 400, {230, 230, 230});
  int items = 0;
  for (int n = 6; n <= 15; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<BBox> boxes;
      for (int k = 0; k < n; ++k) boxes.push_back({5, 5 + 25 * k, 150, 20});
      const std::size_t positive = rng.Uniform(static_cast<std::uint64_t>(n));
      const auto records = MakeRefExpInstances(
          "item", img, "the row", boxes, positive, rng.Next());
      ++items;
      const auto trues = std::count_if(
          records.begin(), records.end(),
          [](const ExampleRecord& r) { return r.target == "true"; });
      const auto falses = std::count_if(
          records.begin(), records.end(),
          [](const ExampleRecord& r) { return r.target == "false"; });
      c.Expect(records.size() == 6 && trues == 1 && falses == 5,
               std::to_string(n) + " candidates gave " +
                   std::to_string(trues) + " true + " +
                   std::to_string(falses) + " false");
    }
  }
  const std::vector<Generation> a = {{"true", -1.0}, {"false", -0.2}};
  const std::vector<Generation> b = {{"true", -3.0}, {"true", -1.0}};
  const std::vector<Generation> d = {{"false", -0.1}, {"no", -5.0}};
  c.Expect(SelectRefExpCandidate(a) == 0, "case 1");
  c.Expect(SelectRefExpCandidate(b) == 1, "case 2");
  c.Expect(SelectRefExpCandidate(d) == 1, "case 3");
  c.Note(std::to_string(items) + " items, 3 selection cases");
  return c.Take();
}

Outcome Determinism() {
  Checker c;
  const std::string in = Scratch("det_in");
  testgen::WriteSyntheticCorpus(in, 60, 106);
  fs::copy(testgen::DataPath("snapshots/figure3"), in + "/figure3");
  PretrainConfig config;
  config.seed = 20260101;
  config.output.shards = 4;
  std::vector<std::string> outs;
  for (int workers : {1, 1, 3, 8}) {
    config.output.workers = workers;
    outs.push_back(Scratch("det_out_" + std::to_string(outs.size())));
    BuildPretrain(in, outs.back(), config);
  }
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(outs[0])) {
    const std::string name = entry.path().filename().string();
    const std::string ref = ReadBytes(entry.path().string());
    ++files;
    for (std::size_t k = 1; k < outs.size(); ++k) {
      c.Expect(ReadBytes(outs[k] + "/" + name) == ref,
               name + " differs in run " + std::to_string(k));
    }
  }
  c.Expect(files == 5, std::to_string(files) + " output files");
  c.Note(std::to_string(files) + " files identical across 2 runs and 1/3/8 "
         "workers");
  return c.Take();
}

}  // namespace
}  // namespace screenparse

int main() {
  using namespace screenparse;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria =
      {
          {"figure3-golden", Figure3Golden},
          {"parse-roundtrip-10k", RoundTrip},
          {"select-subtree-vs-brute-force", SelectorVsBruteForce},
          {"grid-maximality", GridMaximality},
          {"budget-compliance", BudgetCompliance},
          {"mask-fraction", MaskFraction},
          {"warmup-corpus", Warmup},
          {"refexp-negatives-and-selection", RefExp},
          {"pipeline-determinism", Determinism},
      };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += !outcome.pass;
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << "  ("
              << outcome.detail << ")" << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size()
            << " acceptance criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
