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

#include "screenparse/record.h"

#include <gtest/gtest.h>

#include "testing/synthetic.h"

namespace screenparse {
namespace {

using testgen::ThrownCode;

ExampleRecord RandomRecord(Rng& rng, int i) {
  ExampleRecord r;
  r.id = "rec-" + std::to_string(i);
  r.task = static_cast<TaskKind>(rng.Uniform(6));
  if (rng.Uniform(3) == 0) {
    r.image_path = "images/" + std::to_string(i) + ".png";
  } else {
    r.image_png = EncodePng(Image(1 + static_cast<int>(rng.Uniform(20)),
                                  1 + static_cast<int>(rng.Uniform(20)),
                                  {static_cast<std::uint8_t>(i), 3, 4}));
  }
  r.target = testgen::RandomText(rng, 40);
  r.meta = {{"n", i}, {"s", testgen::RandomText(rng, 5)}};
  return r;
}

TEST(Base64Test, KnownVectors) {
  const std::string raw = "foobar";
  const std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
  EXPECT_EQ(Base64Encode(bytes), "Zm9vYmFy");
  EXPECT_EQ(Base64Encode(std::span(bytes).first(4)), "Zm9vYg==");
  EXPECT_EQ(Base64Encode(std::span(bytes).first(5)), "Zm9vYmE=");
  EXPECT_EQ(Base64Decode("Zm9vYmE="),
            std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 5));
  EXPECT_TRUE(ThrownCode([] { Base64Decode("Zm9v!mE="); }).has_value());
}

TEST(RecordTest, TaskNames) {
  for (int t = 0; t < 6; ++t) {
    const auto task = static_cast<TaskKind>(t);
    EXPECT_EQ(ParseTaskName(TaskName(task)), task);
  }
  EXPECT_EQ(TaskName(TaskKind::kScreenshotParsing), "screenshot_parsing");
  EXPECT_TRUE(ThrownCode([] { ParseTaskName("nope"); }).has_value());
}

TEST(RecordTest, PayloadRoundTrip) {
  Rng rng(51);
  for (int i = 0; i < 200; ++i) {
    const ExampleRecord r = RandomRecord(rng, i);
    ASSERT_EQ(DecodeRecordPayload(EncodeRecordPayload(r)), r);
    ASSERT_EQ(RecordFromJsonLine(RecordToJsonLine(r)), r);
  }
}

TEST(RecordTest, ContainersRoundTrip) {
  Rng rng(52);
  std::vector<ExampleRecord> records;
  for (int i = 0; i < 50; ++i) records.push_back(RandomRecord(rng, i));
  for (RecordFormat f : {RecordFormat::kBinary, RecordFormat::kJsonl}) {
    const auto bytes = EncodeRecords(records, f);
    EXPECT_EQ(DecodeRecords(bytes), records);
    EXPECT_EQ(EncodeRecords(records, f), bytes);
  }
  EXPECT_TRUE(DecodeRecords({}).empty());
}

TEST(RecordTest, CorruptionIsDetected) {
  Rng rng(53);
  const std::vector<ExampleRecord> records = {RandomRecord(rng, 0),
                                              RandomRecord(rng, 1)};
  const auto bytes = EncodeRecords(records, RecordFormat::kBinary);
  for (std::size_t i = 0; i < bytes.size(); i += 7) {
    auto bad = bytes;
    bad[i] ^= 0x5A;
    ASSERT_EQ(ThrownCode([&] { DecodeRecords(bad); }),
              ErrorCode::kCorruptRecord)
        << "byte " << i;
  }
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_EQ(ThrownCode([&] { DecodeRecords(truncated); }),
            ErrorCode::kCorruptRecord);
}

TEST(RecordTest, SchemaValidation) {
  ExampleRecord r;
  r.id = "p";
  r.task = TaskKind::kScreenshotParsing;
  r.image_png = EncodePng(Image(4, 4));
  r.target = "<<a> <b>>";
  EXPECT_FALSE(ThrownCode([&] { ValidateRecord(r, {}); }));
  auto expect_violation = [](ExampleRecord bad, RecordSchema schema = {}) {
    EXPECT_EQ(ThrownCode([&] { ValidateRecord(bad, schema); }),
              ErrorCode::kSchemaViolation);
  };
  ExampleRecord bad = r;
  bad.target = "<<a>";
  expect_violation(bad);
  bad.target = "<<a><b>>";  // parses, but not canonical
  expect_violation(bad);
  expect_violation(r, RecordSchema{5});
  bad = r;
  bad.id.clear();
  expect_violation(bad);
  bad = r;
  bad.image_png = {1, 2, 3};
  expect_violation(bad);
  bad = r;
  bad.image_png.clear();
  expect_violation(bad);
  bad.image_path = "x.png";
  EXPECT_FALSE(ThrownCode([&] { ValidateRecord(bad, {}); }));
  bad = r;
  bad.task = TaskKind::kRefExp;
  expect_violation(bad);
  bad.target = "true";
  EXPECT_FALSE(ThrownCode([&] { ValidateRecord(bad, {}); }));
  bad = r;
  bad.task = TaskKind::kCaption;
  bad.target = "a <caption> with \\ brackets";
  EXPECT_FALSE(ThrownCode([&] { ValidateRecord(bad, {}); }));
}

}  // namespace
}  // namespace screenparse
