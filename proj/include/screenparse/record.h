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

#ifndef SCREENPARSE_RECORD_H_
#define SCREENPARSE_RECORD_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace screenparse {

enum class TaskKind : std::uint8_t {
  kScreenshotParsing = 0,
  kWarmup = 1,
  kCaption = 2,
  kVqa = 3,
  kWidget = 4,
  kRefExp = 5,
};

std::string TaskName(TaskKind task);
TaskKind ParseTaskName(std::string_view name);

struct ExampleRecord {
  std::string id;
  TaskKind task = TaskKind::kScreenshotParsing;
  std::vector<std::uint8_t> image_png;  // embedded lossless image, or
  std::string image_path;               // a reference when image_png is empty
  std::string target;
  nlohmann::json meta = nlohmann::json::object();
};

bool operator==(const ExampleRecord& a, const ExampleRecord& b);

enum class RecordFormat { kBinary, kJsonl };

RecordFormat ParseRecordFormat(const std::string& name);
std::string RecordFormatName(RecordFormat format);
std::string RecordFileExtension(RecordFormat format);

// Binary framing, little-endian, per record:
//   u64 length | u32 crc32(length bytes) | payload | u32 crc32(payload)
// payload:
//   "SPR1" u8 task u8 image_kind(0 embedded, 1 path) u16 reserved=0
//   u32 len id | u32 len target | u64 len image (PNG bytes or path)
//   u32 len meta (compact JSON, keys sorted)
std::vector<std::uint8_t> EncodeRecordPayload(const ExampleRecord& record);
ExampleRecord DecodeRecordPayload(std::span<const std::uint8_t> payload);
void AppendFramedRecord(const ExampleRecord& record,
                        std::vector<std::uint8_t>& out);

// JSON line: {"id", "task", "target", "meta", and "image_png_base64" or
// "image_path"}.
std::string RecordToJsonLine(const ExampleRecord& record);
ExampleRecord RecordFromJsonLine(std::string_view line);

// Serializes records back to back in `format`.
std::vector<std::uint8_t> EncodeRecords(std::span<const ExampleRecord> records,
                                        RecordFormat format);
// Reads either format; binary and JSONL are told apart by the first byte.
std::vector<ExampleRecord> DecodeRecords(std::span<const std::uint8_t> bytes);
std::vector<ExampleRecord> ReadRecordFile(const std::string& path);

std::string Base64Encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> Base64Decode(std::string_view text);

struct RecordSchema {
  std::size_t target_budget_chars = 1024;
};

// Throws Error(kSchemaViolation) describing the first problem: empty id or
// target, missing or non-PNG image, a ScreenshotParsing target that is not
// canonical parse-format text within the budget, a RefExp target other than
// "true"/"false".
void ValidateRecord(const ExampleRecord& record, const RecordSchema& schema);

}  // namespace screenparse

#endif  // SCREENPARSE_RECORD_H_
