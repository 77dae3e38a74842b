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

#include <zlib.h>

#include <cstring>

#include "screenparse/error.h"
#include "screenparse/image.h"
#include "screenparse/parse_format.h"

namespace screenparse {
namespace {

using nlohmann::json;

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G',
                                           '\r', '\n', 0x1A, '\n'};

void PutLe(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) {
    out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
  }
}

std::uint32_t Crc32(std::span<const std::uint8_t> bytes) {
  return static_cast<std::uint32_t>(
      crc32(0L, bytes.data(), static_cast<uInt>(bytes.size())));
}

class Cursor {
 public:
  explicit Cursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t Le(int n) {
    Need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = n - 1; i >= 0; --i) v = (v << 8) | bytes_[pos_ + i];
    pos_ += static_cast<std::size_t>(n);
    return v;
  }
  std::span<const std::uint8_t> Take(std::uint64_t n) {
    Need(n);
    auto out = bytes_.subspan(pos_, static_cast<std::size_t>(n));
    pos_ += static_cast<std::size_t>(n);
    return out;
  }
  std::string String(std::uint64_t n) {
    const auto b = Take(n);
    return {reinterpret_cast<const char*>(b.data()), b.size()};
  }
  bool done() const { return pos_ == bytes_.size(); }
  std::size_t pos() const { return pos_; }

 private:
  void Need(std::uint64_t n) const {
    if (n > bytes_.size() - pos_) {
      throw Error(ErrorCode::kCorruptRecord, "truncated record");
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

bool HasPngSignature(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0;
}

}  // namespace

std::string TaskName(TaskKind task) {
  switch (task) {
    case TaskKind::kScreenshotParsing: return "screenshot_parsing";
    case TaskKind::kWarmup: return "warmup";
    case TaskKind::kCaption: return "caption";
    case TaskKind::kVqa: return "vqa";
    case TaskKind::kWidget: return "widget";
    case TaskKind::kRefExp: return "refexp";
  }
  return "unknown";
}

TaskKind ParseTaskName(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(TaskKind::kRefExp); ++i) {
    const auto task = static_cast<TaskKind>(i);
    if (TaskName(task) == name) return task;
  }
  throw Error(ErrorCode::kInvalidInput,
              "unknown task '" + std::string(name) + "'");
}

bool operator==(const ExampleRecord& a, const ExampleRecord& b) {
  return a.id == b.id && a.task == b.task && a.image_png == b.image_png &&
         a.image_path == b.image_path && a.target == b.target &&
         a.meta == b.meta;
}

RecordFormat ParseRecordFormat(const std::string& name) {
  if (name == "binary") return RecordFormat::kBinary;
  if (name == "jsonl") return RecordFormat::kJsonl;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown record format '" + name + "'");
}

std::string RecordFormatName(RecordFormat format) {
  return format == RecordFormat::kBinary ? "binary" : "jsonl";
}

std::string RecordFileExtension(RecordFormat format) {
  return format == RecordFormat::kBinary ? ".rec" : ".jsonl";
}

std::vector<std::uint8_t> EncodeRecordPayload(const ExampleRecord& record) {
  std::vector<std::uint8_t> out = {'S', 'P', 'R', '1'};
  const bool embedded = !record.image_png.empty();
  out.push_back(static_cast<std::uint8_t>(record.task));
  out.push_back(embedded ? 0 : 1);
  PutLe(out, 0, 2);
  PutLe(out, record.id.size(), 4);
  out.insert(out.end(), record.id.begin(), record.id.end());
  PutLe(out, record.target.size(), 4);
  out.insert(out.end(), record.target.begin(), record.target.end());
  if (embedded) {
    PutLe(out, record.image_png.size(), 8);
    out.insert(out.end(), record.image_png.begin(), record.image_png.end());
  } else {
    PutLe(out, record.image_path.size(), 8);
    out.insert(out.end(), record.image_path.begin(), record.image_path.end());
  }
  const std::string meta = record.meta.dump();
  PutLe(out, meta.size(), 4);
  out.insert(out.end(), meta.begin(), meta.end());
  return out;
}

ExampleRecord DecodeRecordPayload(std::span<const std::uint8_t> payload) {
  Cursor c(payload);
  if (c.String(4) != "SPR1") {
    throw Error(ErrorCode::kCorruptRecord, "bad record magic");
  }
  ExampleRecord record;
  const auto task = c.Le(1);
  if (task > static_cast<std::uint64_t>(TaskKind::kRefExp)) {
    throw Error(ErrorCode::kCorruptRecord, "bad task tag");
  }
  record.task = static_cast<TaskKind>(task);
  const auto image_kind = c.Le(1);
  c.Le(2);
  record.id = c.String(c.Le(4));
  record.target = c.String(c.Le(4));
  const std::uint64_t image_len = c.Le(8);
  if (image_kind == 0) {
    const auto image = c.Take(image_len);
    record.image_png.assign(image.begin(), image.end());
  } else {
    record.image_path = c.String(image_len);
  }
  try {
    record.meta = json::parse(c.String(c.Le(4)));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kCorruptRecord,
                std::string("bad record meta: ") + e.what());
  }
  if (!c.done()) throw Error(ErrorCode::kCorruptRecord, "trailing bytes");
  return record;
}

void AppendFramedRecord(const ExampleRecord& record,
                        std::vector<std::uint8_t>& out) {
  const std::vector<std::uint8_t> payload = EncodeRecordPayload(record);
  std::vector<std::uint8_t> length;
  PutLe(length, payload.size(), 8);
  out.insert(out.end(), length.begin(), length.end());
  PutLe(out, Crc32(length), 4);
  out.insert(out.end(), payload.begin(), payload.end());
  PutLe(out, Crc32(payload), 4);
}

std::string RecordToJsonLine(const ExampleRecord& record) {
  json j = {{"id", record.id},
            {"task", TaskName(record.task)},
            {"target", record.target},
            {"meta", record.meta}};
  if (!record.image_png.empty()) {
    j["image_png_base64"] = Base64Encode(record.image_png);
  } else {
    j["image_path"] = record.image_path;
  }
  return j.dump();
}

ExampleRecord RecordFromJsonLine(std::string_view line) {
  try {
    const json j = json::parse(line);
    ExampleRecord record;
    record.id = j.at("id").get<std::string>();
    record.task = ParseTaskName(j.at("task").get<std::string>());
    record.target = j.at("target").get<std::string>();
    record.meta = j.value("meta", json::object());
    if (j.contains("image_png_base64")) {
      record.image_png =
          Base64Decode(j["image_png_base64"].get<std::string>());
    } else {
      record.image_path = j.value("image_path", "");
    }
    return record;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kCorruptRecord,
                std::string("bad record line: ") + e.what());
  }
}

std::vector<std::uint8_t> EncodeRecords(std::span<const ExampleRecord> records,
                                        RecordFormat format) {
  std::vector<std::uint8_t> out;
  for (const ExampleRecord& record : records) {
    if (format == RecordFormat::kBinary) {
      AppendFramedRecord(record, out);
    } else {
      const std::string line = RecordToJsonLine(record);
      out.insert(out.end(), line.begin(), line.end());
      out.push_back('\n');
    }
  }
  return out;
}

std::vector<ExampleRecord> DecodeRecords(std::span<const std::uint8_t> bytes) {
  std::vector<ExampleRecord> records;
  if (bytes.empty()) return records;
  if (bytes[0] == '{') {
    std::size_t start = 0;
    while (start < bytes.size()) {
      std::size_t end = start;
      while (end < bytes.size() && bytes[end] != '\n') ++end;
      const std::string_view line(
          reinterpret_cast<const char*>(bytes.data()) + start, end - start);
      if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
        records.push_back(RecordFromJsonLine(line));
      }
      start = end + 1;
    }
    return records;
  }
  Cursor c(bytes);
  while (!c.done()) {
    const auto length_bytes = c.Take(8);
    if (c.Le(4) != Crc32(length_bytes)) {
      throw Error(ErrorCode::kCorruptRecord,
                  "length checksum mismatch at byte " +
                      std::to_string(c.pos() - 12));
    }
    std::uint64_t length = 0;
    for (int i = 7; i >= 0; --i) length = (length << 8) | length_bytes[i];
    const auto payload = c.Take(length);
    if (c.Le(4) != Crc32(payload)) {
      throw Error(ErrorCode::kCorruptRecord, "payload checksum mismatch");
    }
    records.push_back(DecodeRecordPayload(payload));
  }
  return records;
}

std::vector<ExampleRecord> ReadRecordFile(const std::string& path) {
  return DecodeRecords(ReadFileBytes(path));
}

std::string Base64Encode(std::span<const std::uint8_t> bytes) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(kAlphabet[(v >> 6) & 63]);
    out.push_back(kAlphabet[v & 63]);
  }
  if (i < bytes.size()) {
    std::uint32_t v = bytes[i] << 16;
    if (i + 1 < bytes.size()) v |= bytes[i + 1] << 8;
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(i + 1 < bytes.size() ? kAlphabet[(v >> 6) & 63] : '=');
    out.push_back('=');
  }
  return out;
}

std::vector<std::uint8_t> Base64Decode(std::string_view text) {
  auto value = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  std::vector<std::uint8_t> out;
  std::uint32_t acc = 0;
  int bits = 0;
  for (char c : text) {
    if (c == '=') break;
    const int v = value(c);
    if (v < 0) throw Error(ErrorCode::kCorruptRecord, "bad base64");
    acc = (acc << 6) | static_cast<std::uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xFF));
    }
  }
  return out;
}

void ValidateRecord(const ExampleRecord& record, const RecordSchema& schema) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kSchemaViolation,
                "record '" + record.id + "': " + why);
  };
  if (record.id.empty()) fail("empty id");
  if (record.target.empty()) fail("empty target");
  if (record.image_png.empty() && record.image_path.empty()) {
    fail("no image");
  }
  if (!record.image_png.empty() && !HasPngSignature(record.image_png)) {
    fail("embedded image is not PNG");
  }
  if (!record.meta.is_object()) fail("meta is not an object");
  if (record.task == TaskKind::kScreenshotParsing) {
    try {
      const ParseNode tree = Deserialize(record.target);
      if (Serialize(tree) != record.target) fail("target is not canonical");
      if (CharLength(tree) > schema.target_budget_chars) {
        fail("target exceeds " + std::to_string(schema.target_budget_chars) +
             " characters");
      }
    } catch (const ParseError& e) {
      fail(std::string("target does not parse: ") + e.what());
    }
  }
  if (record.task == TaskKind::kRefExp && record.target != "true" &&
      record.target != "false") {
    fail("refexp target must be true or false");
  }
}

}  // namespace screenparse
