// Copyright 2026 The sdsm Authors
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

#ifndef SDSM_STORE_H_
#define SDSM_STORE_H_

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "sdsm/matrix.h"

namespace sdsm {

// All artifact files start with the magic bytes "SDSM" followed by a u32
// format id. The id doubles as a version: loading a file of the wrong kind
// fails with the expected/found pair instead of misreading the payload.
namespace store {

constexpr uint32_t kCorpusFormat = 1;
constexpr uint32_t kPairSetFormat = 2;
constexpr uint32_t kAssignmentFormat = 3;
constexpr uint32_t kMatrixFormat = 4;
constexpr uint32_t kGraphFormat = 5;
constexpr uint32_t kTripletFormat = 6;
constexpr uint32_t kModelFormat = 7;

}  // namespace store

// Little-endian binary writer. Throws std::runtime_error on IO failure.
class BinaryWriter {
 public:
  explicit BinaryWriter(const std::string& path);
  ~BinaryWriter();

  void write_bytes(const void* data, size_t len);
  void write_u8(uint8_t v);
  void write_u32(uint32_t v);
  void write_u64(uint64_t v);
  void write_f64(double v);
  void write_string(const std::string& s);  // u64 length prefix, then bytes

  void write_header(uint32_t format);

  // Flushes and closes; throws if the final flush fails.
  void close();

 private:
  std::string path_;
  std::ofstream out_;
};

// Little-endian binary reader. Throws std::runtime_error on short reads or
// header mismatches.
class BinaryReader {
 public:
  explicit BinaryReader(const std::string& path);

  void read_bytes(void* data, size_t len);
  uint8_t read_u8();
  uint32_t read_u32();
  uint64_t read_u64();
  double read_f64();
  std::string read_string();

  void check_header(uint32_t expected_format);

  bool at_eof();

 private:
  std::string path_;
  std::ifstream in_;
};

// In-memory counterpart of BinaryWriter, used to build length-prefixed
// records before they hit the file.
class BufferWriter {
 public:
  void write_bytes(const void* data, size_t len) {
    buf_.append(static_cast<const char*>(data), len);
  }
  void write_u8(uint8_t v) { write_bytes(&v, 1); }
  void write_u32(uint32_t v) {
    uint8_t b[4];
    for (int i = 0; i < 4; ++i) b[i] = uint8_t(v >> (8 * i));
    write_bytes(b, 4);
  }
  void write_u64(uint64_t v) {
    uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = uint8_t(v >> (8 * i));
    write_bytes(b, 8);
  }
  void write_f64(double v);
  void write_string(const std::string& s) {
    write_u64(s.size());
    write_bytes(s.data(), s.size());
  }
  const std::string& str() const { return buf_; }

 private:
  std::string buf_;
};

class BufferReader {
 public:
  explicit BufferReader(const std::string& buf) : buf_(buf) {}

  void read_bytes(void* data, size_t len);
  uint8_t read_u8();
  uint32_t read_u32();
  uint64_t read_u64();
  double read_f64();
  std::string read_string();
  bool at_end() const { return pos_ == buf_.size(); }

 private:
  const std::string& buf_;
  size_t pos_ = 0;
};

void save_matrix(const Matrix& m, const std::string& path);
Matrix load_matrix(const std::string& path);

}  // namespace sdsm

#endif  // SDSM_STORE_H_
