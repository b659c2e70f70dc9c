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

#include "sdsm/store.h"

#include <cstring>
#include <stdexcept>

namespace sdsm {

namespace {
constexpr char kMagic[4] = {'S', 'D', 'S', 'M'};
}

BinaryWriter::BinaryWriter(const std::string& path)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot open for writing: " + path);
}

BinaryWriter::~BinaryWriter() {
  if (out_.is_open()) out_.close();
}

void BinaryWriter::write_bytes(const void* data, size_t len) {
  out_.write(static_cast<const char*>(data), std::streamsize(len));
  if (!out_) throw std::runtime_error("write failed: " + path_);
}

void BinaryWriter::write_u8(uint8_t v) { write_bytes(&v, 1); }

void BinaryWriter::write_u32(uint32_t v) {
  uint8_t b[4];
  for (int i = 0; i < 4; ++i) b[i] = uint8_t(v >> (8 * i));
  write_bytes(b, 4);
}

void BinaryWriter::write_u64(uint64_t v) {
  uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = uint8_t(v >> (8 * i));
  write_bytes(b, 8);
}

void BinaryWriter::write_f64(double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, 8);
  write_u64(bits);
}

void BinaryWriter::write_string(const std::string& s) {
  write_u64(s.size());
  if (!s.empty()) write_bytes(s.data(), s.size());
}

void BinaryWriter::write_header(uint32_t format) {
  write_bytes(kMagic, 4);
  write_u32(format);
}

void BinaryWriter::close() {
  out_.flush();
  if (!out_) throw std::runtime_error("flush failed: " + path_);
  out_.close();
}

BinaryReader::BinaryReader(const std::string& path)
    : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw std::runtime_error("cannot open for reading: " + path);
}

void BinaryReader::read_bytes(void* data, size_t len) {
  in_.read(static_cast<char*>(data), std::streamsize(len));
  if (size_t(in_.gcount()) != len) {
    throw std::runtime_error("truncated file: " + path_);
  }
}

uint8_t BinaryReader::read_u8() {
  uint8_t v;
  read_bytes(&v, 1);
  return v;
}

uint32_t BinaryReader::read_u32() {
  uint8_t b[4];
  read_bytes(b, 4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= uint32_t(b[i]) << (8 * i);
  return v;
}

uint64_t BinaryReader::read_u64() {
  uint8_t b[8];
  read_bytes(b, 8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t(b[i]) << (8 * i);
  return v;
}

double BinaryReader::read_f64() {
  uint64_t bits = read_u64();
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

std::string BinaryReader::read_string() {
  uint64_t len = read_u64();
  std::string s(len, '\0');
  if (len > 0) read_bytes(s.data(), len);
  return s;
}

void BinaryReader::check_header(uint32_t expected_format) {
  char magic[4];
  read_bytes(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("not an SDSM store: " + path_);
  }
  uint32_t found = read_u32();
  if (found != expected_format) {
    throw std::runtime_error("format mismatch in " + path_ + ": expected " +
                             std::to_string(expected_format) + ", found " +
                             std::to_string(found));
  }
}

bool BinaryReader::at_eof() {
  return in_.peek() == std::char_traits<char>::eof();
}

void BufferWriter::write_f64(double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, 8);
  write_u64(bits);
}

void BufferReader::read_bytes(void* data, size_t len) {
  if (pos_ + len > buf_.size()) {
    throw std::runtime_error("truncated record");
  }
  std::memcpy(data, buf_.data() + pos_, len);
  pos_ += len;
}

uint8_t BufferReader::read_u8() {
  uint8_t v;
  read_bytes(&v, 1);
  return v;
}

uint32_t BufferReader::read_u32() {
  uint8_t b[4];
  read_bytes(b, 4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= uint32_t(b[i]) << (8 * i);
  return v;
}

uint64_t BufferReader::read_u64() {
  uint8_t b[8];
  read_bytes(b, 8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t(b[i]) << (8 * i);
  return v;
}

double BufferReader::read_f64() {
  uint64_t bits = read_u64();
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

std::string BufferReader::read_string() {
  uint64_t len = read_u64();
  std::string s(len, '\0');
  if (len > 0) read_bytes(s.data(), len);
  return s;
}

void save_matrix(const Matrix& m, const std::string& path) {
  BinaryWriter w(path);
  w.write_header(store::kMatrixFormat);
  w.write_u64(m.rows);
  w.write_u64(m.cols);
  for (double v : m.data) w.write_f64(v);
  w.close();
}

Matrix load_matrix(const std::string& path) {
  BinaryReader r(path);
  r.check_header(store::kMatrixFormat);
  uint64_t rows = r.read_u64();
  uint64_t cols = r.read_u64();
  Matrix m(rows, cols);
  for (double& v : m.data) v = r.read_f64();
  return m;
}

}  // namespace sdsm
