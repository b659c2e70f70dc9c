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

#ifndef SDSM_SHA256_H_
#define SDSM_SHA256_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace sdsm {

// Incremental SHA-256 (FIPS 180-4). Self-contained so artifact hashing does
// not pull in a crypto library dependency.
class Sha256 {
 public:
  Sha256() { reset(); }

  void reset();
  void update(const void* data, size_t len);
  // Finalizes and returns the 64-char lowercase hex digest.
  std::string hex_digest();

 private:
  void process_block(const uint8_t* p);

  uint32_t state_[8];
  uint64_t total_len_ = 0;
  uint8_t buffer_[64];
  size_t buffer_len_ = 0;
};

std::string sha256_hex(std::string_view data);
// Throws std::runtime_error if the file cannot be read.
std::string sha256_file_hex(const std::string& path);

}  // namespace sdsm

#endif  // SDSM_SHA256_H_
