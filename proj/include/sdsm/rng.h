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

#ifndef SDSM_RNG_H_
#define SDSM_RNG_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace sdsm {

// Seeded RNG wrapper. mt19937_64 output is fully specified by the standard;
// the transforms below are pinned here because std::*_distribution is
// implementation-defined and would break frozen test values across stdlibs.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform in [0, n), unbiased via rejection.
  uint64_t uniform(uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::uniform: n must be > 0");
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [lo, hi], both inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(uniform(static_cast<uint64_t>(hi - lo) + 1));
  }

  // Uniform double in [0, 1) with 53 bits of randomness.
  double uniform_real() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<size_t>(uniform(i))]);
    }
  }

  // k distinct indices drawn uniformly from [0, n), returned ascending.
  std::vector<size_t> sample_indices(size_t n, size_t k);

 private:
  std::mt19937_64 gen_;
};

// Derives an independent stream seed from (seed, stream); splitmix64 finisher.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a over bytes, optionally folded with a seed. Used for feature hashing
// and stable string stream ids.
inline uint64_t fnv1a64(const void* data, size_t len, uint64_t seed = 0) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = 14695981039346656037ULL ^ (seed * 0x9e3779b97f4a7c15ULL);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace sdsm

#endif  // SDSM_RNG_H_
