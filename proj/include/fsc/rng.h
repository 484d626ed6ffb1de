// Copyright 2026 The FSC Hanabi Benchmark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FSC_RNG_H_
#define FSC_RNG_H_

#include <cstdint>

namespace fsc {

// SplitMix64 generator. Every source of randomness in the benchmark flows
// through this type so that traces are bit-identical across platforms
// (std::uniform_int_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t NextUint64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Lemire's multiply-shift; slight modulo bias is below
  // 2^-32 and irrelevant here, but the mapping is fully deterministic.
  uint32_t UniformInt(uint32_t n) {
    uint64_t x = NextUint64() >> 32;
    return static_cast<uint32_t>((x * n) >> 32);
  }

  // Uniform double in [0, 1).
  double Uniform() {
    return static_cast<double>(NextUint64() >> 11) * 0x1.0p-53;
  }

  uint64_t state() const { return state_; }

 private:
  uint64_t state_;
};

}  // namespace fsc

#endif  // FSC_RNG_H_
