// Copyright 2026 The Authors.
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

#ifndef PINQ_RANDOM_H_
#define PINQ_RANDOM_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace pinq {

// Mixes a 64-bit word (SplitMix64 finalizer).
uint64_t Mix64(uint64_t x);

// A seedable stream of random bits identified by (seed, stream id).
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Every derived quantity (uniform doubles, integers, shuffles) is
// computed here from raw 64-bit words rather than through std::*_distribution,
// so identical (seed, stream) pairs reproduce the same draws on every
// platform.
class RandomStream {
 public:
  using result_type = uint64_t;

  explicit RandomStream(uint64_t seed, uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return engine_(); }

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

  // Child stream, deterministic in (seed, stream, child).
  RandomStream Fork(uint64_t child) const;

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01();
  bool Bernoulli(double p);
  // Uniform on {0, ..., n-1}; n must be positive.
  uint64_t UniformInt(uint64_t n);
  // Number of heads in n fair coin flips.
  int BinomialHalf(int n);
  std::vector<int> Permutation(int n);

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(UniformInt(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  uint64_t seed_;
  uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace pinq

#endif  // PINQ_RANDOM_H_
