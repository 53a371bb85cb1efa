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

#include "pinq/random.h"

#include <numeric>

#include "pinq/errors.h"

namespace pinq {

uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(uint64_t seed, uint64_t stream)
    : seed_(seed),
      stream_(stream),
      engine_(Mix64(seed ^ Mix64(stream ^ 0x5851f42d4c957f2dULL))) {}

RandomStream RandomStream::Fork(uint64_t child) const {
  return RandomStream(Mix64(seed_ ^ 0xd1b54a32d192ed03ULL),
                      Mix64(stream_) ^ child);
}

double RandomStream::Uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

bool RandomStream::Bernoulli(double p) { return Uniform01() < p; }

uint64_t RandomStream::UniformInt(uint64_t n) {
  if (n == 0) throw InputDomainError("UniformInt: n must be positive");
  // Rejection keeps the result exactly uniform.
  const uint64_t limit = max() - max() % n;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

int RandomStream::BinomialHalf(int n) {
  int heads = 0;
  int remaining = n;
  while (remaining > 0) {
    const int take = remaining < 64 ? remaining : 64;
    uint64_t bits = engine_();
    if (take < 64) bits &= (uint64_t{1} << take) - 1;
    heads += __builtin_popcountll(bits);
    remaining -= take;
  }
  return heads;
}

std::vector<int> RandomStream::Permutation(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Shuffle(perm);
  return perm;
}

}  // namespace pinq
