// mada/rng.h

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MADA_RNG_H_
#define MADA_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace mada {

// Deterministic random source. std::mt19937_64 seeded from a single value is
// fully specified by the standard; the distribution helpers below are written
// out by hand because std::shuffle / std::uniform_int_distribution are not,
// and every sampled artifact must be byte-reproducible across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Unbiased draw from [0, n). Rejection sampling, n > 0.
  uint64_t bounded(uint64_t n);

  // Uniform in [0, 1) with 53 random bits.
  double uniform01();

 private:
  std::mt19937_64 engine_;
};

// Order-sensitive mix of the parts into one seed (FNV-1a over the bytes).
// Used to derive independent per-turn / per-rollout streams from a user seed,
// so parallel and sequential runs draw identical values.
uint64_t mix_seed(std::initializer_list<uint64_t> parts);

// First k positions of a Fisher-Yates pass over [0, n): a uniform sample of
// k distinct indices, in sampled order. k <= n.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, Rng& rng);

}  // namespace mada

#endif  // MADA_RNG_H_
