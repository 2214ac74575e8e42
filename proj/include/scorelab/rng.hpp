// Copyright 2026 The Scorelab Authors.
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

#ifndef SCORELAB_RNG_HPP_
#define SCORELAB_RNG_HPP_

#include <array>
#include <cstdint>

namespace scorelab {

// Identifies a reproducible random stream.  (seed, stream) fully
// determines every draw, independent of thread count or call order.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Reserved values for the third counter word, separating the independent
// randomness sources that one draw index may consume (e.g. the truth draw
// and the observation-error draw of a joint sample).
enum class RngDomain : std::uint64_t {
  kGeneric = 0,
  kTruth = 1,
  kObsError = 2,
  kFcError = 3,
  kScoreMc = 4,
};

// Philox4x64-10 counter-based generator (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3").  The 256-bit counter is split as
// (block, draw_index, domain, reserved): every (seed, stream, draw_index,
// domain) addresses an independent unbounded sequence of 256-bit blocks,
// so per-draw consumption (including rejection sampling) never perturbs
// other draws.
class CounterRng {
 public:
  explicit CounterRng(RngSeed seed) : key0_(seed.seed), key1_(seed.stream) {}

  // Returns the 4x64-bit output block for the given counter words.
  std::array<std::uint64_t, 4> block(std::uint64_t c0, std::uint64_t c1,
                                     std::uint64_t c2, std::uint64_t c3) const;

 private:
  std::uint64_t key0_;
  std::uint64_t key1_;
};

// Buffered view of the block sequence belonging to one (draw index,
// domain) pair.  Cheap to construct per draw; hands out uniforms and
// normals one at a time.
class DrawStream {
 public:
  DrawStream(const CounterRng& rng, std::uint64_t draw_index, RngDomain domain)
      : rng_(&rng),
        draw_index_(draw_index),
        domain_(static_cast<std::uint64_t>(domain)) {}

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1): (x >> 11 + 0.5) * 2^-53, so both
  // endpoints are unreachable and log/Box-Muller transforms stay finite.
  double uniform01();

  // Standard normal via the Box-Muller transform (two uniforms per
  // normal; stateless across draws).
  double normal();

 private:
  const CounterRng* rng_;
  std::uint64_t draw_index_;
  std::uint64_t domain_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint64_t, 4> buffer_{};
  int position_ = 4;  // buffer exhausted; refill on first use
};

}  // namespace scorelab

#endif  // SCORELAB_RNG_HPP_
