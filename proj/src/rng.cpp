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

#include "scorelab/rng.hpp"

#include <cmath>

namespace scorelab {
namespace {

constexpr std::uint64_t kMultiplier0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMultiplier1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mul_hi_lo(std::uint64_t a, std::uint64_t b, std::uint64_t* hi,
                      std::uint64_t* lo) {
  const unsigned __int128 product =
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  *hi = static_cast<std::uint64_t>(product >> 64);
  *lo = static_cast<std::uint64_t>(product);
}

}  // namespace

std::array<std::uint64_t, 4> CounterRng::block(std::uint64_t c0,
                                               std::uint64_t c1,
                                               std::uint64_t c2,
                                               std::uint64_t c3) const {
  std::uint64_t k0 = key0_;
  std::uint64_t k1 = key1_;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mul_hi_lo(kMultiplier0, c0, &hi0, &lo0);
    mul_hi_lo(kMultiplier1, c2, &hi1, &lo1);
    const std::uint64_t n0 = hi1 ^ c1 ^ k0;
    const std::uint64_t n1 = lo1;
    const std::uint64_t n2 = hi0 ^ c3 ^ k1;
    const std::uint64_t n3 = lo0;
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return {c0, c1, c2, c3};
}

std::uint64_t DrawStream::next_u64() {
  if (position_ == 4) {
    buffer_ = rng_->block(block_index_++, draw_index_, domain_, 0);
    position_ = 0;
  }
  return buffer_[position_++];
}

double DrawStream::uniform01() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double DrawStream::normal() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  constexpr double kTwoPi = 6.28318530717958647693;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

}  // namespace scorelab
