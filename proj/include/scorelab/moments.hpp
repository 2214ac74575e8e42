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

#ifndef SCORELAB_MOMENTS_HPP_
#define SCORELAB_MOMENTS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace scorelab {

// One-pass accumulator for the first four central moments, with an exact
// merge (Pebay's update formulas).  Merging partial accumulators in a
// fixed order makes parallel reductions bitwise independent of the thread
// count.
struct MomentAccumulator {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum (x - mean)^2
  double m3 = 0.0;  // sum (x - mean)^3
  double m4 = 0.0;  // sum (x - mean)^4

  void add(double x) {
    const double n1 = static_cast<double>(count);
    ++count;
    const double n = static_cast<double>(count);
    const double delta = x - mean;
    const double delta_n = delta / n;
    const double delta_n2 = delta_n * delta_n;
    const double term1 = delta * delta_n * n1;
    mean += delta_n;
    m4 += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2 -
          4.0 * delta_n * m3;
    m3 += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2;
    m2 += term1;
  }

  void combine(const MomentAccumulator& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double n = na + nb;
    const double delta = other.mean - mean;
    const double delta2 = delta * delta;
    const double delta3 = delta2 * delta;
    const double delta4 = delta2 * delta2;

    const double new_m4 =
        m4 + other.m4 + delta4 * na * nb * (na * na - na * nb + nb * nb) /
                            (n * n * n) +
        6.0 * delta2 * (na * na * other.m2 + nb * nb * m2) / (n * n) +
        4.0 * delta * (na * other.m3 - nb * m3) / n;
    const double new_m3 = m3 + other.m3 +
                          delta3 * na * nb * (na - nb) / (n * n) +
                          3.0 * delta * (na * other.m2 - nb * m2) / n;
    const double new_m2 = m2 + other.m2 + delta2 * na * nb / n;

    mean += delta * nb / n;
    m2 = new_m2;
    m3 = new_m3;
    m4 = new_m4;
    count += other.count;
  }

  // Unbiased sample variance.
  double variance() const {
    return count >= 2 ? m2 / static_cast<double>(count - 1) : 0.0;
  }

  double mean_std_error() const {
    return count >= 2 ? std::sqrt(variance() / static_cast<double>(count))
                      : 0.0;
  }

  // Delta-method standard error of the sample variance, from the fourth
  // central moment: sqrt((m4c - s^4 (n-3)/(n-1)) / n).
  double variance_std_error() const {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    const double s2 = variance();
    const double m4c = m4 / n;
    const double inner = m4c - s2 * s2 * (n - 3.0) / (n - 1.0);
    return std::sqrt(std::max(0.0, inner) / n);
  }
};

}  // namespace scorelab

#endif  // SCORELAB_MOMENTS_HPP_
