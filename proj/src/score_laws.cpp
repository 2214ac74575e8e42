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

#include "scorelab/score_laws.hpp"

#include <cmath>

#include "scorelab/errors.hpp"

namespace scorelab {

namespace {
constexpr double kHalfLogTwoPi = 0.91893853320467274178;
}  // namespace

ScoreLawTriple build_score_laws(const GaussianParams& f, const ModelA& model) {
  f.validate();
  model.validate();
  if (f.variance <= 0.0) {
    throw DomainError("forecast variance must be positive");
  }

  const double fvar = f.variance;
  const double log_sigma = 0.5 * std::log(fvar);
  const double truth_var = model.truth.variance;
  const double noise_var = model.noise_variance;
  const double total_var = truth_var + noise_var;
  const double bias2 =
      (model.truth.mean - f.mean) * (model.truth.mean - f.mean);
  // Posterior shrinkage factor; exactly 1 when the noise vanishes, which
  // makes the three laws coincide bitwise.
  const double shrink = truth_var / total_var;

  ScoreLawTriple triple;
  triple.law_wedge = AffineNcChiSq{
      log_sigma - noise_var / (2.0 * fvar) + kHalfLogTwoPi,
      total_var / (2.0 * fvar), bias2 / total_var, 1};
  triple.law_vee = AffineNcChiSq{
      log_sigma + noise_var * shrink / (2.0 * fvar) + kHalfLogTwoPi,
      (total_var / (2.0 * fvar)) * shrink * shrink,
      (bias2 / total_var) / (shrink * shrink), 1};
  triple.law_base_on_marginal =
      AffineNcChiSq{log_sigma + kHalfLogTwoPi, total_var / (2.0 * fvar),
                    bias2 / total_var, 1};
  triple.common_mean = triple.law_wedge.mean();
  return triple;
}

double variance_ratio(const GaussianParams& f, const ModelA& model) {
  const ScoreLawTriple triple = build_score_laws(f, model);
  return triple.law_wedge.variance() / triple.law_vee.variance();
}

}  // namespace scorelab
