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

#ifndef SCORELAB_SCORE_LAWS_HPP_
#define SCORELAB_SCORE_LAWS_HPP_

#include "scorelab/distributions.hpp"
#include "scorelab/models.hpp"

namespace scorelab {

// The exact distributions of the Model A log scores, viewed as random
// variables of the observation stream: each is an affine transform of a
// one-degree noncentral chi-squared variable.
struct ScoreLawTriple {
  AffineNcChiSq law_wedge;             // wedge-corrected score of Y
  AffineNcChiSq law_vee;               // vee-corrected score of Y
  AffineNcChiSq law_base_on_marginal;  // uncorrected score evaluated at Y
  // Shared expectation of the wedge and vee laws (the base law evaluated
  // at Y generally has a different, larger mean).
  double common_mean = 0.0;
};

// Builds the three laws for forecast N(mu, sigma^2) under Model A.  With
// total variance T = sigma0^2 + omega^2 and squared bias m = (mu0 - mu)^2:
//   wedge: a = log sigma - omega^2/(2 sigma^2) + (1/2) log 2 pi,
//          b = T / (2 sigma^2),  lambda = m / T;
//   vee:   a = log sigma + omega^2 sigma0^2 / (2 sigma^2 T)
//              + (1/2) log 2 pi,
//          b = (T / (2 sigma^2)) (sigma0^2 / T)^2,
//          lambda = (m / T) (T / sigma0^2)^2;
//   base at Y: a = log sigma + (1/2) log 2 pi, b and lambda as wedge.
// At omega^2 = 0 the three laws coincide.
ScoreLawTriple build_score_laws(const GaussianParams& f, const ModelA& model);

// V[wedge score] / V[vee score] = (1 + 2 lambda) / (p0^2 + 2 p0 lambda)
// with lambda the wedge noncentrality and p0 = (sigma0^2 / T)^2.
// Always >= 1; equal to 1 exactly when omega^2 = 0.
double variance_ratio(const GaussianParams& f, const ModelA& model);

}  // namespace scorelab

#endif  // SCORELAB_SCORE_LAWS_HPP_
