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

#ifndef SCORELAB_DISTRIBUTIONS_HPP_
#define SCORELAB_DISTRIBUTIONS_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "scorelab/rng.hpp"

namespace scorelab {

// Gaussian N(mean, variance).  variance == 0 is allowed only as an
// explicit degenerate (point-mass) flag for zero-noise limit cases;
// densities reject it, samplers return the mean.
struct GaussianParams {
  double mean = 0.0;
  double variance = 1.0;

  void validate() const;
};

// Gamma(shape, rate) with density proportional to x^(shape-1) e^(-rate x).
struct GammaParams {
  double shape = 1.0;
  double rate = 1.0;

  void validate() const;
  double mean() const { return shape / rate; }
};

// Inverse gamma InvGamma(shape, scale): the law of scale / G for
// G ~ Gamma(shape, 1); mean = scale / (shape - 1) when shape > 1.
struct InvGammaParams {
  double shape = 1.0;
  double scale = 1.0;

  void validate() const;
};

// Multivariate Gaussian N(mean, covariance) with SPD covariance.
struct MvGaussianParams {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;

  void validate() const;
  int dim() const { return static_cast<int>(mean.size()); }
};

// The law a + b * ChiSq(dof = 1, noncentrality): an affine transform of a
// one-degree noncentral chi-squared variable.
struct AffineNcChiSq {
  double offset = 0.0;         // a
  double scale = 1.0;          // b > 0
  double noncentrality = 0.0;  // lambda >= 0
  int dof = 1;                 // fixed to 1

  void validate() const;
  double mean() const { return offset + scale * (1.0 + noncentrality); }
  double variance() const {
    return scale * scale * 2.0 * (1.0 + 2.0 * noncentrality);
  }
};

// --- Densities and distribution functions ---

double gaussian_pdf(const GaussianParams& params, double x);
double gaussian_cdf(const GaussianParams& params, double x);
double gamma_pdf(const GammaParams& params, double x);
double gamma_cdf(const GammaParams& params, double x);
double inv_gamma_pdf(const InvGammaParams& params, double x);
double inv_gamma_cdf(const InvGammaParams& params, double x);
double mv_gaussian_log_pdf(const MvGaussianParams& params,
                           const Eigen::VectorXd& x);

// Distribution function of offset + scale * ChiSq_1(noncentrality),
// evaluated through the exact dof = 1 representation
// P(law <= s) = Phi(sqrt(t) - sqrt(lambda)) - Phi(-sqrt(t) - sqrt(lambda))
// with t = (s - offset) / scale.
double nc_chisq_cdf(const AffineNcChiSq& law, double s);

// Density of the same law; 0 for s <= offset (the density is unbounded as
// s approaches the offset from above, and the boundary point itself has
// measure zero).
double nc_chisq_pdf(const AffineNcChiSq& law, double s);

// --- Draw-level primitives (one variate from the stream) ---

double gaussian_draw(const GaussianParams& params, DrawStream& stream);
// Marsaglia-Tsang squeeze method; shape < 1 handled by the boosting
// identity with one extra uniform.
double gamma_draw(const GammaParams& params, DrawStream& stream);
double inv_gamma_draw(const InvGammaParams& params, DrawStream& stream);
// mean + L z for the Cholesky factor L of the covariance and z a vector
// of independent standard normals.
Eigen::VectorXd mv_gaussian_draw(const MvGaussianParams& params,
                                 const Eigen::LLT<Eigen::MatrixXd>& llt,
                                 DrawStream& stream);

// --- Bulk samplers (deterministic functions of (params, n, seed)) ---

std::vector<double> sample_gaussian(const GaussianParams& params,
                                    std::size_t n, RngSeed seed);
std::vector<double> sample_gamma(const GammaParams& params, std::size_t n,
                                 RngSeed seed);
std::vector<double> sample_inv_gamma(const InvGammaParams& params,
                                     std::size_t n, RngSeed seed);
// Row i is draw i.
Eigen::MatrixXd sample_mv_gaussian(const MvGaussianParams& params,
                                   std::size_t n, RngSeed seed);

}  // namespace scorelab

#endif  // SCORELAB_DISTRIBUTIONS_HPP_
