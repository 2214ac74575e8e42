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

#ifndef SCORELAB_MODELS_HPP_
#define SCORELAB_MODELS_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "scorelab/distributions.hpp"
#include "scorelab/rng.hpp"

namespace scorelab {

// Additive Gaussian observation error:
//   X ~ N(mu0, sigma0^2),  Y = X + N(0, omega^2).
struct ModelA {
  GaussianParams truth;          // (mu0, sigma0^2)
  double noise_variance = 0.0;   // omega^2 >= 0

  void validate() const;
};

// Multiplicative error on a positive variable:
//   X ~ Gamma(alpha0, beta0),  Y = X * eps,  eps ~ InvGamma(a, b).
struct ModelB {
  GammaParams truth;      // (alpha0, beta0)
  InvGammaParams error;   // (a, b)

  void validate() const;
};

// Error-in-variables model: both the observation Y and a forecast-side
// measurement Z equal the hidden truth X plus independent Gaussian errors,
//   X ~ N(mu_X, Sigma_X),  Y = X + eps_Y,  Z = X + eps_Z,
//   eps_Y ~ N(obs_bias, obs_cov),  eps_Z ~ N(fc_bias, fc_cov).
struct EivModel {
  MvGaussianParams truth;
  Eigen::VectorXd obs_bias;
  Eigen::MatrixXd obs_cov;
  Eigen::VectorXd fc_bias;
  Eigen::MatrixXd fc_cov;

  void validate() const;
  int dim() const { return truth.dim(); }
};

// One joint draw from a scalar model.
struct ScalarJointDraw {
  double x = 0.0;
  double y = 0.0;
};

// One joint draw from the error-in-variables model.
struct EivJointDraw {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd z;
};

// Conditional law [X | Y = y] under Model A:
//   N(ybar, omega^2 sigma0^2 / (sigma0^2 + omega^2)),
//   ybar = (omega^2 mu0 + sigma0^2 y) / (sigma0^2 + omega^2).
// omega^2 = 0 returns the degenerate point mass at y exactly.
GaussianParams model_a_posterior(const ModelA& model, double y);

// Marginal law of Y under Model A: N(mu0, sigma0^2 + omega^2).
GaussianParams model_a_marginal_y(const ModelA& model);

// Conditional law [Y | X = x] under Model A: N(x, omega^2).
GaussianParams model_a_obs_given_truth(const ModelA& model, double x);

// Conditional law [X | Y = y] under Model B by gamma / inverse-gamma
// conjugacy: Gamma(alpha0 + a, beta0 + b / y).
GammaParams model_b_posterior(const ModelB& model, double y);

// Conditional law [Y | X = x] under Model B.  The model equations give
// Y = x * eps with eps ~ InvGamma(a, b), hence InvGamma(a, b x).  This law
// is derived from the generative equations (it is forced by them) rather
// than quoted from a closed-form table.
InvGammaParams model_b_obs_given_truth(const ModelB& model, double x);

// Conditional law [X | Y = y, Z = z] under the EIV model:
//   covariance C = (Delta^-1 + Omega^-1 + Sigma_X^-1)^-1,
//   mean = C [Delta^-1 (y - obs_bias) + Omega^-1 (z - fc_bias)
//             + Sigma_X^-1 mu_X].
// The covariance does not depend on (y, z).
MvGaussianParams eiv_posterior(const EivModel& model, const Eigen::VectorXd& y,
                               const Eigen::VectorXd& z);

// Conditional law [X | Y = y] (observation only; the forecast-side
// channel is dropped from the precision sum).
MvGaussianParams eiv_posterior_obs_only(const EivModel& model,
                                        const Eigen::VectorXd& y);

// --- Draw-level joint sampling (used by the experiment engine) ---

ScalarJointDraw model_a_joint_draw(const ModelA& model, const CounterRng& rng,
                                   std::uint64_t draw_index);
ScalarJointDraw model_b_joint_draw(const ModelB& model, const CounterRng& rng,
                                   std::uint64_t draw_index);

// Precomputed Cholesky factors so per-draw work is matrix-vector only.
class EivSampler {
 public:
  explicit EivSampler(const EivModel& model);
  EivJointDraw draw(const CounterRng& rng, std::uint64_t draw_index) const;

 private:
  const EivModel* model_;
  Eigen::LLT<Eigen::MatrixXd> truth_llt_;
  Eigen::LLT<Eigen::MatrixXd> obs_llt_;
  Eigen::LLT<Eigen::MatrixXd> fc_llt_;
};

// --- Bulk joint samplers (deterministic in (model, n, seed)) ---

std::vector<ScalarJointDraw> sample_model_a(const ModelA& model, std::size_t n,
                                            RngSeed seed);
std::vector<ScalarJointDraw> sample_model_b(const ModelB& model, std::size_t n,
                                            RngSeed seed);
std::vector<EivJointDraw> sample_eiv(const EivModel& model, std::size_t n,
                                     RngSeed seed);

}  // namespace scorelab

#endif  // SCORELAB_MODELS_HPP_
