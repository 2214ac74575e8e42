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

#include "scorelab/models.hpp"

#include <cmath>
#include <string>

#include "scorelab/errors.hpp"

namespace scorelab {
namespace {

void require_count(std::size_t n) {
  if (n == 0) {
    throw DomainError("sample count must be >= 1");
  }
}

// Solves M^{-1} v and M^{-1} (as a matrix) via Cholesky, rejecting
// non-SPD inputs rather than regularizing them.
Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& m, const char* name) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw DomainError(std::string(name) + " must be positive definite");
  }
  return llt.solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
}

MvGaussianParams precision_weighted_posterior(
    const EivModel& model, const Eigen::VectorXd& y,
    const Eigen::VectorXd* z) {
  const int d = model.dim();
  if (y.size() != d || (z != nullptr && z->size() != d)) {
    throw DomainError("observation dimension does not match the model");
  }
  const Eigen::MatrixXd truth_precision =
      spd_inverse(model.truth.covariance, "truth covariance");
  const Eigen::MatrixXd obs_precision =
      spd_inverse(model.obs_cov, "observation error covariance");
  Eigen::MatrixXd total_precision = truth_precision + obs_precision;
  Eigen::VectorXd weighted = truth_precision * model.truth.mean +
                             obs_precision * (y - model.obs_bias);
  if (z != nullptr) {
    const Eigen::MatrixXd fc_precision =
        spd_inverse(model.fc_cov, "forecast error covariance");
    total_precision += fc_precision;
    weighted += fc_precision * (*z - model.fc_bias);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(total_precision);
  if (llt.info() != Eigen::Success) {
    throw DomainError("posterior precision must be positive definite");
  }
  MvGaussianParams posterior;
  posterior.covariance = llt.solve(Eigen::MatrixXd::Identity(d, d));
  // Symmetrize away factorization round-off so downstream SPD checks with
  // tight symmetry tolerances accept the result.
  posterior.covariance =
      0.5 * (posterior.covariance + posterior.covariance.transpose()).eval();
  posterior.mean = llt.solve(weighted);
  return posterior;
}

}  // namespace

void ModelA::validate() const {
  truth.validate();
  if (truth.variance <= 0.0) {
    throw DomainError("Model A truth variance must be positive");
  }
  if (!std::isfinite(noise_variance) || noise_variance < 0.0) {
    throw DomainError("Model A noise variance must be nonnegative");
  }
}

void ModelB::validate() const {
  truth.validate();
  error.validate();
}

void EivModel::validate() const {
  truth.validate();
  const int d = truth.dim();
  if (obs_bias.size() != d || fc_bias.size() != d) {
    throw DomainError("EIV bias vectors must match the truth dimension");
  }
  if (!obs_bias.allFinite() || !fc_bias.allFinite()) {
    throw DomainError("EIV bias vectors must be finite");
  }
  MvGaussianParams obs_check{obs_bias, obs_cov};
  obs_check.validate();
  MvGaussianParams fc_check{fc_bias, fc_cov};
  fc_check.validate();
}

GaussianParams model_a_posterior(const ModelA& model, double y) {
  model.validate();
  if (!std::isfinite(y)) {
    throw DomainError("observation must be finite");
  }
  // Convex-combination form: weight = sigma0^2 / (sigma0^2 + omega^2).
  // At omega^2 = 0 the weight is exactly 1 and the posterior collapses to
  // the point mass at y with no rounding residue.
  const double total = model.truth.variance + model.noise_variance;
  const double weight = model.truth.variance / total;
  return GaussianParams{(1.0 - weight) * model.truth.mean + weight * y,
                        weight * model.noise_variance};
}

GaussianParams model_a_marginal_y(const ModelA& model) {
  model.validate();
  return GaussianParams{model.truth.mean,
                        model.truth.variance + model.noise_variance};
}

GaussianParams model_a_obs_given_truth(const ModelA& model, double x) {
  model.validate();
  if (!std::isfinite(x)) {
    throw DomainError("truth value must be finite");
  }
  return GaussianParams{x, model.noise_variance};
}

GammaParams model_b_posterior(const ModelB& model, double y) {
  model.validate();
  if (!std::isfinite(y) || y <= 0.0) {
    throw DomainError("Model B observation must be positive");
  }
  return GammaParams{model.truth.shape + model.error.shape,
                     model.truth.rate + model.error.scale / y};
}

InvGammaParams model_b_obs_given_truth(const ModelB& model, double x) {
  model.validate();
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("Model B truth value must be positive");
  }
  return InvGammaParams{model.error.shape, model.error.scale * x};
}

MvGaussianParams eiv_posterior(const EivModel& model, const Eigen::VectorXd& y,
                               const Eigen::VectorXd& z) {
  model.validate();
  return precision_weighted_posterior(model, y, &z);
}

MvGaussianParams eiv_posterior_obs_only(const EivModel& model,
                                        const Eigen::VectorXd& y) {
  model.validate();
  return precision_weighted_posterior(model, y, nullptr);
}

ScalarJointDraw model_a_joint_draw(const ModelA& model, const CounterRng& rng,
                                   std::uint64_t draw_index) {
  DrawStream truth_stream(rng, draw_index, RngDomain::kTruth);
  DrawStream obs_stream(rng, draw_index, RngDomain::kObsError);
  ScalarJointDraw draw;
  draw.x = gaussian_draw(model.truth, truth_stream);
  // omega^2 = 0 multiplies the noise variate by exactly 0, so y == x.
  draw.y = draw.x + std::sqrt(model.noise_variance) * obs_stream.normal();
  return draw;
}

ScalarJointDraw model_b_joint_draw(const ModelB& model, const CounterRng& rng,
                                   std::uint64_t draw_index) {
  DrawStream truth_stream(rng, draw_index, RngDomain::kTruth);
  DrawStream obs_stream(rng, draw_index, RngDomain::kObsError);
  ScalarJointDraw draw;
  draw.x = gamma_draw(model.truth, truth_stream);
  draw.y = draw.x * inv_gamma_draw(model.error, obs_stream);
  return draw;
}

EivSampler::EivSampler(const EivModel& model) : model_(&model) {
  model.validate();
  truth_llt_.compute(model.truth.covariance);
  obs_llt_.compute(model.obs_cov);
  fc_llt_.compute(model.fc_cov);
}

EivJointDraw EivSampler::draw(const CounterRng& rng,
                              std::uint64_t draw_index) const {
  const int d = model_->dim();
  DrawStream truth_stream(rng, draw_index, RngDomain::kTruth);
  DrawStream obs_stream(rng, draw_index, RngDomain::kObsError);
  DrawStream fc_stream(rng, draw_index, RngDomain::kFcError);
  Eigen::VectorXd z_truth(d), z_obs(d), z_fc(d);
  for (int i = 0; i < d; ++i) z_truth(i) = truth_stream.normal();
  for (int i = 0; i < d; ++i) z_obs(i) = obs_stream.normal();
  for (int i = 0; i < d; ++i) z_fc(i) = fc_stream.normal();

  EivJointDraw draw;
  draw.x = model_->truth.mean + truth_llt_.matrixL() * z_truth;
  draw.y = draw.x + model_->obs_bias + obs_llt_.matrixL() * z_obs;
  draw.z = draw.x + model_->fc_bias + fc_llt_.matrixL() * z_fc;
  return draw;
}

std::vector<ScalarJointDraw> sample_model_a(const ModelA& model, std::size_t n,
                                            RngSeed seed) {
  model.validate();
  require_count(n);
  const CounterRng rng(seed);
  std::vector<ScalarJointDraw> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = model_a_joint_draw(model, rng, i);
  }
  return out;
}

std::vector<ScalarJointDraw> sample_model_b(const ModelB& model, std::size_t n,
                                            RngSeed seed) {
  model.validate();
  require_count(n);
  const CounterRng rng(seed);
  std::vector<ScalarJointDraw> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = model_b_joint_draw(model, rng, i);
  }
  return out;
}

std::vector<EivJointDraw> sample_eiv(const EivModel& model, std::size_t n,
                                     RngSeed seed) {
  require_count(n);
  const EivSampler sampler(model);
  const CounterRng rng(seed);
  std::vector<EivJointDraw> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = sampler.draw(rng, i);
  }
  return out;
}

}  // namespace scorelab
