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

#include "scorelab/scores.hpp"

#include <cmath>

#include "scorelab/errors.hpp"
#include "scorelab/moments.hpp"

namespace scorelab {
namespace {

constexpr double kHalfLogTwoPi = 0.91893853320467274178;
constexpr double kInvSqrtPi = 0.56418958354775628695;

void require_forecast_variance(const GaussianParams& f) {
  f.validate();
  if (f.variance <= 0.0) {
    throw DomainError("forecast variance must be positive");
  }
}

void require_finite_obs(double y) {
  if (!std::isfinite(y)) {
    throw DomainError("observation must be finite");
  }
}

// (x / beta) * gamma_pdf(f, x) evaluated in log space, so x = 0 and small
// shapes stay finite: beta^(alpha-1) x^alpha e^(-beta x) / Gamma(alpha).
double scaled_gamma_pdf_term(const GammaParams& f, double x) {
  if (x == 0.0) return 0.0;
  return std::exp((f.shape - 1.0) * std::log(f.rate) +
                  f.shape * std::log(x) - f.rate * x - log_gamma(f.shape));
}

}  // namespace

ScoreValue log_score_gaussian(const GaussianParams& f, double x) {
  require_forecast_variance(f);
  require_finite_obs(x);
  const double value = 0.5 * std::log(f.variance) +
                       (x - f.mean) * (x - f.mean) / (2.0 * f.variance) +
                       kHalfLogTwoPi;
  return {value, ScoreKind::kLog, Correction::kNone, 0.0};
}

ScoreValue crps_gaussian(const GaussianParams& f, double x) {
  require_forecast_variance(f);
  require_finite_obs(x);
  const double sigma = std::sqrt(f.variance);
  const double v = (x - f.mean) / sigma;
  const double value = x + 2.0 * sigma * (normal_pdf(v) - v * normal_cdf(-v)) -
                       (f.mean + sigma * kInvSqrtPi);
  return {value, ScoreKind::kCrps, Correction::kNone, 0.0};
}

ScoreValue log_score_gamma(const GammaParams& f, double x) {
  f.validate();
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("gamma log score requires a positive argument");
  }
  const double value = (1.0 - f.shape) * std::log(x) + f.rate * x -
                       f.shape * std::log(f.rate) + log_gamma(f.shape);
  return {value, ScoreKind::kLog, Correction::kNone, 0.0};
}

ScoreValue crps_gamma(const GammaParams& f, double x) {
  f.validate();
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("gamma CRPS requires a positive argument");
  }
  const double mean = f.shape / f.rate;
  const double spread_term =
      std::exp(-std::log(f.rate) - std::log(beta_fn(0.5, f.shape)));
  const double survival = regularized_gamma_q(f.shape, f.rate * x);
  const double value = x - mean - spread_term +
                       2.0 * (scaled_gamma_pdf_term(f, x) +
                              (mean - x) * survival);
  return {value, ScoreKind::kCrps, Correction::kNone, 0.0};
}

ScoreValue log_score_mv_gaussian(const MvGaussianParams& f,
                                 const Eigen::VectorXd& x) {
  f.validate();
  if (x.size() != f.mean.size() || !x.allFinite()) {
    throw DomainError("argument must be finite and match the forecast dim");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(f.covariance);
  const Eigen::VectorXd centered = x - f.mean;
  double log_det = 0.0;
  for (int i = 0; i < f.dim(); ++i) {
    log_det += 2.0 * std::log(llt.matrixL()(i, i));
  }
  const double value = 0.5 * (log_det + centered.dot(llt.solve(centered))) +
                       f.dim() * kHalfLogTwoPi;
  return {value, ScoreKind::kLog, Correction::kNone, 0.0};
}

double log_score_gaussian_expectation(const GaussianParams& f,
                                      const GaussianParams& law) {
  require_forecast_variance(f);
  law.validate();
  const double bias = law.mean - f.mean;
  return 0.5 * std::log(f.variance) +
         (law.variance + bias * bias) / (2.0 * f.variance) + kHalfLogTwoPi;
}

double crps_expectation_gaussian(const GaussianParams& f,
                                 const GaussianParams& law) {
  require_forecast_variance(f);
  law.validate();
  const double sigma = std::sqrt(f.variance);
  const double bias = law.mean - f.mean;
  const double spread = std::sqrt(f.variance + law.variance);
  const double u = bias / spread;
  return law.mean + 2.0 * (spread * normal_pdf(u) - bias * normal_cdf(-u)) -
         (f.mean + sigma * kInvSqrtPi);
}

double log_score_gamma_expectation(const GammaParams& f,
                                   const GammaParams& law) {
  f.validate();
  law.validate();
  // E[log X] = psi(shape) - log rate; E[X] = shape / rate.
  const double mean_log = digamma(law.shape) - std::log(law.rate);
  return (1.0 - f.shape) * mean_log + f.rate * law.mean() -
         f.shape * std::log(f.rate) + log_gamma(f.shape);
}

IntegralResult crps_expectation_gamma(const GammaParams& f,
                                      const GammaParams& law,
                                      const QuadratureSpec& spec) {
  f.validate();
  law.validate();
  spec.validate();

  const double alpha = f.shape;
  const double beta = f.rate;
  const double a = law.shape;
  const double b = law.rate;

  // E[X] - E[Z] - (1/2) E|Z - Z'| for forecast draws Z, Z'.
  const double mean_term = law.mean() - f.mean();
  const double spread_term =
      std::exp(-std::log(beta) - std::log(beta_fn(0.5, alpha)));

  // 2 E[(X/beta) f(X)] where both densities are gamma:
  //   2 beta^(alpha-1) b^a Gamma(alpha+a)
  //     / (Gamma(alpha) Gamma(a) (beta+b)^(alpha+a)).
  const double log_cross = (alpha - 1.0) * std::log(beta) + a * std::log(b) +
                           log_gamma(alpha + a) - log_gamma(alpha) -
                           log_gamma(a) - (alpha + a) * std::log(beta + b);
  const double cross_term = 2.0 * std::exp(log_cross);

  // 2 E[(alpha/beta - X) FBar(X)], by quadrature against the law density.
  const double forecast_mean = f.mean();
  const double log_norm = a * std::log(b) - log_gamma(a);
  const auto integrand = [&](double x) {
    const double log_density = log_norm + (a - 1.0) * std::log(x) - b * x;
    if (log_density < -745.0) return 0.0;  // exp underflow; exact zero
    return (forecast_mean - x) * regularized_gamma_q(alpha, beta * x) *
           std::exp(log_density);
  };
  const IntegralResult tail = integrate_semi_infinite(integrand, spec);

  return {mean_term - spread_term + cross_term + 2.0 * tail.value,
          2.0 * tail.error_estimate};
}

double log_score_mv_gaussian_expectation(const MvGaussianParams& f,
                                         const MvGaussianParams& law) {
  f.validate();
  law.validate();
  if (law.dim() != f.dim()) {
    throw DomainError("law dimension must match the forecast");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(f.covariance);
  double log_det = 0.0;
  for (int i = 0; i < f.dim(); ++i) {
    log_det += 2.0 * std::log(llt.matrixL()(i, i));
  }
  const Eigen::VectorXd bias = law.mean - f.mean;
  const double trace_term = llt.solve(law.covariance).trace();
  const double quad_term = bias.dot(llt.solve(bias));
  return 0.5 * (trace_term + quad_term + log_det) + f.dim() * kHalfLogTwoPi;
}

ScoreValue wedge_log_score_gaussian(const GaussianParams& f, double y,
                                    double omega2) {
  require_forecast_variance(f);
  require_finite_obs(y);
  if (!std::isfinite(omega2) || omega2 < 0.0) {
    throw DomainError("observation-noise variance must be nonnegative");
  }
  const double value = 0.5 * std::log(f.variance) +
                       ((y - f.mean) * (y - f.mean) - omega2) /
                           (2.0 * f.variance) +
                       kHalfLogTwoPi;
  return {value, ScoreKind::kLog, Correction::kWedge, 0.0};
}

ScoreValue vee_log_score_gaussian(const GaussianParams& f, double y,
                                  const ModelA& model) {
  require_finite_obs(y);
  const double value =
      log_score_gaussian_expectation(f, model_a_posterior(model, y));
  return {value, ScoreKind::kLog, Correction::kVee, 0.0};
}

ScoreValue vee_crps_gaussian(const GaussianParams& f, double y,
                             const ModelA& model) {
  require_finite_obs(y);
  const double value =
      crps_expectation_gaussian(f, model_a_posterior(model, y));
  return {value, ScoreKind::kCrps, Correction::kVee, 0.0};
}

ScoreValue vee_log_score_gamma(const GammaParams& f, double y,
                               const ModelB& model) {
  const double value =
      log_score_gamma_expectation(f, model_b_posterior(model, y));
  return {value, ScoreKind::kLog, Correction::kVee, 0.0};
}

ScoreValue vee_crps_gamma(const GammaParams& f, double y, const ModelB& model,
                          const QuadratureSpec& spec) {
  const IntegralResult result =
      crps_expectation_gamma(f, model_b_posterior(model, y), spec);
  return {result.value, ScoreKind::kCrps, Correction::kVee,
          result.error_estimate};
}

EivVeeLogScorer::EivVeeLogScorer(const MvGaussianParams& f,
                                 const EivModel& model) {
  f.validate();
  model.validate();
  dim_ = model.dim();
  if (f.dim() != dim_) {
    throw DomainError("forecast dimension must match the model");
  }
  fc_mean_ = f.mean;
  fc_llt_.compute(f.covariance);
  double log_det = 0.0;
  for (int i = 0; i < dim_; ++i) {
    log_det += 2.0 * std::log(fc_llt_.matrixL()(i, i));
  }
  constant_ = dim_ * kHalfLogTwoPi + 0.5 * log_det;
  obs_bias_ = model.obs_bias;
  fc_bias_ = model.fc_bias;

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(dim_);
  const auto build = [&](bool with_z) {
    Channel channel;
    const MvGaussianParams posterior =
        with_z ? eiv_posterior(model, zero, zero)
               : eiv_posterior_obs_only(model, zero);
    // Posterior mean = C [Delta^-1 (y - obs_bias) + Omega^-1 (z - fc_bias)
    //                     + Sigma_X^-1 mu_X]; C does not depend on (y, z).
    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(dim_, dim_);
    Eigen::LLT<Eigen::MatrixXd> obs_llt(model.obs_cov);
    Eigen::LLT<Eigen::MatrixXd> truth_llt(model.truth.covariance);
    channel.weight_y = posterior.covariance * obs_llt.solve(identity);
    if (with_z) {
      Eigen::LLT<Eigen::MatrixXd> fc_llt(model.fc_cov);
      channel.weight_z = posterior.covariance * fc_llt.solve(identity);
    }
    channel.base =
        posterior.covariance * truth_llt.solve(model.truth.mean);
    channel.trace_term = fc_llt_.solve(posterior.covariance).trace();
    return channel;
  };
  joint_ = build(true);
  obs_only_ = build(false);
}

double EivVeeLogScorer::score(const Channel& channel, const Eigen::VectorXd& y,
                              const Eigen::VectorXd* z) const {
  if (y.size() != dim_ || (z != nullptr && z->size() != dim_)) {
    throw DomainError("measurement dimension does not match the model");
  }
  Eigen::VectorXd mean = channel.weight_y * (y - obs_bias_) + channel.base;
  if (z != nullptr) {
    mean += channel.weight_z * (*z - fc_bias_);
  }
  const Eigen::VectorXd bias = mean - fc_mean_;
  const double quad_term = bias.dot(fc_llt_.solve(bias));
  return 0.5 * (channel.trace_term + quad_term) + constant_;
}

double EivVeeLogScorer::joint(const Eigen::VectorXd& y,
                              const Eigen::VectorXd& z) const {
  return score(joint_, y, &z);
}

double EivVeeLogScorer::obs_only(const Eigen::VectorXd& y) const {
  return score(obs_only_, y, nullptr);
}

ScoreValue eiv_vee_log_score(const MvGaussianParams& f,
                             const Eigen::VectorXd& y,
                             const Eigen::VectorXd& z, const EivModel& model) {
  const EivVeeLogScorer scorer(f, model);
  return {scorer.joint(y, z), ScoreKind::kLog, Correction::kVee, 0.0};
}

ScoreValue eiv_vee_log_score_obs_only(const MvGaussianParams& f,
                                      const Eigen::VectorXd& y,
                                      const EivModel& model) {
  const EivVeeLogScorer scorer(f, model);
  return {scorer.obs_only(y), ScoreKind::kLog, Correction::kVee, 0.0};
}

namespace {

template <typename DrawFn, typename ScoreFn>
McScore mc_expectation(std::size_t n, RngSeed seed, const DrawFn& draw,
                       const ScoreFn& score) {
  if (n < 2) {
    throw DomainError("Monte Carlo correction requires n >= 2");
  }
  const CounterRng rng(seed);
  MomentAccumulator acc;
  for (std::size_t i = 0; i < n; ++i) {
    DrawStream stream(rng, i, RngDomain::kScoreMc);
    acc.add(score(draw(stream)));
  }
  return {acc.mean, acc.mean_std_error()};
}

}  // namespace

McScore mc_vee_score(const std::function<double(double)>& base_score,
                     const GaussianParams& posterior, std::size_t n,
                     RngSeed seed) {
  posterior.validate();
  return mc_expectation(
      n, seed,
      [&posterior](DrawStream& s) { return gaussian_draw(posterior, s); },
      base_score);
}

McScore mc_vee_score(const std::function<double(double)>& base_score,
                     const GammaParams& posterior, std::size_t n,
                     RngSeed seed) {
  posterior.validate();
  return mc_expectation(
      n, seed,
      [&posterior](DrawStream& s) { return gamma_draw(posterior, s); },
      base_score);
}

McScore mc_vee_score(
    const std::function<double(const Eigen::VectorXd&)>& base_score,
    const MvGaussianParams& posterior, std::size_t n, RngSeed seed) {
  posterior.validate();
  Eigen::LLT<Eigen::MatrixXd> llt(posterior.covariance);
  if (llt.info() != Eigen::Success) {
    throw DomainError("posterior covariance must be positive definite");
  }
  return mc_expectation(
      n, seed,
      [&posterior, &llt](DrawStream& s) {
        return mv_gaussian_draw(posterior, llt, s);
      },
      base_score);
}

}  // namespace scorelab
