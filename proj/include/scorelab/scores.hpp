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

#ifndef SCORELAB_SCORES_HPP_
#define SCORELAB_SCORES_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <variant>

#include "scorelab/distributions.hpp"
#include "scorelab/models.hpp"
#include "scorelab/numerics.hpp"
#include "scorelab/rng.hpp"

namespace scorelab {

// All scores are negatively oriented: smaller is better.

enum class ScoreKind { kLog, kCrps };

// How the observation-error correction was applied.  kNone scores the raw
// argument; kWedge conditions on the truth (the correction built from
// [Y | X = x]); kVee takes the posterior expectation of the base score
// under [X | Y = y] (or [X | Y, Z] for the joint error-in-variables
// variant, which carries the same tag).
enum class Correction { kNone, kWedge, kVee };

struct ScoreValue {
  double value = 0.0;
  ScoreKind score_kind = ScoreKind::kLog;
  Correction correction = Correction::kNone;
  // Bound on the numerical error of `value`: 0 for closed forms, the
  // quadrature error estimate otherwise.
  double numeric_error = 0.0;
};

// A predictive density: Gaussian, gamma, or multivariate Gaussian.
using Forecast = std::variant<GaussianParams, GammaParams, MvGaussianParams>;

// Monte Carlo estimate with its standard error.
struct McScore {
  double estimate = 0.0;
  double std_error = 0.0;
};

// --- Base scores ---

// log sigma + (x - mu)^2 / (2 sigma^2) + (1/2) log 2 pi.
ScoreValue log_score_gaussian(const GaussianParams& f, double x);

// x + 2 sigma [phi(v) - v PhiBar(v)] - [mu + sigma / sqrt(pi)],
// v = (x - mu) / sigma.
ScoreValue crps_gaussian(const GaussianParams& f, double x);

// (1 - alpha) log x + beta x - alpha log beta + log Gamma(alpha).
ScoreValue log_score_gamma(const GammaParams& f, double x);

// Closed-form CRPS of a Gamma(alpha, beta) forecast at x >= 0:
//   x - alpha/beta - 1/(beta B(1/2, alpha))
//     + 2 [ (x / beta) f(x) + (alpha/beta - x) FBar(x) ],
// with f and FBar the forecast pdf and survival function.  This is the
// standard gamma-CRPS identity; it is pinned to the definitional
// E|Z - x| - (1/2) E|Z - Z'| by a Monte Carlo oracle in the tests.
ScoreValue crps_gamma(const GammaParams& f, double x);

// (1/2) log det Sigma + (d/2) log 2 pi + (1/2)(x-mu)^T Sigma^-1 (x-mu).
ScoreValue log_score_mv_gaussian(const MvGaussianParams& f,
                                 const Eigen::VectorXd& x);

// --- Expected base scores under a Gaussian/gamma/MV-Gaussian law ---
// Each corrected ("vee") score below is exactly the corresponding
// expectation evaluated at the model posterior, and each experiment's
// common mean is the expectation evaluated at the truth prior.

// E[log_score_gaussian(f, X)] for X ~ N(law.mean, law.variance).
double log_score_gaussian_expectation(const GaussianParams& f,
                                      const GaussianParams& law);

// E[crps_gaussian(f, X)] for X ~ N(a, b^2), by Stein's lemma:
//   a + 2 [ s phi(D/s) - D PhiBar(D/s) ] - [mu + sigma / sqrt(pi)],
// D = a - mu, s^2 = sigma^2 + b^2.  law.variance = 0 reduces to
// crps_gaussian(f, a).
double crps_expectation_gaussian(const GaussianParams& f,
                                 const GaussianParams& law);

// E[log_score_gamma(f, X)] for X ~ Gamma(law.shape, law.rate), using
// E[log X] = psi(shape) - log(rate) and E[X] = shape / rate.
double log_score_gamma_expectation(const GammaParams& f,
                                   const GammaParams& law);

// E[crps_gamma(f, X)] for X ~ Gamma(A, B): three closed terms plus one
// semi-infinite quadrature of 2 (alpha/beta - x) FBar(x) against the law
// density.  Returns the value and the quadrature error bound.
IntegralResult crps_expectation_gamma(const GammaParams& f,
                                      const GammaParams& law,
                                      const QuadratureSpec& spec);

// E[log_score_mv_gaussian(f, X)] for X ~ N(law.mean, law.covariance):
//   (1/2) tr(Sigma^-1 (C + (m - mu)(m - mu)^T))
//     + (d/2) log 2 pi + (1/2) log det Sigma.
double log_score_mv_gaussian_expectation(const MvGaussianParams& f,
                                         const MvGaussianParams& law);

// --- Corrected scores ---

// Wedge-corrected Gaussian log score:
//   log sigma + ((y - mu)^2 - omega^2) / (2 sigma^2) + (1/2) log 2 pi.
// Requires only the observation-noise variance, not a full truth prior.
// May fall below the base score's infimum; no clamping is applied.
ScoreValue wedge_log_score_gaussian(const GaussianParams& f, double y,
                                    double omega2);

// Vee-corrected scores: the expected base score under the model
// posterior given the observation.
ScoreValue vee_log_score_gaussian(const GaussianParams& f, double y,
                                  const ModelA& model);
ScoreValue vee_crps_gaussian(const GaussianParams& f, double y,
                             const ModelA& model);
ScoreValue vee_log_score_gamma(const GammaParams& f, double y,
                               const ModelB& model);
ScoreValue vee_crps_gamma(const GammaParams& f, double y, const ModelB& model,
                          const QuadratureSpec& spec);

// Error-in-variables vee score using both measurement channels,
// [X | Y = y, Z = z].
ScoreValue eiv_vee_log_score(const MvGaussianParams& f,
                             const Eigen::VectorXd& y,
                             const Eigen::VectorXd& z, const EivModel& model);

// Same with the observation channel only, [X | Y = y].
ScoreValue eiv_vee_log_score_obs_only(const MvGaussianParams& f,
                                      const Eigen::VectorXd& y,
                                      const EivModel& model);

// Caches the forecast-side factorizations and posterior pieces that do
// not depend on (y, z), for tight experiment loops.
class EivVeeLogScorer {
 public:
  EivVeeLogScorer(const MvGaussianParams& f, const EivModel& model);

  double joint(const Eigen::VectorXd& y, const Eigen::VectorXd& z) const;
  double obs_only(const Eigen::VectorXd& y) const;

 private:
  struct Channel {
    // Posterior mean is affine in the measurements:
    //   m = weight_y (y - obs_bias) + weight_z (z - fc_bias) + base.
    Eigen::MatrixXd weight_y;
    Eigen::MatrixXd weight_z;  // empty for the observation-only channel
    Eigen::VectorXd base;
    double trace_term = 0.0;   // tr(Sigma^-1 C)
  };
  double score(const Channel& channel, const Eigen::VectorXd& y,
               const Eigen::VectorXd* z) const;

  int dim_;
  Eigen::VectorXd fc_mean_;
  Eigen::LLT<Eigen::MatrixXd> fc_llt_;
  double constant_ = 0.0;  // (d/2) log 2 pi + (1/2) log det Sigma
  Eigen::VectorXd obs_bias_;
  Eigen::VectorXd fc_bias_;
  Channel joint_;
  Channel obs_only_;
};

// --- Generic Monte Carlo corrector ---
// Estimates the posterior expectation of a base score by averaging
// base_score over n posterior draws.  Deterministic given the seed and
// independent of any parallel decomposition.  n >= 2 required so a
// standard error exists.

McScore mc_vee_score(const std::function<double(double)>& base_score,
                     const GaussianParams& posterior, std::size_t n,
                     RngSeed seed);
McScore mc_vee_score(const std::function<double(double)>& base_score,
                     const GammaParams& posterior, std::size_t n, RngSeed seed);
McScore mc_vee_score(
    const std::function<double(const Eigen::VectorXd&)>& base_score,
    const MvGaussianParams& posterior, std::size_t n, RngSeed seed);

}  // namespace scorelab

#endif  // SCORELAB_SCORES_HPP_
