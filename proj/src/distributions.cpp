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

#include "scorelab/distributions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "scorelab/errors.hpp"
#include "scorelab/numerics.hpp"

namespace scorelab {
namespace {

constexpr double kHalfLogTwoPi = 0.91893853320467274178;

void require_positive(double x, const char* name) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError(std::string(name) + " must be positive");
  }
}

void require_count(std::size_t n) {
  if (n == 0) {
    throw DomainError("sample count must be >= 1");
  }
}

// Core of the Marsaglia-Tsang method for Gamma(shape, 1) with shape >= 1.
double gamma_draw_unit_rate(double shape, DrawStream& stream) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = stream.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = stream.uniform01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

void GaussianParams::validate() const {
  if (!std::isfinite(mean)) {
    throw DomainError("Gaussian mean must be finite");
  }
  if (!std::isfinite(variance) || variance < 0.0) {
    throw DomainError("Gaussian variance must be nonnegative");
  }
}

void GammaParams::validate() const {
  require_positive(shape, "gamma shape");
  require_positive(rate, "gamma rate");
}

void InvGammaParams::validate() const {
  require_positive(shape, "inverse-gamma shape");
  require_positive(scale, "inverse-gamma scale");
}

void MvGaussianParams::validate() const {
  if (mean.size() == 0) {
    throw DomainError("multivariate Gaussian dimension must be >= 1");
  }
  if (covariance.rows() != mean.size() || covariance.cols() != mean.size()) {
    throw DomainError("covariance dimensions must match the mean vector");
  }
  if (!mean.allFinite() || !covariance.allFinite()) {
    throw DomainError("multivariate Gaussian parameters must be finite");
  }
  const double asymmetry =
      (covariance - covariance.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > 1e-12 * std::max(1.0, covariance.cwiseAbs().maxCoeff())) {
    throw DomainError("covariance must be symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success) {
    throw DomainError("covariance must be positive definite");
  }
}

void AffineNcChiSq::validate() const {
  if (!std::isfinite(offset)) {
    throw DomainError("affine chi-squared offset must be finite");
  }
  require_positive(scale, "affine chi-squared scale");
  if (!std::isfinite(noncentrality) || noncentrality < 0.0) {
    throw DomainError("noncentrality must be nonnegative");
  }
  if (dof != 1) {
    throw DomainError("only dof = 1 affine chi-squared laws are supported");
  }
}

double gaussian_pdf(const GaussianParams& params, double x) {
  params.validate();
  require_positive(params.variance, "Gaussian variance (for densities)");
  const double sd = std::sqrt(params.variance);
  return normal_pdf((x - params.mean) / sd) / sd;
}

double gaussian_cdf(const GaussianParams& params, double x) {
  params.validate();
  require_positive(params.variance, "Gaussian variance (for densities)");
  return normal_cdf((x - params.mean) / std::sqrt(params.variance));
}

double gamma_pdf(const GammaParams& params, double x) {
  params.validate();
  if (!std::isfinite(x)) throw DomainError("gamma_pdf argument must be finite");
  if (x < 0.0) return 0.0;
  if (x == 0.0) {
    // The density diverges for shape < 1 and equals the rate for shape 1;
    // report the limits.
    if (params.shape < 1.0) return std::numeric_limits<double>::infinity();
    return params.shape == 1.0 ? params.rate : 0.0;
  }
  return std::exp(params.shape * std::log(params.rate) +
                  (params.shape - 1.0) * std::log(x) - params.rate * x -
                  log_gamma(params.shape));
}

double gamma_cdf(const GammaParams& params, double x) {
  params.validate();
  if (!std::isfinite(x)) throw DomainError("gamma_cdf argument must be finite");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(params.shape, params.rate * x);
}

double inv_gamma_pdf(const InvGammaParams& params, double x) {
  params.validate();
  if (!std::isfinite(x)) {
    throw DomainError("inv_gamma_pdf argument must be finite");
  }
  if (x <= 0.0) return 0.0;
  return std::exp(params.shape * std::log(params.scale) -
                  (params.shape + 1.0) * std::log(x) - params.scale / x -
                  log_gamma(params.shape));
}

double inv_gamma_cdf(const InvGammaParams& params, double x) {
  params.validate();
  if (!std::isfinite(x)) {
    throw DomainError("inv_gamma_cdf argument must be finite");
  }
  if (x <= 0.0) return 0.0;
  return regularized_gamma_q(params.shape, params.scale / x);
}

double mv_gaussian_log_pdf(const MvGaussianParams& params,
                           const Eigen::VectorXd& x) {
  params.validate();
  if (x.size() != params.mean.size()) {
    throw DomainError("mv_gaussian_log_pdf argument dimension mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(params.covariance);
  const Eigen::VectorXd centered = x - params.mean;
  const Eigen::VectorXd solved = llt.solve(centered);
  double log_det = 0.0;
  for (int i = 0; i < params.dim(); ++i) {
    log_det += 2.0 * std::log(llt.matrixL()(i, i));
  }
  return -0.5 * (centered.dot(solved) + log_det) -
         params.dim() * kHalfLogTwoPi;
}

double nc_chisq_cdf(const AffineNcChiSq& law, double s) {
  law.validate();
  if (!std::isfinite(s)) throw DomainError("nc_chisq_cdf argument not finite");
  const double t = (s - law.offset) / law.scale;
  if (t <= 0.0) return 0.0;
  const double root_t = std::sqrt(t);
  const double root_l = std::sqrt(law.noncentrality);
  return normal_cdf(root_t - root_l) - normal_cdf(-root_t - root_l);
}

double nc_chisq_pdf(const AffineNcChiSq& law, double s) {
  law.validate();
  if (!std::isfinite(s)) throw DomainError("nc_chisq_pdf argument not finite");
  const double t = (s - law.offset) / law.scale;
  if (t <= 0.0) return 0.0;
  const double root_t = std::sqrt(t);
  const double root_l = std::sqrt(law.noncentrality);
  return (normal_pdf(root_t - root_l) + normal_pdf(root_t + root_l)) /
         (2.0 * root_t * law.scale);
}

double gaussian_draw(const GaussianParams& params, DrawStream& stream) {
  // variance == 0 yields the degenerate point mass; the normal variate is
  // still consumed so stream layouts do not depend on parameter values.
  return params.mean + std::sqrt(params.variance) * stream.normal();
}

double gamma_draw(const GammaParams& params, DrawStream& stream) {
  if (params.shape >= 1.0) {
    return gamma_draw_unit_rate(params.shape, stream) / params.rate;
  }
  // Boost: G(shape) = G(shape + 1) * U^(1/shape).
  const double boosted = gamma_draw_unit_rate(params.shape + 1.0, stream);
  const double u = stream.uniform01();
  return boosted * std::pow(u, 1.0 / params.shape) / params.rate;
}

double inv_gamma_draw(const InvGammaParams& params, DrawStream& stream) {
  const GammaParams reciprocal{params.shape, params.scale};
  return 1.0 / gamma_draw(reciprocal, stream);
}

Eigen::VectorXd mv_gaussian_draw(const MvGaussianParams& params,
                                 const Eigen::LLT<Eigen::MatrixXd>& llt,
                                 DrawStream& stream) {
  Eigen::VectorXd z(params.dim());
  for (int i = 0; i < params.dim(); ++i) {
    z(i) = stream.normal();
  }
  return params.mean + llt.matrixL() * z;
}

std::vector<double> sample_gaussian(const GaussianParams& params,
                                    std::size_t n, RngSeed seed) {
  params.validate();
  require_count(n);
  const CounterRng rng(seed);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    DrawStream stream(rng, i, RngDomain::kGeneric);
    out[i] = gaussian_draw(params, stream);
  }
  return out;
}

std::vector<double> sample_gamma(const GammaParams& params, std::size_t n,
                                 RngSeed seed) {
  params.validate();
  require_count(n);
  const CounterRng rng(seed);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    DrawStream stream(rng, i, RngDomain::kGeneric);
    out[i] = gamma_draw(params, stream);
  }
  return out;
}

std::vector<double> sample_inv_gamma(const InvGammaParams& params,
                                     std::size_t n, RngSeed seed) {
  params.validate();
  require_count(n);
  const CounterRng rng(seed);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    DrawStream stream(rng, i, RngDomain::kGeneric);
    out[i] = inv_gamma_draw(params, stream);
  }
  return out;
}

Eigen::MatrixXd sample_mv_gaussian(const MvGaussianParams& params,
                                   std::size_t n, RngSeed seed) {
  params.validate();
  require_count(n);
  Eigen::LLT<Eigen::MatrixXd> llt(params.covariance);
  if (llt.info() != Eigen::Success) {
    throw DomainError("covariance must be positive definite");
  }
  const CounterRng rng(seed);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), params.dim());
  for (std::size_t i = 0; i < n; ++i) {
    DrawStream stream(rng, i, RngDomain::kGeneric);
    out.row(static_cast<Eigen::Index>(i)) =
        mv_gaussian_draw(params, llt, stream).transpose();
  }
  return out;
}

}  // namespace scorelab
