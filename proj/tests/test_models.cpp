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

#include "doctest.h"
#include "scorelab/errors.hpp"
#include "scorelab/moments.hpp"

namespace scorelab {
namespace {

TEST_CASE("Model A posterior is the precision-weighted combination") {
  const ModelA model{{1.0, 4.0}, 1.0};
  const GaussianParams post = model_a_posterior(model, 2.0);
  // mean = (omega^2 mu0 + sigma0^2 y) / (sigma0^2 + omega^2) = 9/5,
  // variance = sigma0^2 omega^2 / (sigma0^2 + omega^2) = 4/5.
  CHECK(post.mean == doctest::Approx(1.8).epsilon(1e-14));
  CHECK(post.variance == doctest::Approx(0.8).epsilon(1e-14));

  const GaussianParams marginal = model_a_marginal_y(model);
  CHECK(marginal.mean == doctest::Approx(1.0));
  CHECK(marginal.variance == doctest::Approx(5.0));
}

TEST_CASE("Model A posterior collapses exactly at zero noise") {
  const ModelA model{{1.0, 4.0}, 0.0};
  const GaussianParams post = model_a_posterior(model, 2.75);
  // Bitwise, not approximately: the zero-noise branch must reproduce the
  // observation so downstream scores collapse sample-by-sample.
  CHECK(post.mean == 2.75);
  CHECK(post.variance == 0.0);
}

TEST_CASE("Model B posterior is the conjugate gamma update") {
  const ModelB model{{2.0, 1.0}, {3.0, 2.0}};
  const GammaParams post = model_b_posterior(model, 1.0);
  CHECK(post.shape == doctest::Approx(5.0));
  CHECK(post.rate == doctest::Approx(3.0));
  const GammaParams post2 = model_b_posterior(model, 4.0);
  CHECK(post2.shape == doctest::Approx(5.0));
  CHECK(post2.rate == doctest::Approx(1.5));
  CHECK_THROWS_AS(model_b_posterior(model, 0.0), DomainError);
  CHECK_THROWS_AS(model_b_posterior(model, -2.0), DomainError);
}

TEST_CASE("Model A joint draws have the marginal moments") {
  const ModelA model{{1.0, 4.0}, 1.0};
  const CounterRng rng({77, 0});
  MomentAccumulator xs, ys;
  MomentAccumulator cross;  // accumulate x*y to estimate covariance
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const ScalarJointDraw draw = model_a_joint_draw(model, rng, i);
    xs.add(draw.x);
    ys.add(draw.y);
    cross.add(draw.x * draw.y);
  }
  CHECK(std::abs(xs.mean - 1.0) < 4.0 * 2.0 / std::sqrt(n));
  CHECK(xs.variance() == doctest::Approx(4.0).epsilon(0.03));
  CHECK(std::abs(ys.mean - 1.0) < 4.0 * std::sqrt(5.0) / std::sqrt(n));
  CHECK(ys.variance() == doctest::Approx(5.0).epsilon(0.03));
  // Cov(X, Y) = V[X] = 4.
  CHECK(cross.mean - xs.mean * ys.mean == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("Model A zero-noise draws satisfy y == x bitwise") {
  const ModelA model{{1.0, 4.0}, 0.0};
  const CounterRng rng({13, 0});
  for (int i = 0; i < 1000; ++i) {
    const ScalarJointDraw draw = model_a_joint_draw(model, rng, i);
    CHECK(draw.y == draw.x);
  }
}

TEST_CASE("Model B joint draws have multiplicative-error moments") {
  const ModelB model{{2.0, 1.0}, {3.0, 2.0}};
  const CounterRng rng({5, 5});
  MomentAccumulator xs, ys, ratio;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const ScalarJointDraw draw = model_b_joint_draw(model, rng, i);
    REQUIRE(draw.x > 0.0);
    REQUIRE(draw.y > 0.0);
    xs.add(draw.x);
    ys.add(draw.y);
    ratio.add(draw.y / draw.x);
  }
  // E[X] = 2, E[eps] = scale/(shape-1) = 1, E[Y] = E[X] E[eps] = 2.
  CHECK(xs.mean == doctest::Approx(2.0).epsilon(0.03));
  CHECK(ratio.mean == doctest::Approx(1.0).epsilon(0.03));
  CHECK(ys.mean == doctest::Approx(2.0).epsilon(0.04));
}

TEST_CASE("EIV posterior matches the scalar Gaussian posterior at d=1") {
  EivModel model;
  model.truth.mean = Eigen::VectorXd::Constant(1, 1.0);
  model.truth.covariance = Eigen::MatrixXd::Constant(1, 1, 4.0);
  model.obs_bias = Eigen::VectorXd::Zero(1);
  model.obs_cov = Eigen::MatrixXd::Constant(1, 1, 1.0);
  model.fc_bias = Eigen::VectorXd::Zero(1);
  model.fc_cov = Eigen::MatrixXd::Constant(1, 1, 1e8);

  const Eigen::VectorXd y = Eigen::VectorXd::Constant(1, 2.0);
  const MvGaussianParams obs_only = eiv_posterior_obs_only(model, y);
  const ModelA scalar{{1.0, 4.0}, 1.0};
  const GaussianParams ref = model_a_posterior(scalar, 2.0);
  CHECK(obs_only.mean[0] == doctest::Approx(ref.mean).epsilon(1e-12));
  CHECK(obs_only.covariance(0, 0) ==
        doctest::Approx(ref.variance).epsilon(1e-12));

  // With an uninformative forecast channel the joint posterior reduces
  // to the observation-only posterior.
  const Eigen::VectorXd z = Eigen::VectorXd::Constant(1, -3.0);
  const MvGaussianParams joint = eiv_posterior(model, y, z);
  CHECK(joint.mean[0] == doctest::Approx(ref.mean).epsilon(1e-6));
  CHECK(joint.covariance(0, 0) ==
        doctest::Approx(ref.variance).epsilon(1e-6));
}

TEST_CASE("EIV posterior combines both channels with precision weights") {
  EivModel model;
  model.truth.mean = Eigen::Vector2d(0.0, 0.0);
  model.truth.covariance = Eigen::Matrix2d::Identity();
  model.obs_bias = Eigen::Vector2d(0.5, 0.0);
  model.obs_cov = Eigen::Matrix2d::Identity();
  model.fc_bias = Eigen::Vector2d(0.0, -1.0);
  model.fc_cov = Eigen::Matrix2d::Identity() * 2.0;

  const Eigen::Vector2d y(1.5, 1.0);
  const Eigen::Vector2d z(1.0, 0.0);
  const MvGaussianParams post = eiv_posterior(model, y, z);
  // Diagonal case: precision 1/1 + 1/1 + 1/2 = 2.5 per coordinate;
  // mean = C (Delta^-1 (y - alpha) + Omega^-1 (z - beta) + SigmaX^-1 mu).
  CHECK(post.covariance(0, 0) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(post.covariance(1, 1) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(post.covariance(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(post.mean[0] == doctest::Approx(0.4 * (1.0 + 0.5)).epsilon(1e-12));
  CHECK(post.mean[1] == doctest::Approx(0.4 * (1.0 + 0.5)).epsilon(1e-12));
}

TEST_CASE("EIV sampler reproduces channel moments and is deterministic") {
  EivModel model;
  model.truth.mean = Eigen::Vector2d(1.0, -1.0);
  model.truth.covariance = Eigen::Matrix2d{{1.0, 0.3}, {0.3, 2.0}};
  model.obs_bias = Eigen::Vector2d(0.2, 0.0);
  model.obs_cov = Eigen::Matrix2d::Identity() * 0.5;
  model.fc_bias = Eigen::Vector2d(0.0, 0.1);
  model.fc_cov = Eigen::Matrix2d::Identity() * 1.5;

  const EivSampler sampler(model);
  const CounterRng rng({31, 2});
  MomentAccumulator y0, z1, x0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const EivJointDraw draw = sampler.draw(rng, i);
    x0.add(draw.x[0]);
    y0.add(draw.y[0]);
    z1.add(draw.z[1]);
  }
  CHECK(x0.mean == doctest::Approx(1.0).epsilon(0.03));
  // E[Y] = mu + alpha, E[Z] = mu + beta.
  CHECK(y0.mean == doctest::Approx(1.2).epsilon(0.03));
  CHECK(z1.mean == doctest::Approx(-0.9).epsilon(0.05));
  CHECK(y0.variance() == doctest::Approx(1.5).epsilon(0.05));

  const EivJointDraw again = sampler.draw(rng, 12345);
  const EivJointDraw same = sampler.draw(rng, 12345);
  CHECK((again.x - same.x).norm() == 0.0);
  CHECK((again.y - same.y).norm() == 0.0);
  CHECK((again.z - same.z).norm() == 0.0);
}

TEST_CASE("sample_model helpers are deterministic in the seed") {
  const ModelA a{{0.0, 1.0}, 0.5};
  const auto pairs1 = sample_model_a(a, 500, {1, 1});
  const auto pairs2 = sample_model_a(a, 500, {1, 1});
  REQUIRE(pairs1.size() == 500);
  bool equal = true;
  for (std::size_t i = 0; i < pairs1.size(); ++i) {
    equal = equal && pairs1[i].x == pairs2[i].x && pairs1[i].y == pairs2[i].y;
  }
  CHECK(equal);

  const ModelB b{{2.0, 1.0}, {3.0, 2.0}};
  const auto bp = sample_model_b(b, 100, {2, 0});
  REQUIRE(bp.size() == 100);

  EivModel e;
  e.truth.mean = Eigen::Vector2d(0.0, 0.0);
  e.truth.covariance = Eigen::Matrix2d::Identity();
  e.obs_bias = Eigen::Vector2d::Zero();
  e.obs_cov = Eigen::Matrix2d::Identity();
  e.fc_bias = Eigen::Vector2d::Zero();
  e.fc_cov = Eigen::Matrix2d::Identity();
  const auto ep = sample_eiv(e, 100, {2, 0});
  REQUIRE(ep.size() == 100);
}

TEST_CASE("model validation rejects inconsistent parameters") {
  CHECK_THROWS_AS((ModelA{{0.0, 4.0}, -1.0}.validate()), DomainError);
  CHECK_THROWS_AS((ModelB{{0.0, 1.0}, {3.0, 2.0}}.validate()), DomainError);
  EivModel mismatched;
  mismatched.truth.mean = Eigen::Vector2d(0.0, 0.0);
  mismatched.truth.covariance = Eigen::Matrix2d::Identity();
  mismatched.obs_bias = Eigen::Vector2d::Zero();
  mismatched.obs_cov = Eigen::MatrixXd::Identity(3, 3);
  mismatched.fc_bias = Eigen::Vector2d::Zero();
  mismatched.fc_cov = Eigen::Matrix2d::Identity();
  CHECK_THROWS_AS(mismatched.validate(), DomainError);
}

}  // namespace
}  // namespace scorelab
