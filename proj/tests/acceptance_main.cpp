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
//
// End-to-end acceptance harness.  Each numbered check exercises one
// documented guarantee of the library against an independent oracle
// (closed-form constants, definitional Monte Carlo, analytic laws, the
// CLI contract) and prints exactly one [PASS]/[FAIL] line.  The harness
// reports what it measures; a guarantee that cannot hold is reported as
// a failure with the measured numbers, never patched over.
//
// Usage: scorelab_acceptance <path-to-cli-binary> <configs-dir>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scorelab/distributions.hpp"
#include "scorelab/experiments.hpp"
#include "scorelab/models.hpp"
#include "scorelab/moments.hpp"
#include "scorelab/numerics.hpp"
#include "scorelab/rng.hpp"
#include "scorelab/score_laws.hpp"
#include "scorelab/scores.hpp"

namespace scorelab {
namespace {

int g_failures = 0;

void report(int index, bool pass, const std::string& text) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", index,
              text.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(
    const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string fmt(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

// Two-sided Kolmogorov-Smirnov distance between a sample and a cdf.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double distance = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double value = cdf(samples[i]);
    distance = std::max(distance,
                        std::abs(value - static_cast<double>(i) / n));
    distance = std::max(
        distance, std::abs(static_cast<double>(i + 1) / n - value));
  }
  return distance;
}

ExperimentConfig reference_gaussian_config() {
  ExperimentConfig config;
  config.model = ModelA{{1.0, 4.0}, 1.0};
  config.forecast = GaussianParams{0.0, 4.0};
  config.score_kind = ScoreKind::kLog;
  config.n = 1000000;
  config.seed = RngSeed{20260815, 0};
  return config;
}

// Shared reference value: expected base score of the N(0,4) forecast
// under the N(1,4) truth, log sigma + (1 + 4)/8 + (1/2) log 2pi.
constexpr double kReferenceCommonMean = 2.2370857137646180512;

// --- 1: the corrected-score streams share the base-at-truth mean ---

void criterion_1() {
  ExperimentConfig config = reference_gaussian_config();
  config.corrections = {CorrectionTag::kNoneOnTruth, CorrectionTag::kWedge,
                        CorrectionTag::kVee};
  const auto start = std::chrono::steady_clock::now();
  const McSummary summary = run_experiment(config);
  const double elapsed = seconds_since(start);

  bool pass = elapsed < 10.0;
  double worst = 0.0;
  for (const auto& entry : summary.entries) {
    const double pulls =
        std::abs(entry.mean - kReferenceCommonMean) / entry.mean_std_error;
    worst = std::max(worst, pulls);
    pass = pass && pulls < 4.0;
  }
  report(1, pass,
         "mean equality at n=10^6: all three streams within 4 SE of " +
             fmt(kReferenceCommonMean) + " (worst " + fmt(worst) + " SE, " +
             fmt(elapsed) + " s)");
}

// --- 2: wedge/vee variance ordering and ratio across a 12-cell grid ---

void criterion_2() {
  const double spot = variance_ratio(GaussianParams{0.0, 4.0},
                                     ModelA{{1.0, 4.0}, 1.0});
  bool pass = std::abs(spot - 2.1033653846153846154) < 1e-12;
  double worst_margin = 1e300;
  double worst_ratio_err = 0.0;
  for (double omega : {0.5, 1.0, 2.0}) {
    for (double mu : {0.0, 1.0}) {
      for (double sigma : {1.0, 2.0}) {
        ExperimentConfig config;
        config.model = ModelA{{1.0, 4.0}, omega * omega};
        config.forecast = GaussianParams{mu, sigma * sigma};
        config.score_kind = ScoreKind::kLog;
        config.corrections = {CorrectionTag::kWedge, CorrectionTag::kVee};
        config.n = 1000000;
        config.seed = RngSeed{20260402, 0};
        const InequalityReport result = check_variance_inequality(config);
        worst_margin = std::min(worst_margin, result.pairs[0].margin_se);
        pass = pass && result.pairs[0].margin_se > -2.0;
        const double sample_ratio = result.pairs[0].upper_variance /
                                    result.pairs[0].lower_variance;
        const double analytic =
            variance_ratio(GaussianParams{mu, sigma * sigma},
                           ModelA{{1.0, 4.0}, omega * omega});
        const double rel = std::abs(sample_ratio / analytic - 1.0);
        worst_ratio_err = std::max(worst_ratio_err, rel);
        pass = pass && rel < 0.05;
      }
    }
  }
  report(2, pass,
         "wedge>=vee across the 12-cell sweep (worst margin " +
             fmt(worst_margin) + " SE, worst ratio error " +
             fmt(100.0 * worst_ratio_err) + "%, analytic spot " + fmt(spot) +
             ")");
}

// --- 3: the three Gaussian score laws match their sampled streams ---

void criterion_3() {
  ExperimentConfig config = reference_gaussian_config();
  config.corrections = {CorrectionTag::kWedge, CorrectionTag::kVee,
                        CorrectionTag::kNoneOnObs};
  config.n = 100000;
  const ScoreLawTriple laws =
      build_score_laws(std::get<GaussianParams>(config.forecast),
                       std::get<ModelA>(config.model));
  const AffineNcChiSq* law_for[3] = {&laws.law_wedge, &laws.law_vee,
                                     &laws.law_base_on_marginal};
  bool pass = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < config.corrections.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<double> samples =
        score_samples(config, config.corrections[i]);
    const AffineNcChiSq& law = *law_for[i];
    const double distance = ks_distance(
        samples, [&](double s) { return nc_chisq_cdf(law, s); });
    const double elapsed = seconds_since(start);
    worst = std::max(worst, distance);
    pass = pass && distance < 0.01 && elapsed < 5.0;
  }
  report(3, pass,
         "noncentral-chi-squared laws: KS distance < 0.01 at n=10^5 for "
         "wedge, vee, and base-at-observation (worst " +
             fmt(worst) + ")");
}

// --- 4: closed-form CRPS against the definitional Monte Carlo oracle ---

struct DefinitionalCrps {
  double estimate = 0.0;
  double std_error = 0.0;
};

template <typename Params, typename DrawFn>
DefinitionalCrps definitional_crps(const Params& f, double x, std::size_t n,
                                   RngSeed seed, const DrawFn& draw) {
  const CounterRng rng(seed);
  MomentAccumulator acc;
  for (std::size_t i = 0; i < n; ++i) {
    DrawStream stream(rng, i, RngDomain::kScoreMc);
    const double z = draw(f, stream);
    const double z_prime = draw(f, stream);
    acc.add(std::abs(z - x) - 0.5 * std::abs(z - z_prime));
  }
  return {acc.mean, acc.mean_std_error()};
}

void criterion_4() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = 10000000;
  bool pass =
      std::abs(crps_gaussian(GaussianParams{0.0, 1.0}, 0.0).value -
               0.23369497725510906893) < 1e-12;

  double worst = 0.0;
  const auto check = [&](double closed, const DefinitionalCrps& mc) {
    const double pulls = std::abs(closed - mc.estimate) / mc.std_error;
    worst = std::max(worst, pulls);
    pass = pass && pulls < 4.0;
  };

  const GaussianParams gaussians[3] = {{0.0, 1.0}, {0.0, 4.0}, {1.5, 0.25}};
  const double gaussian_obs[3] = {0.0, 1.0, 2.2};
  for (int i = 0; i < 3; ++i) {
    check(crps_gaussian(gaussians[i], gaussian_obs[i]).value,
          definitional_crps(gaussians[i], gaussian_obs[i], n,
                            RngSeed{5100 + static_cast<unsigned>(i), 0},
                            [](const GaussianParams& f, DrawStream& s) {
                              return gaussian_draw(f, s);
                            }));
  }
  const GammaParams gammas[3] = {{1.0, 1.0}, {2.0, 0.5}, {5.0, 2.0}};
  const double gamma_obs[3] = {1.0, 3.0, 2.0};
  for (int i = 0; i < 3; ++i) {
    check(crps_gamma(gammas[i], gamma_obs[i]).value,
          definitional_crps(gammas[i], gamma_obs[i], n,
                            RngSeed{5200 + static_cast<unsigned>(i), 0},
                            [](const GammaParams& f, DrawStream& s) {
                              return gamma_draw(f, s);
                            }));
  }
  const double elapsed = seconds_since(start);
  pass = pass && elapsed < 60.0;
  report(4, pass,
         "Gaussian and gamma CRPS closed forms within 4 SE of the "
         "definitional oracle at n=10^7 on 3+3 points (worst " +
             fmt(worst) + " SE, " + fmt(elapsed) + " s)");
}

// --- 5: vee-corrected CRPS is unbiased for the base score at truth ---

void criterion_5() {
  bool pass = true;
  double worst = 0.0;
  for (double fc_mean : {1.0, 0.0}) {  // perfect and displaced forecasts
    ExperimentConfig config;
    config.model = ModelA{{1.0, 4.0}, 1.0};
    config.forecast = GaussianParams{fc_mean, 4.0};
    config.score_kind = ScoreKind::kCrps;
    config.corrections = {CorrectionTag::kNoneOnTruth, CorrectionTag::kVee};
    config.n = 1000000;
    config.seed = RngSeed{20260501, 0};
    const McSummary summary = run_experiment(config);
    const double se =
        std::sqrt(summary.entries[0].mean_std_error *
                      summary.entries[0].mean_std_error +
                  summary.entries[1].mean_std_error *
                      summary.entries[1].mean_std_error);
    const double pulls =
        std::abs(summary.entries[0].mean - summary.entries[1].mean) / se;
    worst = std::max(worst, pulls);
    pass = pass && pulls < 4.0;
  }
  report(5, pass,
         "corrected CRPS mean equals base-at-truth CRPS mean within 4 "
         "combined SE on both forecast panels at n=10^6 (worst " +
             fmt(worst) + " SE)");
}

// --- 6: closed-form corrected gamma log score vs the MC corrector ---

void criterion_6() {
  const ModelB spot_model{{2.0, 1.0}, {3.0, 2.0}};
  bool pass = std::abs(vee_log_score_gamma(GammaParams{1.0, 1.0}, 1.0,
                                           spot_model)
                           .value -
                       5.0 / 3.0) < 1e-12;

  std::mt19937 gen(20260606);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * unit(gen);
  };
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const ModelB model{{uniform(0.5, 4.0), uniform(0.5, 3.0)},
                       {uniform(2.5, 6.0), uniform(0.5, 4.0)}};
    const GammaParams f{uniform(0.5, 4.0), uniform(0.5, 3.0)};
    const double y = uniform(0.2, 5.0);
    const double closed = vee_log_score_gamma(f, y, model).value;
    const McScore mc = mc_vee_score(
        [&](double x) { return log_score_gamma(f, x).value; },
        model_b_posterior(model, y), 1000000,
        RngSeed{6000 + static_cast<unsigned>(i), 0});
    const double pulls = std::abs(closed - mc.estimate) / mc.std_error;
    worst = std::max(worst, pulls);
    pass = pass && pulls < 4.0;
  }
  report(6, pass,
         "corrected gamma log score matches 10^6-draw posterior MC within "
         "4 SE on 20 random configurations, spot value 5/3 exact (worst " +
             fmt(worst) + " SE)");
}

// --- 7: corrected gamma CRPS quadrature vs the MC corrector ---

void criterion_7() {
  std::mt19937 gen(20260707);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * unit(gen);
  };
  bool pass = true;
  double worst_gap = 0.0;
  double worst_tighten = 0.0;
  for (int i = 0; i < 10; ++i) {
    const ModelB model{{uniform(0.5, 4.0), uniform(0.5, 3.0)},
                       {uniform(2.5, 6.0), uniform(0.5, 4.0)}};
    const GammaParams f{uniform(0.5, 4.0), uniform(0.5, 3.0)};
    const double y = uniform(0.2, 5.0);
    const double quad = vee_crps_gamma(f, y, model, QuadratureSpec{}).value;
    const McScore mc = mc_vee_score(
        [&](double x) { return crps_gamma(f, x).value; },
        model_b_posterior(model, y), 1000000,
        RngSeed{7000 + static_cast<unsigned>(i), 0});
    const double tolerance = std::max(4.0 * mc.std_error, 1e-4);
    worst_gap = std::max(worst_gap, std::abs(quad - mc.estimate) / tolerance);
    pass = pass && std::abs(quad - mc.estimate) < tolerance;

    const double tight =
        vee_crps_gamma(f, y, model, QuadratureSpec{1e-11, 4096, 8}).value;
    worst_tighten = std::max(worst_tighten, std::abs(tight - quad));
    pass = pass && std::abs(tight - quad) < 1e-6;
  }
  report(7, pass,
         "corrected gamma CRPS quadrature within max(4 SE, 1e-4) of "
         "posterior MC on 10 configurations (worst " + fmt(worst_gap) +
             "x tolerance); tolerance tightening shifts values by at most " +
             fmt(worst_tighten));
}

// --- 8: variance comparison of the two EIV corrected-score streams ---

void criterion_8() {
  EivModel model;
  model.truth.mean = Eigen::VectorXd::Zero(1);
  model.truth.covariance = Eigen::MatrixXd::Identity(1, 1);
  model.obs_bias = Eigen::VectorXd::Zero(1);
  model.obs_cov = Eigen::MatrixXd::Identity(1, 1);
  model.fc_bias = Eigen::VectorXd::Zero(1);
  model.fc_cov = Eigen::MatrixXd::Identity(1, 1);

  ExperimentConfig config;
  config.model = model;
  MvGaussianParams f;
  f.mean = Eigen::VectorXd::Constant(1, 0.3);
  f.covariance = Eigen::MatrixXd::Constant(1, 1, 2.0);
  config.forecast = f;
  config.score_kind = ScoreKind::kLog;
  config.corrections = {CorrectionTag::kVee, CorrectionTag::kVeeJoint};
  config.n = 1000000;
  config.seed = RngSeed{20260808, 0};

  const InequalityReport report_informative =
      check_variance_inequality(config);
  const auto& pair = report_informative.pairs[0];
  const bool claimed_ordering = report_informative.holds;

  EivModel uninformative = model;
  uninformative.fc_cov = Eigen::MatrixXd::Constant(1, 1, 1e8);
  config.model = uninformative;
  const McSummary summary = run_experiment(config);
  const double se = std::sqrt(
      summary.entries[0].variance_std_error *
          summary.entries[0].variance_std_error +
      summary.entries[1].variance_std_error *
          summary.entries[1].variance_std_error);
  const bool equality_clause = std::abs(summary.entries[0].variance -
                                        summary.entries[1].variance) <
                               4.0 * se;

  const bool pass = claimed_ordering && equality_clause;
  std::string text =
      "documented ordering V[vee] >= V[vee-joint] at n=10^6: measured "
      "V[vee]=" +
      fmt(pair.upper_variance) + " vs V[vee-joint]=" +
      fmt(pair.lower_variance) + " (margin " + fmt(pair.margin_se) +
      " SE)";
  if (!claimed_ordering) {
    text +=
        " -- the printed ordering cannot hold: conditioning on an "
        "informative second channel moves the corrected score toward the "
        "base score at the hidden truth, which raises its variance (law "
        "of total variance)";
  }
  text += "; uninformative-channel equality clause ";
  text += equality_clause ? "passes" : "fails";
  report(8, pass, text);
}

// --- 9: multivariate corrected log score reductions ---

void criterion_9() {
  bool pass = true;

  // (a) d=1 with an uninformative forecast channel reduces to the
  // scalar vee score.
  EivModel model;
  model.truth.mean = Eigen::VectorXd::Constant(1, 1.0);
  model.truth.covariance = Eigen::MatrixXd::Constant(1, 1, 4.0);
  model.obs_bias = Eigen::VectorXd::Zero(1);
  model.obs_cov = Eigen::MatrixXd::Constant(1, 1, 1.0);
  model.fc_bias = Eigen::VectorXd::Zero(1);
  model.fc_cov = Eigen::MatrixXd::Constant(1, 1, 1e8);
  MvGaussianParams f1;
  f1.mean = Eigen::VectorXd::Zero(1);
  f1.covariance = Eigen::MatrixXd::Constant(1, 1, 4.0);
  const GaussianParams f_scalar{0.0, 4.0};
  const ModelA model_a{{1.0, 4.0}, 1.0};
  double gap_a = 0.0;
  for (double y : {-1.0, 0.5, 2.5}) {
    const double joint =
        eiv_vee_log_score(f1, Eigen::VectorXd::Constant(1, y),
                          Eigen::VectorXd::Constant(1, 0.7), model)
            .value;
    const double scalar = vee_log_score_gaussian(f_scalar, y, model_a).value;
    gap_a = std::max(gap_a, std::abs(joint - scalar));
  }
  pass = pass && gap_a < 1e-6;

  // (b) the d=1 base score reduces to the scalar Gaussian log score.
  double gap_b = 0.0;
  for (double x : {-2.0, 0.0, 1.7}) {
    const double mv =
        log_score_mv_gaussian(f1, Eigen::VectorXd::Constant(1, x)).value;
    const double scalar = log_score_gaussian(f_scalar, x).value;
    gap_b = std::max(gap_b, std::abs(mv - scalar));
  }
  pass = pass && gap_b < 1e-14;

  // (c) d=2 joint score agrees with the generic MC corrector.
  EivModel model2;
  model2.truth.mean = (Eigen::VectorXd(2) << 0.0, 1.0).finished();
  model2.truth.covariance =
      (Eigen::MatrixXd(2, 2) << 1.0, 0.3, 0.3, 1.5).finished();
  model2.obs_bias = (Eigen::VectorXd(2) << 0.1, -0.2).finished();
  model2.obs_cov = (Eigen::MatrixXd(2, 2) << 0.8, 0.1, 0.1, 0.6).finished();
  model2.fc_bias = (Eigen::VectorXd(2) << -0.1, 0.0).finished();
  model2.fc_cov = (Eigen::MatrixXd(2, 2) << 1.2, 0.0, 0.0, 0.9).finished();
  MvGaussianParams f2;
  f2.mean = (Eigen::VectorXd(2) << 0.2, 0.8).finished();
  f2.covariance = (Eigen::MatrixXd(2, 2) << 2.0, 0.4, 0.4, 1.6).finished();
  const Eigen::VectorXd y2 = (Eigen::VectorXd(2) << 0.9, 0.4).finished();
  const Eigen::VectorXd z2 = (Eigen::VectorXd(2) << -0.3, 1.2).finished();
  const double closed = eiv_vee_log_score(f2, y2, z2, model2).value;
  const McScore mc = mc_vee_score(
      [&](const Eigen::VectorXd& x) {
        return log_score_mv_gaussian(f2, x).value;
      },
      eiv_posterior(model2, y2, z2), 1000000, RngSeed{20260909, 0});
  const double pulls = std::abs(closed - mc.estimate) / mc.std_error;
  pass = pass && pulls < 4.0;

  report(9, pass,
         "EIV reductions: scalar-vee agreement " + fmt(gap_a) +
             " (<1e-6), d=1 base-score agreement " + fmt(gap_b) +
             " (<1e-14), d=2 vs MC corrector " + fmt(pulls) + " SE (<4)");
}

// --- 10: zero observation noise collapses every corrected score ---

void criterion_10() {
  ExperimentConfig config;
  config.model = ModelA{{1.0, 4.0}, 0.0};
  config.forecast = GaussianParams{0.0, 4.0};
  config.n = 100000;
  config.seed = RngSeed{20261010, 0};

  double worst = 0.0;
  config.score_kind = ScoreKind::kLog;
  config.corrections = {CorrectionTag::kNoneOnTruth,
                        CorrectionTag::kNoneOnObs, CorrectionTag::kWedge,
                        CorrectionTag::kVee};
  {
    const auto base = score_samples(config, CorrectionTag::kNoneOnTruth);
    for (CorrectionTag tag : {CorrectionTag::kNoneOnObs,
                              CorrectionTag::kWedge, CorrectionTag::kVee}) {
      const auto stream = score_samples(config, tag);
      for (std::size_t i = 0; i < base.size(); ++i) {
        worst = std::max(worst, std::abs(stream[i] - base[i]));
      }
    }
  }
  config.score_kind = ScoreKind::kCrps;
  config.corrections = {CorrectionTag::kNoneOnTruth,
                        CorrectionTag::kNoneOnObs, CorrectionTag::kVee};
  {
    const auto base = score_samples(config, CorrectionTag::kNoneOnTruth);
    for (CorrectionTag tag :
         {CorrectionTag::kNoneOnObs, CorrectionTag::kVee}) {
      const auto stream = score_samples(config, tag);
      for (std::size_t i = 0; i < base.size(); ++i) {
        worst = std::max(worst, std::abs(stream[i] - base[i]));
      }
    }
  }
  report(10, worst <= 1e-12,
         "zero-noise collapse: log and CRPS corrected streams equal the "
         "base stream sample-by-sample at n=10^5 (max gap " +
             fmt(worst) + ")");
}

// --- 11: CLI determinism, density normalization, exit codes ---

int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void criterion_11(const std::string& cli, const std::string& configs) {
  bool pass = true;
  std::string detail;

  const std::string quiet = " > /dev/null 2>&1";
  const std::string out1 = "/tmp/scorelab_acceptance_run1.csv";
  const std::string out2 = "/tmp/scorelab_acceptance_run2.csv";
  const std::string config = configs + "/gaussian_log_offset_forecast.json";
  const int rc1 = run_command(cli + " experiment --config " + config +
                              " --out " + out1 + quiet);
  const int rc2 = run_command(cli + " experiment --config " + config +
                              " --out " + out2 + quiet);
  const std::string body1 = slurp(out1);
  if (rc1 != 0 || rc2 != 0 || body1.empty() || body1 != slurp(out2)) {
    pass = false;
    detail += " rerun-determinism failed;";
  }

  const std::string density_out = "/tmp/scorelab_acceptance_density.csv";
  const int rc3 = run_command(cli + " density --config " + configs +
                              "/gaussian_log_density.json --out " +
                              density_out + quiet);
  if (rc3 != 0) {
    pass = false;
    detail += " density export failed;";
  } else {
    // Trapezoid mass per analytic curve from the four-column CSV.
    std::ifstream in(density_out);
    std::string line;
    std::getline(in, line);  // header
    std::string current_label;
    double prev_x = 0.0, prev_d = 0.0, mass = 0.0;
    bool first = true;
    int curves_checked = 0;
    const auto flush_curve = [&]() {
      if (current_label.empty()) return;
      ++curves_checked;
      if (std::abs(mass - 1.0) > 0.01) {
        pass = false;
        detail += " " + current_label + " mass " + fmt(mass) + ";";
      }
    };
    while (std::getline(in, line)) {
      std::stringstream row(line);
      std::string label, kind, xs, ds;
      std::getline(row, label, ',');
      std::getline(row, kind, ',');
      std::getline(row, xs, ',');
      std::getline(row, ds, ',');
      if (kind != "analytic") continue;
      const double x = std::stod(xs);
      const double d = std::stod(ds);
      if (label != current_label) {
        flush_curve();
        current_label = label;
        mass = 0.0;
        first = true;
      }
      if (!first) mass += 0.5 * (d + prev_d) * (x - prev_x);
      prev_x = x;
      prev_d = d;
      first = false;
    }
    flush_curve();
    if (curves_checked != 3) {
      pass = false;
      detail += " expected 3 analytic curves, saw " +
                std::to_string(curves_checked) + ";";
    }
  }

  // Exit-code contract.
  const struct {
    std::string args;
    int expected;
  } cases[] = {
      {" score --score log --correction none --fc-mean 0 --fc-sd 2 --obs 1",
       0},
      {" score --score log --correction vee --model none --fc-mean 0 "
       "--fc-sd 2 --obs 1",
       2},
      {" score --score log --correction none --fc-shape 2 --fc-rate 1 "
       "--obs -1",
       3},
      {" experiment --config /nonexistent/scorelab.json", 4},
  };
  for (const auto& c : cases) {
    const int rc = run_command(cli + c.args + quiet);
    if (rc != c.expected) {
      pass = false;
      detail += " exit " + std::to_string(rc) + " != " +
                std::to_string(c.expected) + " for" + c.args + ";";
    }
  }

  std::remove(out1.c_str());
  std::remove(out2.c_str());
  std::remove(density_out.c_str());

  report(11, pass,
         pass ? "CLI reruns byte-identical, analytic density curves "
                "normalize to 1 +/- 0.01, exit codes 0/2/3/4 honored"
              : "CLI contract violations:" + detail);
}

}  // namespace
}  // namespace scorelab

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr,
                 "usage: %s <path-to-scorelab-cli> <configs-dir>\n",
                 argv[0]);
    return 64;
  }
  const std::string cli = argv[1];
  const std::string configs = argv[2];

  using namespace scorelab;
  const auto guard = [](int index, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      report(index, false, std::string("unexpected exception: ") + e.what());
    }
  };

  guard(1, [] { criterion_1(); });
  guard(2, [] { criterion_2(); });
  guard(3, [] { criterion_3(); });
  guard(4, [] { criterion_4(); });
  guard(5, [] { criterion_5(); });
  guard(6, [] { criterion_6(); });
  guard(7, [] { criterion_7(); });
  guard(8, [] { criterion_8(); });
  guard(9, [] { criterion_9(); });
  guard(10, [] { criterion_10(); });
  guard(11, [&] { criterion_11(cli, configs); });

  if (scorelab::g_failures != 0) {
    std::printf("%d of 11 criteria failed\n", scorelab::g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
