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

#ifndef SCORELAB_EXPERIMENTS_HPP_
#define SCORELAB_EXPERIMENTS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scorelab/models.hpp"
#include "scorelab/rng.hpp"
#include "scorelab/scores.hpp"

namespace scorelab {

// Which score stream of a joint draw to accumulate.
//   kNoneOnTruth: base score evaluated at the hidden truth x.
//   kNoneOnObs:   base score naively evaluated at the observation y.
//   kWedge:       wedge-corrected score of y (Model A log score only).
//   kVee:         posterior-expected base score given y.
//   kVeeJoint:    posterior-expected base score given (y, z) (EIV only).
enum class CorrectionTag {
  kNoneOnTruth,
  kNoneOnObs,
  kWedge,
  kVee,
  kVeeJoint,
};

using ModelVariant = std::variant<ModelA, ModelB, EivModel>;

struct DensityGrid {
  double lo = 0.0;
  double hi = 1.0;
  int points = 2;
};

struct ExperimentConfig {
  ModelVariant model;
  Forecast forecast;
  ScoreKind score_kind = ScoreKind::kLog;
  std::vector<CorrectionTag> corrections;
  std::size_t n = 0;
  RngSeed seed;
  std::optional<DensityGrid> density_grid;
  std::optional<double> bandwidth;

  // Throws ConfigError on structural problems (empty or duplicated
  // corrections, pairings the score catalogue does not support, forecast
  // family not matching the model family, bad grid).
  void validate() const;
};

// Per-correction Monte Carlo moments of one experiment.
struct McSummary {
  struct Entry {
    CorrectionTag correction = CorrectionTag::kNoneOnTruth;
    double mean = 0.0;
    double variance = 0.0;
    double mean_std_error = 0.0;
    double variance_std_error = 0.0;
  };
  std::vector<Entry> entries;
  std::size_t n = 0;
  RngSeed seed;
};

// Outcome of a variance-ordering comparison between two score streams.
struct InequalityReport {
  struct Pair {
    CorrectionTag upper;  // the stream whose variance should be >=
    CorrectionTag lower;
    double upper_variance = 0.0;
    double lower_variance = 0.0;
    // (upper - lower) / sqrt(se_upper^2 + se_lower^2).
    double margin_se = 0.0;
    bool holds = false;  // margin_se >= -2
  };
  std::vector<Pair> pairs;
  bool holds = false;  // all pairs hold
};

struct DensityCurve {
  enum class Kind { kAnalytic, kKernelEstimate };
  std::vector<double> abscissae;
  std::vector<double> ordinates;
  Kind kind = Kind::kAnalytic;
  std::string label;
};

// Density curves for every requested correction, the shared mean of the
// corrected scores (exported as a vertical-marker record), and any
// coverage warnings (emitted when the grid captures < 99% of a curve's
// mass).
struct DensityCurveSet {
  std::vector<DensityCurve> curves;
  double common_mean = 0.0;
  std::vector<std::string> warnings;
};

// Draws n joint samples from the model and accumulates every requested
// score stream over the same draws.  Deterministic given the seed: the
// sample budget is split into fixed 65536-draw chunks whose partial
// moments are merged in chunk order, so any thread count produces
// bitwise-identical results.
McSummary run_experiment(const ExperimentConfig& config, int threads = 1);

// Runs the experiment and compares the variance orderings implied by the
// requested corrections: wedge >= vee for Model A, and vee (observation
// only) >= vee-joint for the EIV model.  Requires at least two
// corrections forming at least one comparable pair.
InequalityReport check_variance_inequality(const ExperimentConfig& config,
                                           int threads = 1);

// The comparison step of check_variance_inequality applied to an
// already-computed summary (avoids re-running the draws when both the
// summary and the report are wanted).
InequalityReport variance_inequality_from_summary(
    const ExperimentConfig& config, const McSummary& summary);

// Raw score samples of one stream (used for kernel density estimates and
// distribution tests).
std::vector<double> score_samples(const ExperimentConfig& config,
                                  CorrectionTag tag);

// Curve data behind the score-density figures: exact affine noncentral
// chi-squared curves where the law is known (Model A log scores), kernel
// estimates from n Monte Carlo score samples otherwise.  Analytic curves
// use sqrt-spaced abscissae from the law's left edge so the edge
// singularity of the one-degree chi-squared density is resolved; kernel
// curves use the uniform grid.
DensityCurveSet density_curves(const ExperimentConfig& config);

// Gaussian-kernel density estimate of `samples` evaluated on `grid`.
// Linear binning (4096 bins spanning the data and grid) keeps the cost
// independent of the sample count.
std::vector<double> kernel_density(const std::vector<double>& samples,
                                   const std::vector<double>& grid,
                                   double bandwidth);

// Rule-of-thumb bandwidth 0.9 min(sd, IQR/1.34) n^(-1/5).
double bandwidth_rule_of_thumb(const std::vector<double>& samples);

// Presentation name of a correction stream ("base-on-truth",
// "base-on-marginal", "wedge", "vee", "vee-joint").
std::string correction_label(CorrectionTag tag);

}  // namespace scorelab

#endif  // SCORELAB_EXPERIMENTS_HPP_
