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

#include "scorelab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <thread>

#include "scorelab/errors.hpp"
#include "scorelab/moments.hpp"
#include "scorelab/numerics.hpp"
#include "scorelab/score_laws.hpp"

namespace scorelab {
namespace {

constexpr std::size_t kChunkSize = 65536;

// Quadrature controls for the per-draw corrected gamma CRPS inside
// experiment sweeps.  The tolerance is far below any Monte Carlo standard
// error at feasible n, and the small initial panel count keeps the cost
// of a million smooth integrals reasonable; accuracy is still governed by
// the adaptive refinement.
constexpr QuadratureSpec kSweepQuadrature{1e-7, 2048, 2};

const GaussianParams& gaussian_forecast(const Forecast& f) {
  return std::get<GaussianParams>(f);
}
const GammaParams& gamma_forecast(const Forecast& f) {
  return std::get<GammaParams>(f);
}
const MvGaussianParams& mv_forecast(const Forecast& f) {
  return std::get<MvGaussianParams>(f);
}

template <typename Draw>
using Scorer = std::function<double(const Draw&)>;

Scorer<ScalarJointDraw> scalar_scorer(const ModelA& model,
                                      const GaussianParams& f, ScoreKind kind,
                                      CorrectionTag tag) {
  const bool log_kind = kind == ScoreKind::kLog;
  switch (tag) {
    case CorrectionTag::kNoneOnTruth:
      return [f, log_kind](const ScalarJointDraw& d) {
        return (log_kind ? log_score_gaussian(f, d.x) : crps_gaussian(f, d.x))
            .value;
      };
    case CorrectionTag::kNoneOnObs:
      return [f, log_kind](const ScalarJointDraw& d) {
        return (log_kind ? log_score_gaussian(f, d.y) : crps_gaussian(f, d.y))
            .value;
      };
    case CorrectionTag::kWedge:
      return [f, omega2 = model.noise_variance](const ScalarJointDraw& d) {
        return wedge_log_score_gaussian(f, d.y, omega2).value;
      };
    case CorrectionTag::kVee:
      return [f, model, log_kind](const ScalarJointDraw& d) {
        return (log_kind ? vee_log_score_gaussian(f, d.y, model)
                         : vee_crps_gaussian(f, d.y, model))
            .value;
      };
    default:
      throw ConfigError("correction is not defined for this model");
  }
}

Scorer<ScalarJointDraw> scalar_scorer(const ModelB& model,
                                      const GammaParams& f, ScoreKind kind,
                                      CorrectionTag tag) {
  const bool log_kind = kind == ScoreKind::kLog;
  switch (tag) {
    case CorrectionTag::kNoneOnTruth:
      return [f, log_kind](const ScalarJointDraw& d) {
        return (log_kind ? log_score_gamma(f, d.x) : crps_gamma(f, d.x)).value;
      };
    case CorrectionTag::kNoneOnObs:
      return [f, log_kind](const ScalarJointDraw& d) {
        return (log_kind ? log_score_gamma(f, d.y) : crps_gamma(f, d.y)).value;
      };
    case CorrectionTag::kVee:
      if (log_kind) {
        return [f, model](const ScalarJointDraw& d) {
          return vee_log_score_gamma(f, d.y, model).value;
        };
      }
      return [f, model](const ScalarJointDraw& d) {
        return vee_crps_gamma(f, d.y, model, kSweepQuadrature).value;
      };
    default:
      throw ConfigError("correction is not defined for this model");
  }
}

std::vector<Scorer<EivJointDraw>> eiv_scorers(
    const EivModel& model, const MvGaussianParams& f,
    const std::vector<CorrectionTag>& tags) {
  // Base-score pieces that never change across draws.
  struct BaseScorer {
    Eigen::VectorXd mean;
    Eigen::LLT<Eigen::MatrixXd> llt;
    double constant = 0.0;

    explicit BaseScorer(const MvGaussianParams& params) {
      constexpr double kHalfLogTwoPi = 0.91893853320467274178;
      mean = params.mean;
      llt.compute(params.covariance);
      double log_det = 0.0;
      for (int i = 0; i < params.dim(); ++i) {
        log_det += 2.0 * std::log(llt.matrixL()(i, i));
      }
      constant = 0.5 * log_det + params.dim() * kHalfLogTwoPi;
    }
    double operator()(const Eigen::VectorXd& x) const {
      const Eigen::VectorXd centered = x - mean;
      return 0.5 * centered.dot(llt.solve(centered)) + constant;
    }
  };
  const auto base = std::make_shared<BaseScorer>(f);
  const auto vee = std::make_shared<EivVeeLogScorer>(f, model);

  std::vector<Scorer<EivJointDraw>> out;
  out.reserve(tags.size());
  for (CorrectionTag tag : tags) {
    switch (tag) {
      case CorrectionTag::kNoneOnTruth:
        out.push_back([base](const EivJointDraw& d) { return (*base)(d.x); });
        break;
      case CorrectionTag::kNoneOnObs:
        out.push_back([base](const EivJointDraw& d) { return (*base)(d.y); });
        break;
      case CorrectionTag::kVee:
        out.push_back(
            [vee](const EivJointDraw& d) { return vee->obs_only(d.y); });
        break;
      case CorrectionTag::kVeeJoint:
        out.push_back(
            [vee](const EivJointDraw& d) { return vee->joint(d.y, d.z); });
        break;
      default:
        throw ConfigError("correction is not defined for this model");
    }
  }
  return out;
}

// Accumulates all score streams over the same draws.  Chunks are
// processed independently (possibly by different threads) and their
// partial moments merged in chunk order, so the reduction is bitwise
// independent of the thread count.
template <typename Draw, typename Gen>
std::vector<MomentAccumulator> accumulate_streams(
    std::size_t n, int threads, const Gen& gen,
    const std::vector<Scorer<Draw>>& scorers) {
  const std::size_t num_chunks = (n + kChunkSize - 1) / kChunkSize;
  const std::size_t num_streams = scorers.size();
  std::vector<std::vector<MomentAccumulator>> chunk_accs(
      num_chunks, std::vector<MomentAccumulator>(num_streams));

  const auto run_chunks = [&](std::size_t first, std::size_t stride,
                              std::exception_ptr* failure) {
    try {
      for (std::size_t c = first; c < num_chunks; c += stride) {
        const std::size_t begin = c * kChunkSize;
        const std::size_t end = std::min(n, begin + kChunkSize);
        for (std::size_t i = begin; i < end; ++i) {
          const Draw draw = gen(i);
          for (std::size_t s = 0; s < num_streams; ++s) {
            chunk_accs[c][s].add(scorers[s](draw));
          }
        }
      }
    } catch (...) {
      *failure = std::current_exception();
    }
  };

  const int worker_count =
      static_cast<int>(std::min<std::size_t>(threads, num_chunks));
  std::vector<std::exception_ptr> failures(
      static_cast<std::size_t>(std::max(worker_count, 1)));
  if (worker_count <= 1) {
    run_chunks(0, 1, &failures[0]);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (int w = 0; w < worker_count; ++w) {
      workers.emplace_back(run_chunks, static_cast<std::size_t>(w),
                           static_cast<std::size_t>(worker_count),
                           &failures[w]);
    }
    for (std::thread& t : workers) t.join();
  }
  for (const std::exception_ptr& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<MomentAccumulator> merged(num_streams);
  for (std::size_t c = 0; c < num_chunks; ++c) {
    for (std::size_t s = 0; s < num_streams; ++s) {
      merged[s].combine(chunk_accs[c][s]);
    }
  }
  return merged;
}

std::vector<MomentAccumulator> run_streams(const ExperimentConfig& config,
                                           const std::vector<CorrectionTag>& tags,
                                           int threads) {
  const CounterRng rng(config.seed);
  if (const auto* model = std::get_if<ModelA>(&config.model)) {
    std::vector<Scorer<ScalarJointDraw>> scorers;
    for (CorrectionTag tag : tags) {
      scorers.push_back(scalar_scorer(*model, gaussian_forecast(config.forecast),
                                      config.score_kind, tag));
    }
    return accumulate_streams<ScalarJointDraw>(
        config.n, threads,
        [model, &rng](std::size_t i) {
          return model_a_joint_draw(*model, rng, i);
        },
        scorers);
  }
  if (const auto* model = std::get_if<ModelB>(&config.model)) {
    std::vector<Scorer<ScalarJointDraw>> scorers;
    for (CorrectionTag tag : tags) {
      scorers.push_back(scalar_scorer(*model, gamma_forecast(config.forecast),
                                      config.score_kind, tag));
    }
    return accumulate_streams<ScalarJointDraw>(
        config.n, threads,
        [model, &rng](std::size_t i) {
          return model_b_joint_draw(*model, rng, i);
        },
        scorers);
  }
  const auto& model = std::get<EivModel>(config.model);
  const EivSampler sampler(model);
  const auto scorers =
      eiv_scorers(model, mv_forecast(config.forecast), tags);
  return accumulate_streams<EivJointDraw>(
      config.n, threads,
      [&sampler, &rng](std::size_t i) { return sampler.draw(rng, i); },
      scorers);
}

bool has_tag(const std::vector<CorrectionTag>& tags, CorrectionTag tag) {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

const McSummary::Entry& entry_for(const McSummary& summary,
                                  CorrectionTag tag) {
  for (const auto& entry : summary.entries) {
    if (entry.correction == tag) return entry;
  }
  throw ConfigError("internal: correction entry missing from summary");
}

double common_mean_for(const ExperimentConfig& config) {
  if (const auto* model = std::get_if<ModelA>(&config.model)) {
    const GaussianParams& f = gaussian_forecast(config.forecast);
    if (config.score_kind == ScoreKind::kLog) {
      return build_score_laws(f, *model).common_mean;
    }
    return crps_expectation_gaussian(f, model->truth);
  }
  if (const auto* model = std::get_if<ModelB>(&config.model)) {
    const GammaParams& f = gamma_forecast(config.forecast);
    if (config.score_kind == ScoreKind::kLog) {
      return log_score_gamma_expectation(f, model->truth);
    }
    return crps_expectation_gamma(f, model->truth, QuadratureSpec{}).value;
  }
  const auto& model = std::get<EivModel>(config.model);
  return log_score_mv_gaussian_expectation(mv_forecast(config.forecast),
                                           model.truth);
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    std::visit([](const auto& m) { m.validate(); }, model);
    std::visit([](const auto& f) { f.validate(); }, forecast);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid experiment parameters: ") +
                      e.what());
  }

  const bool is_model_a = std::holds_alternative<ModelA>(model);
  const bool is_model_b = std::holds_alternative<ModelB>(model);
  const bool is_eiv = std::holds_alternative<EivModel>(model);
  if (is_model_a) {
    if (!std::holds_alternative<GaussianParams>(forecast)) {
      throw ConfigError("the additive-Gaussian model takes a Gaussian forecast");
    }
    if (std::get<GaussianParams>(forecast).variance <= 0.0) {
      throw ConfigError("forecast variance must be positive");
    }
  }
  if (is_model_b && !std::holds_alternative<GammaParams>(forecast)) {
    throw ConfigError("the multiplicative-gamma model takes a gamma forecast");
  }
  if (is_eiv) {
    if (!std::holds_alternative<MvGaussianParams>(forecast)) {
      throw ConfigError(
          "the error-in-variables model takes a multivariate Gaussian "
          "forecast");
    }
    if (std::get<MvGaussianParams>(forecast).dim() !=
        std::get<EivModel>(model).dim()) {
      throw ConfigError("forecast dimension must match the model");
    }
    if (score_kind == ScoreKind::kCrps) {
      throw ConfigError(
          "CRPS is not available for the error-in-variables model");
    }
  }

  if (n < 2) {
    throw ConfigError("experiment sample count must be >= 2");
  }
  if (corrections.empty()) {
    throw ConfigError("at least one correction stream must be requested");
  }
  for (std::size_t i = 0; i < corrections.size(); ++i) {
    for (std::size_t j = i + 1; j < corrections.size(); ++j) {
      if (corrections[i] == corrections[j]) {
        throw ConfigError("duplicate correction stream requested");
      }
    }
  }
  for (CorrectionTag tag : corrections) {
    if (tag == CorrectionTag::kWedge &&
        !(is_model_a && score_kind == ScoreKind::kLog)) {
      throw ConfigError(
          "the wedge correction exists only for the additive-Gaussian log "
          "score");
    }
    if (tag == CorrectionTag::kVeeJoint && !is_eiv) {
      throw ConfigError(
          "the joint vee correction requires the error-in-variables model");
    }
  }

  if (density_grid) {
    if (!(density_grid->lo < density_grid->hi) ||
        !std::isfinite(density_grid->lo) || !std::isfinite(density_grid->hi)) {
      throw ConfigError("density grid must satisfy lo < hi");
    }
    if (density_grid->points < 2) {
      throw ConfigError("density grid needs at least two points");
    }
  }
  if (bandwidth && (!(*bandwidth > 0.0) || !std::isfinite(*bandwidth))) {
    throw ConfigError("bandwidth must be positive");
  }
}

McSummary run_experiment(const ExperimentConfig& config, int threads) {
  config.validate();
  if (threads < 1) {
    throw ConfigError("thread count must be >= 1");
  }
  const std::vector<MomentAccumulator> moments =
      run_streams(config, config.corrections, threads);

  McSummary summary;
  summary.n = config.n;
  summary.seed = config.seed;
  summary.entries.reserve(config.corrections.size());
  for (std::size_t s = 0; s < config.corrections.size(); ++s) {
    McSummary::Entry entry;
    entry.correction = config.corrections[s];
    entry.mean = moments[s].mean;
    entry.variance = moments[s].variance();
    entry.mean_std_error = moments[s].mean_std_error();
    entry.variance_std_error = moments[s].variance_std_error();
    summary.entries.push_back(entry);
  }
  return summary;
}

InequalityReport variance_inequality_from_summary(
    const ExperimentConfig& config, const McSummary& summary) {
  if (config.corrections.size() < 2) {
    throw ConfigError(
        "variance comparison needs at least two correction streams");
  }
  std::vector<std::pair<CorrectionTag, CorrectionTag>> pairs;
  if (has_tag(config.corrections, CorrectionTag::kWedge) &&
      has_tag(config.corrections, CorrectionTag::kVee)) {
    pairs.emplace_back(CorrectionTag::kWedge, CorrectionTag::kVee);
  }
  if (has_tag(config.corrections, CorrectionTag::kVee) &&
      has_tag(config.corrections, CorrectionTag::kVeeJoint)) {
    pairs.emplace_back(CorrectionTag::kVee, CorrectionTag::kVeeJoint);
  }
  if (pairs.empty()) {
    throw ConfigError(
        "requested corrections do not form a comparable variance pair");
  }

  InequalityReport report;
  report.holds = true;
  for (const auto& [upper, lower] : pairs) {
    const auto& hi = entry_for(summary, upper);
    const auto& lo = entry_for(summary, lower);
    InequalityReport::Pair pair;
    pair.upper = upper;
    pair.lower = lower;
    pair.upper_variance = hi.variance;
    pair.lower_variance = lo.variance;
    const double se = std::sqrt(hi.variance_std_error * hi.variance_std_error +
                                lo.variance_std_error * lo.variance_std_error);
    pair.margin_se = se > 0.0 ? (hi.variance - lo.variance) / se
                              : (hi.variance >= lo.variance ? 0.0 : -1e300);
    pair.holds = pair.margin_se >= -2.0;
    report.holds = report.holds && pair.holds;
    report.pairs.push_back(pair);
  }
  return report;
}

InequalityReport check_variance_inequality(const ExperimentConfig& config,
                                           int threads) {
  config.validate();
  return variance_inequality_from_summary(config,
                                          run_experiment(config, threads));
}

std::vector<double> score_samples(const ExperimentConfig& config,
                                  CorrectionTag tag) {
  config.validate();
  if (!has_tag(config.corrections, tag)) {
    throw ConfigError("requested stream is not part of the experiment");
  }
  const CounterRng rng(config.seed);
  std::vector<double> out;
  out.reserve(config.n);
  if (const auto* model = std::get_if<ModelA>(&config.model)) {
    const auto scorer = scalar_scorer(
        *model, gaussian_forecast(config.forecast), config.score_kind, tag);
    for (std::size_t i = 0; i < config.n; ++i) {
      out.push_back(scorer(model_a_joint_draw(*model, rng, i)));
    }
    return out;
  }
  if (const auto* model = std::get_if<ModelB>(&config.model)) {
    const auto scorer = scalar_scorer(
        *model, gamma_forecast(config.forecast), config.score_kind, tag);
    for (std::size_t i = 0; i < config.n; ++i) {
      out.push_back(scorer(model_b_joint_draw(*model, rng, i)));
    }
    return out;
  }
  const auto& model = std::get<EivModel>(config.model);
  const EivSampler sampler(model);
  const auto scorers = eiv_scorers(model, mv_forecast(config.forecast), {tag});
  for (std::size_t i = 0; i < config.n; ++i) {
    out.push_back(scorers[0](sampler.draw(rng, i)));
  }
  return out;
}

double bandwidth_rule_of_thumb(const std::vector<double>& samples) {
  if (samples.size() < 2) {
    throw DomainError("bandwidth rule needs at least two samples");
  }
  MomentAccumulator acc;
  for (double x : samples) acc.add(x);
  const double sd = std::sqrt(acc.variance());

  std::vector<double> sorted(samples);
  std::sort(sorted.begin(), sorted.end());
  const auto quantile = [&sorted](double p) {
    const double index = p * static_cast<double>(sorted.size() - 1);
    const std::size_t below = static_cast<std::size_t>(index);
    const double frac = index - static_cast<double>(below);
    if (below + 1 >= sorted.size()) return sorted.back();
    return sorted[below] * (1.0 - frac) + sorted[below + 1] * frac;
  };
  const double iqr = quantile(0.75) - quantile(0.25);

  const double scale = std::min(sd, iqr / 1.34);
  return 0.9 * scale *
         std::pow(static_cast<double>(samples.size()), -0.2);
}

std::vector<double> kernel_density(const std::vector<double>& samples,
                                   const std::vector<double>& grid,
                                   double bandwidth) {
  if (samples.empty()) {
    throw DomainError("kernel density needs at least one sample");
  }
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw DomainError("bandwidth must be positive");
  }
  const auto [min_it, max_it] =
      std::minmax_element(samples.begin(), samples.end());
  const double lo = *min_it;
  const double hi = *max_it;

  // Linear binning: each sample splits its unit mass between the two
  // nearest bin centers.  Bin width <= bandwidth / 4 keeps the binning
  // bias far below the kernel smoothing bias.
  const double range = std::max(hi - lo, bandwidth);
  std::size_t bins = static_cast<std::size_t>(
      std::clamp(std::ceil(4.0 * range / bandwidth), 4096.0, 262144.0));
  const double bin_width = range / static_cast<double>(bins - 1);
  std::vector<double> mass(bins, 0.0);
  for (double x : samples) {
    const double position = (x - lo) / bin_width;
    const std::size_t below =
        std::min(static_cast<std::size_t>(position), bins - 2);
    const double frac = position - static_cast<double>(below);
    mass[below] += 1.0 - frac;
    mass[below + 1] += frac;
  }

  const double norm =
      1.0 / (static_cast<double>(samples.size()) * bandwidth);
  constexpr double kInvSqrtTwoPi = 0.39894228040143267794;
  const double window = 8.0 * bandwidth;
  std::vector<double> density(grid.size(), 0.0);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double target = grid[g];
    const std::size_t first = static_cast<std::size_t>(std::max(
        0.0, std::floor((target - window - lo) / bin_width)));
    const std::size_t last = static_cast<std::size_t>(std::max(
        0.0,
        std::min(static_cast<double>(bins - 1),
                 std::ceil((target + window - lo) / bin_width))));
    double sum = 0.0;
    for (std::size_t b = first; b <= last && b < bins; ++b) {
      const double center = lo + static_cast<double>(b) * bin_width;
      const double u = (target - center) / bandwidth;
      sum += mass[b] * std::exp(-0.5 * u * u);
    }
    density[g] = sum * kInvSqrtTwoPi * norm;
  }
  return density;
}

std::string correction_label(CorrectionTag tag) {
  switch (tag) {
    case CorrectionTag::kNoneOnTruth:
      return "base-on-truth";
    case CorrectionTag::kNoneOnObs:
      return "base-on-marginal";
    case CorrectionTag::kWedge:
      return "wedge";
    case CorrectionTag::kVee:
      return "vee";
    case CorrectionTag::kVeeJoint:
      return "vee-joint";
  }
  throw ConfigError("unknown correction tag");
}

DensityCurveSet density_curves(const ExperimentConfig& config) {
  config.validate();
  if (!config.density_grid) {
    throw ConfigError("density export requires a density grid");
  }
  const DensityGrid grid = *config.density_grid;
  const std::size_t points = static_cast<std::size_t>(grid.points);
  const bool analytic = std::holds_alternative<ModelA>(config.model) &&
                        config.score_kind == ScoreKind::kLog;

  DensityCurveSet set;
  set.common_mean = common_mean_for(config);

  for (CorrectionTag tag : config.corrections) {
    DensityCurve curve;
    curve.label = correction_label(tag);
    if (analytic) {
      const auto& model = std::get<ModelA>(config.model);
      const GaussianParams& f = gaussian_forecast(config.forecast);
      const ScoreLawTriple laws = build_score_laws(f, model);
      AffineNcChiSq law;
      switch (tag) {
        case CorrectionTag::kWedge:
          law = laws.law_wedge;
          break;
        case CorrectionTag::kVee:
          law = laws.law_vee;
          break;
        case CorrectionTag::kNoneOnObs:
          law = laws.law_base_on_marginal;
          break;
        case CorrectionTag::kNoneOnTruth:
          // Law of the base score at the hidden truth: the same affine
          // chi-squared construction driven by the truth prior alone.
          law = AffineNcChiSq{
              0.5 * std::log(f.variance) + 0.91893853320467274178,
              model.truth.variance / (2.0 * f.variance),
              (model.truth.mean - f.mean) * (model.truth.mean - f.mean) /
                  model.truth.variance,
              1};
          break;
        default:
          throw ConfigError("correction is not defined for this model");
      }
      curve.kind = DensityCurve::Kind::kAnalytic;
      // sqrt-spaced abscissae concentrate points near the law's left
      // edge, where the one-degree chi-squared density is unbounded;
      // a uniform grid would badly underestimate the trapezoid mass.
      curve.abscissae.reserve(points);
      if (grid.lo <= law.offset) {
        const double span = grid.hi - law.offset;
        for (std::size_t j = 0; j < points; ++j) {
          const double u =
              static_cast<double>(j) / static_cast<double>(points - 1);
          curve.abscissae.push_back(law.offset + span * u * u);
        }
      } else {
        for (std::size_t j = 0; j < points; ++j) {
          const double u =
              static_cast<double>(j) / static_cast<double>(points - 1);
          curve.abscissae.push_back(grid.lo + (grid.hi - grid.lo) * u);
        }
      }
      curve.ordinates.reserve(points);
      for (double s : curve.abscissae) {
        curve.ordinates.push_back(nc_chisq_pdf(law, s));
      }
      const double coverage =
          nc_chisq_cdf(law, grid.hi) - nc_chisq_cdf(law, grid.lo);
      if (coverage < 0.99) {
        set.warnings.push_back(
            curve.label + ": grid covers only " +
            std::to_string(100.0 * coverage) + "% of the distribution mass");
      }
    } else {
      const std::vector<double> samples = score_samples(config, tag);
      const double bandwidth = config.bandwidth
                                   ? *config.bandwidth
                                   : bandwidth_rule_of_thumb(samples);
      curve.kind = DensityCurve::Kind::kKernelEstimate;
      curve.abscissae.reserve(points);
      for (std::size_t j = 0; j < points; ++j) {
        const double u =
            static_cast<double>(j) / static_cast<double>(points - 1);
        curve.abscissae.push_back(grid.lo + (grid.hi - grid.lo) * u);
      }
      curve.ordinates = kernel_density(samples, curve.abscissae, bandwidth);
      const std::size_t inside = static_cast<std::size_t>(std::count_if(
          samples.begin(), samples.end(),
          [&grid](double x) { return x >= grid.lo && x <= grid.hi; }));
      const double coverage = static_cast<double>(inside) /
                              static_cast<double>(samples.size());
      if (coverage < 0.99) {
        set.warnings.push_back(
            curve.label + ": grid covers only " +
            std::to_string(100.0 * coverage) + "% of the score samples");
      }
    }
    set.curves.push_back(std::move(curve));
  }
  return set;
}

}  // namespace scorelab
