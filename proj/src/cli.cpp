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

#include "scorelab/cli.hpp"

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "scorelab/config_io.hpp"
#include "scorelab/errors.hpp"
#include "scorelab/experiments.hpp"
#include "scorelab/report.hpp"
#include "scorelab/scores.hpp"
#include "scorelab/version.hpp"

namespace scorelab {
namespace {

struct ScoreArgs {
  std::string score_kind;
  std::string correction;
  std::string model = "none";
  std::string obs;
  std::optional<std::string> fc_obs;
  // Forecast families (exactly one must be selected by its flags).
  std::optional<std::string> fc_mean;  // scalar or comma-separated vector
  std::optional<double> fc_sd;
  std::optional<double> fc_shape;
  std::optional<double> fc_rate;
  std::optional<std::string> fc_cov;
  // Additive-Gaussian model parameters.
  std::optional<double> mu0;
  std::optional<double> sigma0;
  std::optional<double> omega2;
  // Multiplicative-gamma model parameters.
  std::optional<double> alpha0;
  std::optional<double> beta0;
  std::optional<double> err_shape;
  std::optional<double> err_scale;
  // Error-in-variables model parameters.
  std::optional<std::string> x_mean;
  std::optional<std::string> x_cov;
  std::optional<std::string> obs_bias;
  std::optional<std::string> obs_cov;
  std::optional<std::string> fcerr_bias;
  std::optional<std::string> fcerr_cov;
};

struct RunArgs {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool check_inequality = false;
};

template <typename T>
const T& require_flag(const std::optional<T>& value, const char* flag) {
  if (!value) {
    throw ConfigError(std::string("missing required flag ") + flag);
  }
  return *value;
}

std::vector<double> parse_number_list(const std::string& text,
                                      const char* flag) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::string token = text.substr(start, end - start);
    const std::size_t first = token.find_first_not_of(" \t");
    const std::size_t last = token.find_last_not_of(" \t");
    if (first == std::string::npos) {
      throw ConfigError(std::string(flag) + ": empty number in list");
    }
    token = token.substr(first, last - first + 1);
    try {
      std::size_t consumed = 0;
      values.push_back(std::stod(token, &consumed));
      if (consumed != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ConfigError(std::string(flag) + ": cannot parse number '" +
                        token + "'");
    }
    start = end + 1;
  }
  return values;
}

double parse_scalar(const std::string& text, const char* flag) {
  const std::vector<double> values = parse_number_list(text, flag);
  if (values.size() != 1) {
    throw ConfigError(std::string(flag) + ": expected a single number");
  }
  return values[0];
}

Eigen::VectorXd parse_vector(const std::string& text, const char* flag) {
  const std::vector<double> values = parse_number_list(text, flag);
  Eigen::VectorXd out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = values[i];
  }
  return out;
}

// Rows separated by ';', entries by ',':  "1,0;0,1" is the 2x2 identity.
Eigen::MatrixXd parse_matrix(const std::string& text, const char* flag) {
  std::vector<std::vector<double>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    rows.push_back(parse_number_list(text.substr(start, end - start), flag));
    start = end + 1;
  }
  const std::size_t cols = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != cols) {
      throw ConfigError(std::string(flag) + ": rows must have equal length");
    }
  }
  Eigen::MatrixXd out(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
    }
  }
  return out;
}

enum class FcFamily { kGaussian, kGamma, kMvGaussian };

FcFamily forecast_family(const ScoreArgs& args) {
  const int gaussian = args.fc_sd.has_value() ? 1 : 0;
  const int gamma =
      (args.fc_shape.has_value() || args.fc_rate.has_value()) ? 1 : 0;
  const int mv = args.fc_cov.has_value() ? 1 : 0;
  if (gaussian + gamma + mv != 1) {
    throw ConfigError(
        "select exactly one forecast family: --fc-mean/--fc-sd (Gaussian), "
        "--fc-shape/--fc-rate (gamma), or --fc-mean/--fc-cov (multivariate "
        "Gaussian)");
  }
  if (gaussian) return FcFamily::kGaussian;
  if (gamma) return FcFamily::kGamma;
  return FcFamily::kMvGaussian;
}

template <typename Params>
void validate_as_config(const Params& params, const char* what) {
  try {
    params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid ") + what + ": " + e.what());
  }
}

GaussianParams gaussian_forecast_from(const ScoreArgs& args) {
  const double mean =
      parse_scalar(require_flag(args.fc_mean, "--fc-mean"), "--fc-mean");
  const double sd = require_flag(args.fc_sd, "--fc-sd");
  if (!(sd > 0.0)) throw ConfigError("--fc-sd must be positive");
  const GaussianParams f{mean, sd * sd};
  validate_as_config(f, "forecast");
  return f;
}

GammaParams gamma_forecast_from(const ScoreArgs& args) {
  const GammaParams f{require_flag(args.fc_shape, "--fc-shape"),
                      require_flag(args.fc_rate, "--fc-rate")};
  validate_as_config(f, "forecast");
  return f;
}

MvGaussianParams mv_forecast_from(const ScoreArgs& args) {
  MvGaussianParams f;
  f.mean = parse_vector(require_flag(args.fc_mean, "--fc-mean"), "--fc-mean");
  f.covariance =
      parse_matrix(require_flag(args.fc_cov, "--fc-cov"), "--fc-cov");
  validate_as_config(f, "forecast");
  return f;
}

ModelA model_a_from(const ScoreArgs& args) {
  const double sigma0 = require_flag(args.sigma0, "--sigma0");
  ModelA model;
  model.truth = GaussianParams{require_flag(args.mu0, "--mu0"),
                               sigma0 * sigma0};
  model.noise_variance = require_flag(args.omega2, "--omega2");
  validate_as_config(model, "model");
  return model;
}

ModelB model_b_from(const ScoreArgs& args) {
  ModelB model;
  model.truth = GammaParams{require_flag(args.alpha0, "--alpha0"),
                            require_flag(args.beta0, "--beta0")};
  model.error = InvGammaParams{require_flag(args.err_shape, "--err-shape"),
                               require_flag(args.err_scale, "--err-scale")};
  validate_as_config(model, "model");
  return model;
}

EivModel eiv_model_from(const ScoreArgs& args) {
  EivModel model;
  model.truth.mean =
      parse_vector(require_flag(args.x_mean, "--x-mean"), "--x-mean");
  model.truth.covariance =
      parse_matrix(require_flag(args.x_cov, "--x-cov"), "--x-cov");
  const Eigen::Index d = model.truth.mean.size();
  model.obs_cov =
      parse_matrix(require_flag(args.obs_cov, "--obs-cov"), "--obs-cov");
  model.obs_bias = args.obs_bias
                       ? parse_vector(*args.obs_bias, "--obs-bias")
                       : Eigen::VectorXd::Zero(d).eval();
  // The forecast-error channel only matters for the joint correction;
  // default to unit covariance and zero bias otherwise.
  model.fc_cov = args.fcerr_cov
                     ? parse_matrix(*args.fcerr_cov, "--fcerr-cov")
                     : Eigen::MatrixXd::Identity(d, d).eval();
  model.fc_bias = args.fcerr_bias
                      ? parse_vector(*args.fcerr_bias, "--fcerr-bias")
                      : Eigen::VectorXd::Zero(d).eval();
  validate_as_config(model, "model");
  return model;
}

ScoreValue score_none(const ScoreArgs& args, bool log_kind) {
  switch (forecast_family(args)) {
    case FcFamily::kGaussian: {
      const GaussianParams f = gaussian_forecast_from(args);
      const double y = parse_scalar(args.obs, "--obs");
      return log_kind ? log_score_gaussian(f, y) : crps_gaussian(f, y);
    }
    case FcFamily::kGamma: {
      const GammaParams f = gamma_forecast_from(args);
      const double y = parse_scalar(args.obs, "--obs");
      return log_kind ? log_score_gamma(f, y) : crps_gamma(f, y);
    }
    case FcFamily::kMvGaussian: {
      if (!log_kind) {
        throw ConfigError(
            "CRPS is not available for multivariate Gaussian forecasts");
      }
      const MvGaussianParams f = mv_forecast_from(args);
      return log_score_mv_gaussian(f, parse_vector(args.obs, "--obs"));
    }
  }
  throw ConfigError("unreachable forecast family");
}

ScoreValue score_wedge(const ScoreArgs& args, bool log_kind) {
  if (!log_kind) {
    throw ConfigError("the wedge correction exists only for the log score");
  }
  if (args.model != "none" && args.model != "additive-gaussian") {
    throw ConfigError(
        "the wedge correction requires the additive-Gaussian model");
  }
  if (forecast_family(args) != FcFamily::kGaussian) {
    throw ConfigError("the wedge correction takes a Gaussian forecast");
  }
  const GaussianParams f = gaussian_forecast_from(args);
  const double y = parse_scalar(args.obs, "--obs");
  const double omega2 = require_flag(args.omega2, "--omega2");
  if (omega2 < 0.0) throw ConfigError("--omega2 must be nonnegative");
  return wedge_log_score_gaussian(f, y, omega2);
}

ScoreValue score_vee(const ScoreArgs& args, bool log_kind) {
  if (args.model == "none") {
    throw ConfigError(
        "the vee correction requires --model (the correction is defined by "
        "the observation-error model)");
  }
  if (args.model == "additive-gaussian") {
    const GaussianParams f = gaussian_forecast_from(args);
    const double y = parse_scalar(args.obs, "--obs");
    const ModelA model = model_a_from(args);
    return log_kind ? vee_log_score_gaussian(f, y, model)
                    : vee_crps_gaussian(f, y, model);
  }
  if (args.model == "multiplicative-gamma") {
    const GammaParams f = gamma_forecast_from(args);
    const double y = parse_scalar(args.obs, "--obs");
    const ModelB model = model_b_from(args);
    return log_kind ? vee_log_score_gamma(f, y, model)
                    : vee_crps_gamma(f, y, model, QuadratureSpec{});
  }
  // eiv
  if (!log_kind) {
    throw ConfigError(
        "CRPS is not available for the error-in-variables model");
  }
  const MvGaussianParams f = mv_forecast_from(args);
  const EivModel model = eiv_model_from(args);
  return eiv_vee_log_score_obs_only(f, parse_vector(args.obs, "--obs"),
                                    model);
}

ScoreValue score_vee_joint(const ScoreArgs& args, bool log_kind) {
  if (args.model != "eiv") {
    throw ConfigError(
        "the joint vee correction requires --model eiv (it conditions on "
        "both the observation and the forecast-side measurement)");
  }
  if (!log_kind) {
    throw ConfigError(
        "CRPS is not available for the error-in-variables model");
  }
  if (!args.fcerr_cov) {
    throw ConfigError("the joint vee correction requires --fcerr-cov");
  }
  const MvGaussianParams f = mv_forecast_from(args);
  const EivModel model = eiv_model_from(args);
  const Eigen::VectorXd y = parse_vector(args.obs, "--obs");
  const Eigen::VectorXd z =
      parse_vector(require_flag(args.fc_obs, "--fc-obs"), "--fc-obs");
  return eiv_vee_log_score(f, y, z, model);
}

int cmd_score(const ScoreArgs& args) {
  const bool log_kind = args.score_kind == "log";
  ScoreValue result;
  if (args.correction == "none") {
    result = score_none(args, log_kind);
  } else if (args.correction == "wedge") {
    result = score_wedge(args, log_kind);
  } else if (args.correction == "vee") {
    result = score_vee(args, log_kind);
  } else {
    result = score_vee_joint(args, log_kind);
  }
  nlohmann::json out;
  out["value"] = result.value;
  out["numeric_error"] = result.numeric_error;
  out["score_kind"] = args.score_kind;
  out["correction"] = args.correction;
  std::cout << out.dump() << "\n";
  return 0;
}

void write_output_file(const std::string& path, const std::string& payload) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open output file '" + path + "'");
  }
  out << payload;
  out.flush();
  if (!out.good()) {
    throw IoError("cannot write output file '" + path + "'");
  }
}

// Seed precedence: --seed flag, then config "seed", then SCORELAB_SEED,
// then zero.
void resolve_seed(LoadedConfig& loaded,
                  const std::optional<std::uint64_t>& seed_flag) {
  if (seed_flag) {
    loaded.experiment.seed.seed = *seed_flag;
    return;
  }
  if (loaded.seed_in_config) return;
  const char* env = std::getenv("SCORELAB_SEED");
  if (env == nullptr) return;
  const std::string text(env);
  std::uint64_t value = 0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw ConfigError("SCORELAB_SEED must be an unsigned 64-bit integer");
  }
  loaded.experiment.seed.seed = value;
}

LoadedConfig load_with_overrides(const RunArgs& args) {
  LoadedConfig loaded = load_experiment_config(args.config_path);
  if (args.out) loaded.options.out = *args.out;
  if (args.format) loaded.options.format = *args.format;
  if (args.threads) loaded.options.threads = *args.threads;
  if (args.check_inequality) loaded.options.check_inequality = true;
  resolve_seed(loaded, args.seed);
  return loaded;
}

int cmd_experiment(const RunArgs& args) {
  const LoadedConfig loaded = load_with_overrides(args);
  const McSummary summary =
      run_experiment(loaded.experiment, loaded.options.threads);
  std::optional<InequalityReport> inequality;
  if (loaded.options.check_inequality) {
    inequality = variance_inequality_from_summary(loaded.experiment, summary);
  }

  const RunMetadata metadata{loaded.experiment.seed, loaded.config_hash,
                             kVersion};
  const std::string payload =
      loaded.options.format == "json"
          ? experiment_json(summary, inequality, metadata)
          : experiment_csv(summary, inequality, metadata);
  if (loaded.options.out) {
    write_output_file(*loaded.options.out, payload);
    std::cout << one_line_summary(summary, inequality) << "\n";
  } else {
    std::cout << payload;
  }
  return 0;
}

int cmd_density(const RunArgs& args) {
  const LoadedConfig loaded = load_with_overrides(args);
  const DensityCurveSet curves = density_curves(loaded.experiment);
  const RunMetadata metadata{loaded.experiment.seed, loaded.config_hash,
                             kVersion};
  const std::string payload = density_csv(curves, metadata);
  for (const std::string& warning : curves.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  if (loaded.options.out) {
    write_output_file(*loaded.options.out, payload);
    std::cout << "density table with " << curves.curves.size()
              << " curve(s) written\n";
  } else {
    std::cout << payload;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Proper scoring rules with observation-error corrections"};
  app.name("scorelab");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ScoreArgs score_args;
  CLI::App* score = app.add_subcommand(
      "score", "Evaluate one score for one observation");
  score->add_option("--score", score_args.score_kind, "Score kind")
      ->required()
      ->check(CLI::IsMember({"log", "crps"}));
  score
      ->add_option("--correction", score_args.correction,
                   "Observation-error correction")
      ->required()
      ->check(CLI::IsMember({"none", "wedge", "vee", "vee-joint"}));
  score
      ->add_option("--model", score_args.model,
                   "Observation-error model the correction is built from")
      ->check(CLI::IsMember(
          {"none", "additive-gaussian", "multiplicative-gamma", "eiv"}));
  score
      ->add_option("--obs", score_args.obs,
                   "Observation (comma-separated in d dimensions)")
      ->required();
  score->add_option("--fc-obs", score_args.fc_obs,
                    "Forecast-side measurement z (vee-joint only)");
  score->add_option("--fc-mean", score_args.fc_mean,
                    "Forecast mean (scalar or comma-separated vector)");
  score->add_option("--fc-sd", score_args.fc_sd,
                    "Gaussian forecast standard deviation");
  score->add_option("--fc-shape", score_args.fc_shape,
                    "Gamma forecast shape");
  score->add_option("--fc-rate", score_args.fc_rate, "Gamma forecast rate");
  score->add_option("--fc-cov", score_args.fc_cov,
                    "Forecast covariance, rows separated by ';'");
  score->add_option("--mu0", score_args.mu0, "Truth prior mean (Gaussian)");
  score->add_option("--sigma0", score_args.sigma0,
                    "Truth prior standard deviation (Gaussian)");
  score->add_option("--omega2", score_args.omega2,
                    "Observation noise variance");
  score->add_option("--alpha0", score_args.alpha0,
                    "Truth prior shape (gamma)");
  score->add_option("--beta0", score_args.beta0, "Truth prior rate (gamma)");
  score->add_option("--err-shape", score_args.err_shape,
                    "Multiplicative error shape (inverse-gamma)");
  score->add_option("--err-scale", score_args.err_scale,
                    "Multiplicative error scale (inverse-gamma)");
  score->add_option("--x-mean", score_args.x_mean, "Truth prior mean vector");
  score->add_option("--x-cov", score_args.x_cov,
                    "Truth prior covariance matrix");
  score->add_option("--obs-bias", score_args.obs_bias,
                    "Observation error bias (default zero)");
  score->add_option("--obs-cov", score_args.obs_cov,
                    "Observation error covariance");
  score->add_option("--fcerr-bias", score_args.fcerr_bias,
                    "Forecast-side error bias (default zero)");
  score->add_option("--fcerr-cov", score_args.fcerr_cov,
                    "Forecast-side error covariance");

  RunArgs experiment_args;
  CLI::App* experiment = app.add_subcommand(
      "experiment", "Run a seeded Monte Carlo score experiment");
  experiment
      ->add_option("--config", experiment_args.config_path,
                   "JSON experiment config")
      ->required();
  experiment->add_option("--out", experiment_args.out, "Output file path");
  experiment->add_option("--format", experiment_args.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  experiment->add_option("--seed", experiment_args.seed,
                         "Seed override (beats config and SCORELAB_SEED)");
  experiment->add_option("--threads", experiment_args.threads, "Worker cap")
      ->check(CLI::Range(1, 4096));
  experiment->add_flag("--check-inequality", experiment_args.check_inequality,
                       "Also report the variance-ordering comparison");

  RunArgs density_args;
  CLI::App* density = app.add_subcommand(
      "density", "Export score density curves for a config");
  density
      ->add_option("--config", density_args.config_path,
                   "JSON experiment config with a density grid")
      ->required();
  density->add_option("--out", density_args.out, "Output file path");
  density->add_option("--seed", density_args.seed,
                      "Seed override (beats config and SCORELAB_SEED)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (score->parsed()) return cmd_score(score_args);
    if (experiment->parsed()) return cmd_experiment(experiment_args);
    return cmd_density(density_args);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace scorelab
