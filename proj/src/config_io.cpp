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

#include "scorelab/config_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "scorelab/errors.hpp"
#include "scorelab/report.hpp"

namespace scorelab {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& context, const std::string& what) {
  throw ConfigError("config: " + context + ": " + what);
}

const json& object_at(const json& parent, const std::string& key,
                      const std::string& context) {
  if (!parent.contains(key)) fail(context, "missing key '" + key + "'");
  const json& value = parent.at(key);
  if (!value.is_object()) fail(context, "'" + key + "' must be an object");
  return value;
}

void reject_unknown_keys(const json& obj, const std::string& context,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(context, "unknown key '" + item.key() + "'");
  }
}

double number_at(const json& parent, const std::string& key,
                 const std::string& context) {
  if (!parent.contains(key)) fail(context, "missing key '" + key + "'");
  const json& value = parent.at(key);
  if (!value.is_number()) fail(context, "'" + key + "' must be a number");
  return value.get<double>();
}

std::uint64_t unsigned_at(const json& parent, const std::string& key,
                          const std::string& context) {
  if (!parent.contains(key)) fail(context, "missing key '" + key + "'");
  const json& value = parent.at(key);
  if (!value.is_number_unsigned() &&
      !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
    fail(context, "'" + key + "' must be a nonnegative integer");
  }
  return value.get<std::uint64_t>();
}

Eigen::VectorXd vector_at(const json& parent, const std::string& key,
                          const std::string& context) {
  if (!parent.contains(key)) fail(context, "missing key '" + key + "'");
  const json& value = parent.at(key);
  if (!value.is_array() || value.empty()) {
    fail(context, "'" + key + "' must be a non-empty array of numbers");
  }
  Eigen::VectorXd out(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_number()) {
      fail(context, "'" + key + "' must contain only numbers");
    }
    out[static_cast<Eigen::Index>(i)] = value[i].get<double>();
  }
  return out;
}

Eigen::MatrixXd matrix_at(const json& parent, const std::string& key,
                          const std::string& context) {
  if (!parent.contains(key)) fail(context, "missing key '" + key + "'");
  const json& value = parent.at(key);
  if (!value.is_array() || value.empty()) {
    fail(context, "'" + key + "' must be an array of equal-length rows");
  }
  const std::size_t rows = value.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (!value[r].is_array() || value[r].empty()) {
      fail(context, "'" + key + "' must be an array of equal-length rows");
    }
    if (r == 0) {
      cols = value[r].size();
    } else if (value[r].size() != cols) {
      fail(context, "'" + key + "' rows must have equal length");
    }
  }
  Eigen::MatrixXd out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!value[r][c].is_number()) {
        fail(context, "'" + key + "' must contain only numbers");
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          value[r][c].get<double>();
    }
  }
  return out;
}

GaussianParams gaussian_block(const json& obj, const std::string& context) {
  reject_unknown_keys(obj, context, {"mean", "variance"});
  return GaussianParams{number_at(obj, "mean", context),
                        number_at(obj, "variance", context)};
}

GammaParams gamma_block(const json& obj, const std::string& context) {
  reject_unknown_keys(obj, context, {"shape", "rate"});
  return GammaParams{number_at(obj, "shape", context),
                     number_at(obj, "rate", context)};
}

MvGaussianParams mv_gaussian_block(const json& obj,
                                   const std::string& context) {
  reject_unknown_keys(obj, context, {"mean", "covariance"});
  MvGaussianParams params;
  params.mean = vector_at(obj, "mean", context);
  params.covariance = matrix_at(obj, "covariance", context);
  return params;
}

ModelVariant model_block(const json& obj) {
  const std::string context = "model";
  if (!obj.contains("type") || !obj.at("type").is_string()) {
    fail(context, "missing string key 'type'");
  }
  const std::string type = obj.at("type").get<std::string>();
  if (type == "additive-gaussian") {
    reject_unknown_keys(obj, context, {"type", "truth", "noise-variance"});
    ModelA model;
    model.truth = gaussian_block(object_at(obj, "truth", context),
                                 "model.truth");
    model.noise_variance = number_at(obj, "noise-variance", context);
    return model;
  }
  if (type == "multiplicative-gamma") {
    reject_unknown_keys(obj, context, {"type", "truth", "error"});
    ModelB model;
    model.truth = gamma_block(object_at(obj, "truth", context), "model.truth");
    const json& error = object_at(obj, "error", context);
    reject_unknown_keys(error, "model.error", {"shape", "scale"});
    model.error = InvGammaParams{number_at(error, "shape", "model.error"),
                                 number_at(error, "scale", "model.error")};
    return model;
  }
  if (type == "eiv") {
    reject_unknown_keys(obj, context,
                        {"type", "truth", "obs-bias", "obs-covariance",
                         "fc-bias", "fc-covariance"});
    EivModel model;
    model.truth =
        mv_gaussian_block(object_at(obj, "truth", context), "model.truth");
    model.obs_bias = vector_at(obj, "obs-bias", context);
    model.obs_cov = matrix_at(obj, "obs-covariance", context);
    model.fc_bias = vector_at(obj, "fc-bias", context);
    model.fc_cov = matrix_at(obj, "fc-covariance", context);
    return model;
  }
  fail(context, "unknown model type '" + type + "'");
}

Forecast forecast_block(const json& obj, const ModelVariant& model) {
  const std::string context = "forecast";
  if (std::holds_alternative<ModelA>(model)) {
    return gaussian_block(obj, context);
  }
  if (std::holds_alternative<ModelB>(model)) {
    return gamma_block(obj, context);
  }
  return mv_gaussian_block(obj, context);
}

}  // namespace

CorrectionTag correction_tag_from_label(const std::string& label) {
  // Config vocabulary ("none-on-truth": which argument the uncorrected
  // score is fed) plus the presentation labels used in output tables.
  if (label == "none-on-truth" || label == "base-on-truth") {
    return CorrectionTag::kNoneOnTruth;
  }
  if (label == "none-on-obs" || label == "base-on-marginal") {
    return CorrectionTag::kNoneOnObs;
  }
  if (label == "wedge") return CorrectionTag::kWedge;
  if (label == "vee") return CorrectionTag::kVee;
  if (label == "vee-joint") return CorrectionTag::kVeeJoint;
  throw ConfigError("config: unknown correction '" + label + "'");
}

LoadedConfig parse_experiment_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config: top level must be a JSON object");
  }
  reject_unknown_keys(doc, "top level",
                      {"model", "forecast", "score", "corrections", "n",
                       "seed", "stream", "density", "bandwidth", "out",
                       "format", "check-inequality", "threads"});

  LoadedConfig loaded;
  loaded.config_hash = fnv1a64(text);

  ExperimentConfig& config = loaded.experiment;
  config.model = model_block(object_at(doc, "model", "top level"));
  config.forecast =
      forecast_block(object_at(doc, "forecast", "top level"), config.model);

  if (!doc.contains("score") || !doc.at("score").is_string()) {
    throw ConfigError("config: missing string key 'score'");
  }
  const std::string score = doc.at("score").get<std::string>();
  if (score == "log") {
    config.score_kind = ScoreKind::kLog;
  } else if (score == "crps") {
    config.score_kind = ScoreKind::kCrps;
  } else {
    throw ConfigError("config: 'score' must be \"log\" or \"crps\"");
  }

  if (!doc.contains("corrections") || !doc.at("corrections").is_array()) {
    throw ConfigError("config: missing array key 'corrections'");
  }
  for (const json& item : doc.at("corrections")) {
    if (!item.is_string()) {
      throw ConfigError("config: 'corrections' must contain strings");
    }
    config.corrections.push_back(
        correction_tag_from_label(item.get<std::string>()));
  }

  config.n = unsigned_at(doc, "n", "top level");
  if (doc.contains("seed")) {
    config.seed.seed = unsigned_at(doc, "seed", "top level");
    loaded.seed_in_config = true;
  }
  if (doc.contains("stream")) {
    config.seed.stream = unsigned_at(doc, "stream", "top level");
  }

  if (doc.contains("density")) {
    const json& density = object_at(doc, "density", "top level");
    reject_unknown_keys(density, "density", {"lo", "hi", "points"});
    DensityGrid grid;
    grid.lo = number_at(density, "lo", "density");
    grid.hi = number_at(density, "hi", "density");
    const std::uint64_t points = unsigned_at(density, "points", "density");
    if (points > 1000000) fail("density", "'points' is implausibly large");
    grid.points = static_cast<int>(points);
    config.density_grid = grid;
  }
  if (doc.contains("bandwidth")) {
    config.bandwidth = number_at(doc, "bandwidth", "top level");
  }

  RunOptions& options = loaded.options;
  if (doc.contains("out")) {
    if (!doc.at("out").is_string()) {
      throw ConfigError("config: 'out' must be a string");
    }
    options.out = doc.at("out").get<std::string>();
  }
  if (doc.contains("format")) {
    if (!doc.at("format").is_string()) {
      throw ConfigError("config: 'format' must be a string");
    }
    options.format = doc.at("format").get<std::string>();
    if (options.format != "csv" && options.format != "json") {
      throw ConfigError("config: 'format' must be \"csv\" or \"json\"");
    }
  }
  if (doc.contains("check-inequality")) {
    if (!doc.at("check-inequality").is_boolean()) {
      throw ConfigError("config: 'check-inequality' must be a boolean");
    }
    options.check_inequality = doc.at("check-inequality").get<bool>();
  }
  if (doc.contains("threads")) {
    const std::uint64_t threads = unsigned_at(doc, "threads", "top level");
    if (threads < 1 || threads > 4096) {
      throw ConfigError("config: 'threads' must be between 1 and 4096");
    }
    options.threads = static_cast<int>(threads);
  }

  config.validate();
  return loaded;
}

LoadedConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("cannot read config file '" + path + "'");
  }
  return parse_experiment_config(buffer.str());
}

}  // namespace scorelab
