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

#include "scorelab/report.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace scorelab {
namespace {

// RFC 4180 prescribes CRLF record separators.
constexpr const char* kCrlf = "\r\n";

std::string u64_string(std::uint64_t value) {
  std::array<char, 24> buffer{};
  const auto result =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

nlohmann::json summary_entries_json(const McSummary& summary) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& entry : summary.entries) {
    entries.push_back({
        {"correction", correction_label(entry.correction)},
        {"mean", entry.mean},
        {"mean_std_error", entry.mean_std_error},
        {"variance", entry.variance},
        {"variance_std_error", entry.variance_std_error},
    });
  }
  return entries;
}

std::string pair_label(const InequalityReport::Pair& pair) {
  return correction_label(pair.upper) + ">=" + correction_label(pair.lower);
}

}  // namespace

std::string format_significant(double value) {
  std::array<char, 40> buffer{};
  const auto result =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                    std::chars_format::general, 9);
  return std::string(buffer.data(), result.ptr);
}

std::string csv_field(const std::string& raw) {
  const bool needs_quoting =
      raw.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quoting) return raw;
  std::string quoted = "\"";
  for (char c : raw) {
    quoted += c;
    if (c == '"') quoted += '"';
  }
  quoted += '"';
  return quoted;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string hash_hex(std::uint64_t value) {
  std::array<char, 17> buffer{};
  std::snprintf(buffer.data(), buffer.size(), "%016llx",
                static_cast<unsigned long long>(value));
  return std::string(buffer.data(), 16);
}

std::string experiment_csv(const McSummary& summary,
                           const std::optional<InequalityReport>& inequality,
                           const RunMetadata& metadata) {
  std::string out =
      "record,label,n,mean,mean_std_error,variance,variance_std_error,"
      "margin_se,holds,seed,stream,config_hash,version";
  out += kCrlf;
  const std::string provenance = u64_string(summary.seed.seed) + "," +
                                 u64_string(summary.seed.stream) + "," +
                                 hash_hex(metadata.config_hash) + "," +
                                 csv_field(metadata.version);
  const std::string n_string = u64_string(summary.n);
  for (const auto& entry : summary.entries) {
    out += "summary," + csv_field(correction_label(entry.correction)) + "," +
           n_string + "," + format_significant(entry.mean) + "," +
           format_significant(entry.mean_std_error) + "," +
           format_significant(entry.variance) + "," +
           format_significant(entry.variance_std_error) + ",,," + provenance;
    out += kCrlf;
  }
  if (inequality) {
    for (const auto& pair : inequality->pairs) {
      out += "inequality," + csv_field(pair_label(pair)) + "," + n_string +
             ",,,,," + format_significant(pair.margin_se) + "," +
             (pair.holds ? "true" : "false") + "," + provenance;
      out += kCrlf;
    }
  }
  return out;
}

std::string experiment_json(const McSummary& summary,
                            const std::optional<InequalityReport>& inequality,
                            const RunMetadata& metadata) {
  nlohmann::json doc;
  doc["metadata"] = {
      {"config_hash", hash_hex(metadata.config_hash)},
      {"seed", summary.seed.seed},
      {"stream", summary.seed.stream},
      {"version", metadata.version},
  };
  doc["n"] = summary.n;
  doc["summaries"] = summary_entries_json(summary);
  if (inequality) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& pair : inequality->pairs) {
      pairs.push_back({
          {"holds", pair.holds},
          {"lower", correction_label(pair.lower)},
          {"lower_variance", pair.lower_variance},
          {"margin_se", pair.margin_se},
          {"upper", correction_label(pair.upper)},
          {"upper_variance", pair.upper_variance},
      });
    }
    doc["inequality"] = {{"holds", inequality->holds}, {"pairs", pairs}};
  } else {
    doc["inequality"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

std::string density_csv(const DensityCurveSet& curves,
                        const RunMetadata& metadata) {
  std::string out = "label,kind,x,density";
  out += kCrlf;
  for (const DensityCurve& curve : curves.curves) {
    const std::string kind = curve.kind == DensityCurve::Kind::kAnalytic
                                 ? "analytic"
                                 : "kernel_estimate";
    const std::string label = csv_field(curve.label);
    for (std::size_t i = 0; i < curve.abscissae.size(); ++i) {
      out += label + "," + kind + "," +
             format_significant(curve.abscissae[i]) + "," +
             format_significant(curve.ordinates[i]);
      out += kCrlf;
    }
  }
  out += "common-mean,marker," + format_significant(curves.common_mean) + ",";
  out += kCrlf;
  for (const std::string& warning : curves.warnings) {
    out += csv_field(warning) + ",warning,,";
    out += kCrlf;
  }
  out += csv_field("seed=" + u64_string(metadata.seed.seed) +
                   ";stream=" + u64_string(metadata.seed.stream) +
                   ";config-hash=" + hash_hex(metadata.config_hash) +
                   ";version=" + metadata.version) +
         ",metadata,,";
  out += kCrlf;
  return out;
}

std::string one_line_summary(
    const McSummary& summary,
    const std::optional<InequalityReport>& inequality) {
  std::ostringstream out;
  out << "n=" << summary.n << " seed=" << summary.seed.seed << "/"
      << summary.seed.stream;
  for (const auto& entry : summary.entries) {
    out << " | " << correction_label(entry.correction)
        << " mean=" << format_significant(entry.mean)
        << " var=" << format_significant(entry.variance);
  }
  if (inequality) {
    out << " | ordering " << (inequality->holds ? "holds" : "violated");
  }
  return out.str();
}

}  // namespace scorelab
