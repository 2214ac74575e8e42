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

#ifndef SCORELAB_REPORT_HPP_
#define SCORELAB_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "scorelab/experiments.hpp"
#include "scorelab/rng.hpp"

namespace scorelab {

// Provenance block embedded in every serialized run.
struct RunMetadata {
  RngSeed seed;
  std::uint64_t config_hash = 0;
  std::string version;
};

// Shortest decimal form with 9 significant digits, '.' separator,
// locale-independent.
std::string format_significant(double value);

// RFC-4180 field quoting (quotes fields containing comma, quote, CR or
// LF; doubles embedded quotes).
std::string csv_field(const std::string& raw);

// 64-bit FNV-1a over raw bytes; used to fingerprint config files.
std::uint64_t fnv1a64(std::string_view bytes);

// Fixed-width lowercase-hex rendering of a hash.
std::string hash_hex(std::uint64_t value);

// Long-format experiment table: one "summary" record per correction
// stream plus one "inequality" record per compared pair.
std::string experiment_csv(const McSummary& summary,
                           const std::optional<InequalityReport>& inequality,
                           const RunMetadata& metadata);

// Same content as experiment_csv with stable (alphabetical) key order.
std::string experiment_json(const McSummary& summary,
                            const std::optional<InequalityReport>& inequality,
                            const RunMetadata& metadata);

// Long-format density table with columns (label, kind, x, density):
// curve points, one "marker" row at the shared corrected-score mean,
// "warning" rows for under-covering grids, and one "metadata" row.
std::string density_csv(const DensityCurveSet& curves,
                        const RunMetadata& metadata);

// Human-oriented one-line digest printed after an experiment run.
std::string one_line_summary(const McSummary& summary,
                             const std::optional<InequalityReport>& inequality);

}  // namespace scorelab

#endif  // SCORELAB_REPORT_HPP_
