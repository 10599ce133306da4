// Copyright 2026 The paulisift Authors
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

#ifndef PAULISIFT_SRC_METRICS_H_
#define PAULISIFT_SRC_METRICS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "src/channel.h"
#include "src/peeler.h"

namespace paulisift {

// Declared run parameters the bounds are computed from; never fitted.
struct BoundParams {
  double xi = 0.0;        // oracle noise stddev
  uint64_t num_bins = 0;  // B
  uint64_t sparsity = 0;  // declared s
};

struct LabelError {
  uint64_t label = 0;
  double truth = 0.0;
  double estimate = 0.0;
  double rel_error = 0.0;  // (estimate - truth) / truth, 0/0 treated as 0
};

struct RecoveryReport {
  uint32_t n = 0;
  double linf = 0.0;  // over the union of supports
  double tv = 0.0;    // half 1-norm; identity taken as 1 - sum(non-identity)
  std::vector<LabelError> per_label;        // union support, sorted by label
  std::vector<uint64_t> false_positives;    // recovered, truth below eps0
  std::vector<uint64_t> false_negatives;    // truth >= eps0, not recovered
  double bound_linf = 0.0;  // 2 xi / sqrt(B)
  double bound_tv = 0.0;    // s xi / sqrt(B)
  bool linf_within_bound = false;
  bool tv_within_bound = false;
  uint64_t query_count = 0;
  double wall_time_ms = 0.0;  // diagnostic only; not serialized
};

RecoveryReport compare(const SparsePauliChannel& truth,
                       const RecoveryResult& rec, double eps0,
                       const BoundParams& bounds);

// Report JSON (stable ordering, config embedded when given) and a flat CSV
// with one row per union-support label.
void save_report(const RecoveryReport& report, const std::string& path,
                 const nlohmann::ordered_json* config = nullptr);
void save_report_csv(const RecoveryReport& report, const std::string& path);

}  // namespace paulisift

#endif  // PAULISIFT_SRC_METRICS_H_
