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

#ifndef PAULISIFT_SRC_PEELER_H_
#define PAULISIFT_SRC_PEELER_H_

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"
#include "src/binning.h"
#include "src/design.h"
#include "src/detector.h"

namespace paulisift {

enum class RecoveryStatus { kComplete, kIncomplete };

struct RecoveredEntry {
  double rate = 0.0;
  uint32_t round = 0;  // sweep in which the label was first found
  uint32_t group = 0;  // subsampling group it was found in
};

struct RecoveryResult {
  uint32_t n = 0;
  RecoveryStatus status = RecoveryStatus::kIncomplete;
  std::map<uint64_t, RecoveredEntry> estimates;
  uint32_t iterations_used = 0;
  uint64_t unresolved_bins = 0;
  double unresolved_mass = 0.0;  // total mean-square mass of unresolved bins
  uint64_t total_queries = 0;
  uint64_t distinct_queries = 0;
  uint32_t duplicate_rediscoveries = 0;
  // Rediscoveries whose value disagreed with the recorded one by > 4 nu.
  uint32_t duplicate_discrepancies = 0;

  double estimate_sum() const;
  bool contains(uint64_t label_bits) const { return estimates.count(label_bits) > 0; }
};

struct PeelConfig {
  uint32_t max_iterations = 0;  // 0: default_iterations on the bin count
  DetectorParams detector;
  double completion_tolerance = 0.0;  // 0: max(10 nu sqrt(found), 1e-9)

  // Noisy (heuristic) decoder schedule.
  double zero_sens = 0.0;              // 0: 9 nu^2 (3 sigma, squared)
  double singleton_sens = 0.25;        // initial relative magnitude band
  double zero_relax_divisor = 3.1622776601683795;  // one half-decade per relaxation
  double singleton_relax_step = 0.25;
  double zero_sens_floor = 0.0;        // 0: zero_sens / 100 (two decades)
  uint32_t max_rounds = 200;
};

// Iteration budget that comfortably covers the log-log convergence of the
// peeling recursion at desk scale.
uint32_t default_iterations(uint64_t sparsity_hint);

// Peeling decoder over detector verdicts. Sweeps groups in ascending (c, j)
// order; every confirmed single-ton is subtracted from its bins in all other
// groups with the matching variance-multiplier update. Stops after a sweep
// without new finds or when the iteration budget runs out. Mutates `bins`.
RecoveryResult peel(BinTensor& bins, const SubsamplingDesign& design,
                    const PeelConfig& cfg);

// Heuristic noisy decoder over zero + basis offsets: a bin passes when its
// offset magnitudes sit inside the relative band, the basis sign read-out
// hashes back to the bin index, and the sign-corrected mean is positive.
// Thresholds relax on stalls until the schedule is exhausted.
RecoveryResult noisy_peel(BinTensor& bins, const SubsamplingDesign& design,
                          const PeelConfig& cfg);

// Survival probability of a bipartite edge after l peeling rounds, for C
// groups and eta bins per nonzero rate: p_0 = 1,
// p_l = (1 - exp(-p_{l-1}/eta))^(C-1).
double predicted_edge_survival(size_t num_groups, double eta, uint32_t l);

// Result JSON ordered by descending rate then label; embeds `config` when
// provided.
void save_result(const RecoveryResult& result, const std::string& path,
                 const nlohmann::ordered_json* config = nullptr);

}  // namespace paulisift

#endif  // PAULISIFT_SRC_PEELER_H_
