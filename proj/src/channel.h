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

#ifndef PAULISIFT_SRC_CHANNEL_H_
#define PAULISIFT_SRC_CHANNEL_H_

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"
#include "src/pauli.h"

namespace paulisift {

// A Pauli channel with sparse support: label -> error rate. Rates are
// non-negative and sum to one (the identity rate is stored like any other
// entry, under label 0). Immutable after construction.
class SparsePauliChannel {
 public:
  SparsePauliChannel() = default;
  // Entries keyed by packed label bits; validates rates and the unit sum.
  SparsePauliChannel(uint32_t n, const std::map<uint64_t, double>& rates);

  uint32_t num_qubits() const { return n_; }
  size_t support_size() const { return labels_.size(); }
  const std::vector<uint64_t>& labels() const { return labels_; }
  const std::vector<double>& rates() const { return rates_; }
  double identity_rate() const;
  double rate_of(uint64_t label_bits) const;  // 0 when absent

  // lambda_k = sum over support of (-1)^{<k,m>} p_m.
  double eigenvalue(const PauliLabel& k) const;

  // Dense rate vector of length 4^n, indexed by packed label bits.
  std::vector<double> dense_rates() const;

  std::map<uint64_t, double> as_map() const;

 private:
  uint32_t n_ = 0;
  std::vector<uint64_t> labels_;         // sorted ascending
  std::vector<uint64_t> swapped_;        // half-swapped labels, for products
  std::vector<double> rates_;
};

// Synthetic channel with the identity plus s-1 uniformly random labels.
// Non-identity magnitudes are drawn log-uniform over [eps0, eps_max], floored
// at eps0, and rescaled so the identity keeps exactly p_id.
SparsePauliChannel random_sparse_channel(uint32_t n, uint64_t s, double eps0,
                                         double p_id, uint64_t seed,
                                         double eps_max = 1e-2);

// One decade of the synthetic tail profile: `count` labels with rates drawn
// log-uniform over [lo, hi).
struct TailBucket {
  double lo;
  double hi;
  uint64_t count;
};

// Synthetic channel matching published summary statistics of a 14-qubit
// dataset: identity mass p_id and decade counts of the rate tail. The top
// bucket's rates are rescaled to absorb exactly the leftover mass.
SparsePauliChannel tail_profile_channel(uint32_t n, double p_id,
                                        const std::vector<TailBucket>& profile,
                                        uint64_t seed);
// Default profile: ~200 rates above 1e-5, ~600 above 1e-6, ~2000 above 1e-8.
std::vector<TailBucket> default_tail_profile();

// Inserts or overwrites the given (label, rate) entries, then renormalizes by
// lowering the identity rate by the added mass. Throws when the identity
// would go negative.
SparsePauliChannel plant_paulis(
    const SparsePauliChannel& ch,
    const std::vector<std::pair<PauliLabel, double>>& plants);

// Splits each locally averaged mass (keyed by an n-bit pattern of nontrivial
// qubits) across its 3^weight compatible labels with a flat Dirichlet draw.
// Marginalizing the result over patterns reproduces the input exactly.
SparsePauliChannel extrapolate_local_averages(
    uint32_t n, const std::map<uint64_t, double>& avg, uint64_t seed);

// Pattern of nontrivial qubits for a label (bit q set iff qubit q nontrivial).
uint64_t weight_pattern(const PauliLabel& a);

// Noisy query access to channel eigenvalues. In Gaussian mode the noise is a
// pure function of (seed, index), so repeated queries of one index agree and
// results do not depend on evaluation order. Query counting is thread safe.
class EigenvalueOracle {
 public:
  enum class Mode { kExact, kGaussian };

  EigenvalueOracle(const SparsePauliChannel& ch, double noise_stddev,
                   uint64_t seed, Mode mode = Mode::kGaussian,
                   bool count_distinct_only = false);

  double query(const PauliLabel& k) const;

  double noise_stddev() const { return xi_; }
  uint64_t total_calls() const { return total_calls_.load(); }
  uint64_t distinct_queries() const;
  // Distinct indices when deduplication is enabled, otherwise total calls.
  uint64_t query_count() const;
  void reset_counters();

 private:
  const SparsePauliChannel& ch_;
  double xi_;
  uint64_t seed_;
  Mode mode_;
  bool count_distinct_only_;
  mutable std::atomic<uint64_t> total_calls_{0};
  mutable std::mutex distinct_mutex_;
  mutable std::unordered_set<uint64_t> distinct_;
};

// Channel JSON: {"n": int, "identity": float,
//                "rates": [{"pauli": word or x|z string, "p": float}, ...]},
// plus the tool version and, when given, the generating config.
void save_channel(const SparsePauliChannel& ch, const std::string& path,
                  const nlohmann::ordered_json* config = nullptr);
SparsePauliChannel load_channel(const std::string& path);

// Eigenvalue CSV with header "index,value"; indices rendered as x|z strings.
void save_eigenvalues(const std::vector<std::pair<PauliLabel, double>>& rows,
                      const std::string& path);
std::vector<std::pair<PauliLabel, double>> load_eigenvalues(
    const std::string& path);

}  // namespace paulisift

#endif  // PAULISIFT_SRC_CHANNEL_H_
