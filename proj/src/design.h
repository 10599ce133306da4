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

#ifndef PAULISIFT_SRC_DESIGN_H_
#define PAULISIFT_SRC_DESIGN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "src/gf2.h"
#include "src/offset_code.h"
#include "src/pauli.h"
#include "src/wht.h"

namespace paulisift {

enum class OffsetKind { kRandom, kCoded, kBasis };

// The offsets of one subsampling group, in query order: the random block
// first, then the coded block, then (in heuristic designs) the zero offset
// followed by the 2n basis offsets.
struct OffsetSet {
  uint32_t n = 0;
  std::vector<uint64_t> offsets;  // 2n-bit strings
  std::vector<OffsetKind> kinds;
  size_t num_random = 0;  // leading random offsets
  size_t num_coded = 0;   // coded offsets after the random block

  size_t size() const { return offsets.size(); }
  size_t basis_begin() const { return num_random + num_coded; }
};

// One subsampling group: the hash matrix, its query-side modification, and
// the offsets. `hash_rows` holds the columns of `m` so that the bin index of
// a label is a sequence of parity dot products.
struct SubsamplingGroup {
  Gf2Matrix m;          // 2n x b, full column rank
  Gf2Matrix m_prime;    // 2n x b, J_n * m * J_b (J_b dropped for odd b)
  Gf2Matrix hash_rows;  // b x 2n, row k = column k of m
  Gf2Matrix prime_cols; // b x 2n, row k = column k of m_prime
  OffsetSet offsets;
  OffsetCodeSpec code;
  bool physical = false;

  uint64_t hash(uint64_t label_bits) const { return hash_rows.apply(label_bits); }
};

struct SubsamplingDesign {
  uint32_t n = 0;
  uint32_t b = 0;
  // Commutation-ordered bins when b is even, natural ordering otherwise.
  Ordering bin_ordering = Ordering::kSymplectic;
  std::vector<SubsamplingGroup> groups;

  uint64_t num_bins() const { return 1ull << b; }
  size_t num_groups() const { return groups.size(); }
};

// One randomized-benchmarking-style experiment: a full n-qubit stabilizer
// group given by its generators, plus a descriptive role.
struct Experiment {
  Gf2Matrix generators;  // rows x 2n
  std::string role;
  int group = 0;   // subsampling group this experiment belongs to
  int pair = -1;   // cycled qubit pair, when applicable
  int alt = -1;    // which alternative 2-qubit group

  // All 2^rows eigenvalue indices this experiment measures.
  std::vector<uint64_t> coverage() const;
};

struct ExperimentDesign {
  uint32_t n = 0;
  int type = 1;
  std::vector<Experiment> experiments;
  // Type II designs induce one subsampling matrix per qubit pair, with
  // 2^(n+2) bins of 2^(n-2) labels each.
  std::vector<Gf2Matrix> induced_matrices;

  size_t experiment_count() const { return experiments.size(); }
  // Union of all experiments' coverage sets, sorted.
  std::vector<uint64_t> coverage_union() const;
};

// The five two-qubit stabilizer groups whose bases form a complete set of
// mutually unbiased bases; entry g holds the two generators. The three
// single-qubit groups follow the same layout.
const std::vector<std::vector<PauliLabel>>& two_qubit_groups();
const std::vector<PauliLabel>& single_qubit_groups();

// Uniformly random full-column-rank 2n x b matrix (rejection sampling).
Gf2Matrix random_subsampling_matrix(uint32_t n, uint32_t b, uint64_t seed);

// P1 random offsets, then coded offsets built from `code` (filled in for the
// repetition scheme), then optionally the zero offset and the 2n basis
// offsets used by the heuristic read-out.
OffsetSet make_offsets(uint32_t n, size_t p1, OffsetCodeSpec& code,
                       bool include_basis, uint64_t seed);

// Assembles a group from an explicit hash matrix, deriving the query-side
// matrix and ordering from the bin width.
SubsamplingGroup make_group(uint32_t n, const Gf2Matrix& m, OffsetSet offsets,
                            OffsetCodeSpec code, bool physical);

// Random design for the provable pipeline: C independent subsampling
// matrices with random plus coded offsets (and basis offsets on request).
SubsamplingDesign random_design(uint32_t n, uint32_t b, size_t num_groups,
                                size_t p1, uint32_t repetitions,
                                bool include_basis, uint64_t seed);

// Design whose groups are explicit stabilizer groups (rows = generators);
// offsets are the zero offset plus the 2n basis offsets.
SubsamplingDesign design_from_stabilizers(uint32_t n,
                                          const std::vector<Gf2Matrix>& groups);

// Random subsampling matrices with only the zero + basis offsets, for
// heuristic decoding at bin widths other than n.
SubsamplingDesign heuristic_random_design(uint32_t n, uint32_t b,
                                          size_t num_groups, uint64_t seed);

// Local two-qubit-stabilizer design: per group every qubit pair gets a random
// base group, experiments cycle each pair through the other four groups, and
// the second group's pairing is shifted by one qubit. C(2n+1) experiments.
std::pair<SubsamplingDesign, ExperimentDesign> local_stabilizer_design(
    uint32_t n, size_t num_groups, uint64_t seed);

// Pair-cycling design covering all five groups per pair with offsets on the
// remaining qubits: 1 + 8n(n-2) experiments and n/2 induced matrices of
// 2^(n+2) bins. Requires even n >= 4.
ExperimentDesign type2_design(uint32_t n);

size_t type1_experiment_count(uint32_t n, size_t num_groups);
size_t type2_experiment_count(uint32_t n);

struct QuerySet {
  uint64_t multiset_size = 0;          // C * P * B
  std::vector<uint64_t> distinct;      // sorted unique queried indices
};

// Exact set of eigenvalue indices the binning stage will query.
QuerySet design_query_set(const SubsamplingDesign& design);

// Design JSON with stable field ordering; embeds `config` when provided.
void save_design(const SubsamplingDesign& design, const ExperimentDesign* exp,
                 const std::string& path,
                 const nlohmann::ordered_json* config = nullptr);
void save_design(const ExperimentDesign& exp, const std::string& path,
                 const nlohmann::ordered_json* config = nullptr);

}  // namespace paulisift

#endif  // PAULISIFT_SRC_DESIGN_H_
