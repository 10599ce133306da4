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

#ifndef PAULISIFT_SRC_BINNING_H_
#define PAULISIFT_SRC_BINNING_H_

#include <cstdint>
#include <string>
#include <vector>

#include "src/channel.h"
#include "src/design.h"

namespace paulisift {

// Offset bin tensors U[c][t][j] for a design with C groups, P offsets and
// B = 2^b bins, plus the per-bin variance multipliers T[c][j] the decoder
// updates while peeling. Bins are stored as C contiguous buffers of P
// length-B slices so each slice can be transformed in place.
struct BinTensor {
  uint32_t n = 0;
  uint32_t b = 0;
  size_t num_groups = 0;   // C
  size_t num_offsets = 0;  // P
  uint64_t num_bins = 0;   // B
  double nu2 = 0.0;        // base bin noise variance, xi^2 / B
  std::vector<std::vector<double>> u;       // [c], layout t * B + j
  std::vector<std::vector<double>> t_mult;  // [c], length B, initialized 1
  uint64_t total_queries = 0;
  uint64_t distinct_queries = 0;

  double& at(size_t c, size_t t, uint64_t j) { return u[c][t * num_bins + j]; }
  double at(size_t c, size_t t, uint64_t j) const { return u[c][t * num_bins + j]; }

  // The P offset observations of one bin.
  std::vector<double> bin_values(size_t c, uint64_t j) const;
};

// Queries the oracle along each offset coset of the design and turns the
// gathered eigenvalues into bins with a 1/B-scaled B-point transform.
BinTensor subsample_bins(const EigenvalueOracle& oracle,
                         const SubsamplingDesign& design);

// Independent oracle for the observation model: iterates the channel support
// and accumulates U[c][t][hash(m)] += p_m * (-1)^{<d_t, m>} directly.
BinTensor bin_observation_bruteforce(const SparsePauliChannel& ch,
                                     const SubsamplingDesign& design);

// Binary dump (shape header + little-endian doubles) for decoder replay.
void save_bins(const BinTensor& bins, const std::string& path);
BinTensor load_bins(const std::string& path);

}  // namespace paulisift

#endif  // PAULISIFT_SRC_BINNING_H_
