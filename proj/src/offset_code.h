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

#ifndef PAULISIFT_SRC_OFFSET_CODE_H_
#define PAULISIFT_SRC_OFFSET_CODE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "src/gf2.h"
#include "src/pauli.h"

namespace paulisift {

// Coded offsets used for index read-out in noisy bins. The default scheme
// reads every index bit `repetitions` times: copy k of bit i lives at offset
// d_{baseline[k]} xor J e_i, where d_* are the random offsets of the same
// group. XOR-ing the sign of that bin with the sign of the baseline bin
// isolates bit i, and distinct offsets keep the noise draws independent.
// Majority vote across copies decodes the bit; a tie flags decode failure.
struct OffsetCodeSpec {
  enum class Scheme { kRepetition, kPluggable };

  Scheme scheme = Scheme::kRepetition;
  uint32_t repetitions = 9;
  // Row t = coded offset t, a 2n-bit string. P2 rows in total.
  Gf2Matrix generator;
  // Per copy k: which random offset serves as the sign baseline.
  std::vector<uint32_t> baseline;
  // Pluggable decoders take the P2 coded sign bits and return packed label
  // bits, or nullopt on failure.
  std::function<std::optional<uint64_t>(const std::vector<uint8_t>&)>
      pluggable_decode;

  size_t num_coded() const { return generator.rows(); }
};

// Expected coded sign bits of a label: entry t = <generator row t, m>.
std::vector<uint8_t> code_encode(const PauliLabel& m, const OffsetCodeSpec& spec);

// Decodes a label from the coded sign bits. The repetition scheme also needs
// the signs of the random offsets as baselines; `random_signs` carries them.
// Returns nullopt when a majority vote ties or a pluggable decoder fails.
std::optional<PauliLabel> code_decode(const std::vector<uint8_t>& coded_signs,
                                      const std::vector<uint8_t>& random_signs,
                                      const OffsetCodeSpec& spec, uint32_t n);

}  // namespace paulisift

#endif  // PAULISIFT_SRC_OFFSET_CODE_H_
