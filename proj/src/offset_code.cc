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

#include "src/offset_code.h"

#include <stdexcept>

namespace paulisift {

std::vector<uint8_t> code_encode(const PauliLabel& m, const OffsetCodeSpec& spec) {
  std::vector<uint8_t> out(spec.generator.rows());
  for (size_t t = 0; t < spec.generator.rows(); ++t)
    out[t] = symplectic_product_bits(spec.generator.row(t), m.bits, m.n);
  return out;
}

std::optional<PauliLabel> code_decode(const std::vector<uint8_t>& coded_signs,
                                      const std::vector<uint8_t>& random_signs,
                                      const OffsetCodeSpec& spec, uint32_t n) {
  if (coded_signs.size() != spec.num_coded())
    throw std::invalid_argument("code_decode: sign count differs from P2");
  if (spec.scheme == OffsetCodeSpec::Scheme::kPluggable) {
    if (!spec.pluggable_decode) return std::nullopt;
    auto bits = spec.pluggable_decode(coded_signs);
    if (!bits) return std::nullopt;
    return PauliLabel(n, *bits);
  }

  const uint32_t width = 2 * n;
  const uint32_t r = spec.repetitions;
  if (coded_signs.size() != static_cast<size_t>(r) * width)
    throw std::invalid_argument("code_decode: repetition block has wrong size");
  uint64_t bits = 0;
  for (uint32_t i = 0; i < width; ++i) {
    int votes = 0;
    for (uint32_t k = 0; k < r; ++k) {
      uint8_t baseline_sign = random_signs.at(spec.baseline[k]);
      votes += (coded_signs[k * width + i] ^ baseline_sign) ? 1 : -1;
    }
    if (votes == 0) return std::nullopt;  // tie: low confidence
    if (votes > 0) bits |= 1ull << i;
  }
  return PauliLabel(n, bits);
}

}  // namespace paulisift
