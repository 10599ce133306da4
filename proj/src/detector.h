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

#ifndef PAULISIFT_SRC_DETECTOR_H_
#define PAULISIFT_SRC_DETECTOR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "src/design.h"
#include "src/offset_code.h"
#include "src/pauli.h"

namespace paulisift {

// Sign bit of an observation: 0 for x >= 0, 1 for x < 0.
inline uint8_t sgn_bit(double x) { return x >= 0.0 ? 0 : 1; }

enum class BinKind { kZeroTon, kSingleTon, kMultiTon };

struct BinVerdict {
  BinKind kind = BinKind::kZeroTon;
  std::optional<PauliLabel> label;  // set iff kind == kSingleTon
  std::optional<double> rate;       // set iff kind == kSingleTon; always > 0
  bool decode_failed = false;       // index decode tie or failure
};

struct DetectorParams {
  double gamma1 = 0.4;
  double gamma2 = 0.4;
  // When set, the slacks are retuned per call to 0.9*min(1, eps0^2/(T nu^2))
  // and 0.9*min(1, eps0^2/(2 T nu^2)), which keeps them inside the region
  // where zero-ton and multi-ton rejection stay sound.
  std::optional<double> eps0;
  // Floor on the per-bin noise variance, so exact-arithmetic runs do not
  // classify float cancellation residue as signal.
  double nu2_floor = 1e-24;

  double effective_gamma1(double t_mult, double nu2) const;
  double effective_gamma2(double t_mult, double nu2) const;
};

// Bin detector for one bin vector (the P offset observations of a bin).
// Zero-ton test and value estimation use the random offsets; index decoding
// uses the coded offsets. A decode failure or a non-positive rate estimate
// downgrades the verdict to multi-ton.
BinVerdict detect(std::span<const double> bin, const OffsetSet& offsets,
                  const OffsetCodeSpec& code, double t_mult, double nu2,
                  const DetectorParams& params);

// Heuristic index read-out from the zero offset plus the 2n basis offsets:
// a sign flip relative to the zero-offset bin marks <e_i, m> = 1, and the
// half-swap maps the read bits back to the label.
PauliLabel estimate_index_basis(std::span<const double> basis_values, double u0,
                                uint32_t n);

// Upper bound on the probability that noise of variance T nu^2 flips the
// sign of a single-ton observation with rate p_m.
double singleton_flip_probability(double p_m, double t_mult, double nu2);

}  // namespace paulisift

#endif  // PAULISIFT_SRC_DETECTOR_H_
