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

#ifndef PAULISIFT_SRC_CLI_H_
#define PAULISIFT_SRC_CLI_H_

#include <cstdint>
#include <string>

#include "src/channel.h"
#include "src/design.h"
#include "src/metrics.h"
#include "src/peeler.h"

namespace paulisift {

// One end-to-end recovery run: design generation, binning, decoding, and the
// comparison against the ground truth. Shared by the recover and sweep
// subcommands and by the test suites.
struct RecoverOptions {
  std::string mode = "provable";  // "provable" or "heuristic"
  double xi = 0.0;
  uint32_t b = 0;  // bin width; 0 means n
  size_t num_groups = 2;
  size_t p1 = 16;
  uint32_t repetitions = 9;
  double eps0 = 0.0;  // 0 means undeclared
  double gamma1 = 0.4;
  double gamma2 = 0.4;
  uint32_t iterations = 0;  // 0 means automatic
  double completion_tolerance = 0.0;  // 0 means automatic
  uint64_t seed = 0;
};

struct RecoverOutcome {
  RecoveryResult result;
  RecoveryReport report;
  uint64_t queries_total = 0;
  uint64_t queries_distinct = 0;
  double wall_time_ms = 0.0;
};

RecoverOutcome run_recovery(const SparsePauliChannel& truth,
                            const RecoverOptions& opt);

// The design a recovery run would use; heuristic runs at b == n use the
// local two-qubit-stabilizer design, any other width uses random matrices.
SubsamplingDesign build_design(uint32_t n, const RecoverOptions& opt);

// Entry point. Exit codes: 0 success, 2 incomplete recovery, 1 usage or IO
// errors.
int run_cli(int argc, const char* const* argv);

}  // namespace paulisift

#endif  // PAULISIFT_SRC_CLI_H_
