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

#include "src/peeler.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"
#include "src/cli.h"
#include "src/metrics.h"
#include "src/rng.h"

namespace paulisift {
namespace {

SparsePauliChannel worked_example_channel() {
  // Three errors: IY shares XY's bin under the first group, YI shares XY's
  // bin under the second, so XY starts as a single-ton nowhere.
  std::map<uint64_t, double> rates;
  rates[0] = 0.965;
  rates[label_from_string("IY").bits] = 0.01;
  rates[label_from_string("XY").bits] = 0.015;
  rates[label_from_string("YI").bits] = 0.01;
  return SparsePauliChannel(2, rates);
}

SubsamplingDesign worked_example_design() {
  Gf2Matrix s1(2, 4), s2(2, 4);
  s1.set_row(0, label_from_string("IX").bits);
  s1.set_row(1, label_from_string("XI").bits);
  s2.set_row(0, label_from_string("ZY").bits);
  s2.set_row(1, label_from_string("XZ").bits);
  return design_from_stabilizers(2, {s1, s2});
}

TEST(NoisyPeel, TwoQubitWorkedExample) {
  // IY is a single-ton under the second group, gets peeled from the first
  // group's {IY, XY} bin, and exposes XY.
  SparsePauliChannel ch = worked_example_channel();
  SubsamplingDesign design = worked_example_design();
  uint64_t iy = label_from_string("IY").bits;
  uint64_t xy = label_from_string("XY").bits;
  uint64_t yi = label_from_string("YI").bits;

  ASSERT_EQ(design.groups[0].hash(xy), design.groups[0].hash(iy));
  ASSERT_EQ(design.groups[1].hash(xy), design.groups[1].hash(yi));
  ASSERT_NE(design.groups[1].hash(iy), design.groups[1].hash(xy));

  BinTensor bins = bin_observation_bruteforce(ch, design);
  uint64_t shared_bin = design.groups[0].hash(iy);
  size_t zero_t = design.groups[0].offsets.basis_begin();
  EXPECT_NEAR(bins.at(0, zero_t, shared_bin), 0.025, 1e-15);

  PeelConfig cfg;
  RecoveryResult result = noisy_peel(bins, design, cfg);
  EXPECT_EQ(result.status, RecoveryStatus::kComplete);
  ASSERT_EQ(result.estimates.size(), 4u);
  EXPECT_NEAR(result.estimates.at(iy).rate, 0.01, 1e-12);
  EXPECT_NEAR(result.estimates.at(xy).rate, 0.015, 1e-12);
  EXPECT_NEAR(result.estimates.at(yi).rate, 0.01, 1e-12);
  // IY came out of the second group; XY was readable nowhere until the
  // peels landed, then surfaced in whichever group cleared first.
  EXPECT_EQ(result.estimates.at(iy).group, 1u);
  EXPECT_EQ(result.estimates.at(xy).group, 1u);
  EXPECT_EQ(result.estimates.at(yi).group, 0u);
}

TEST(Peel, IdentityOnlyChannel) {
  std::map<uint64_t, double> rates;
  rates[0] = 1.0;
  SparsePauliChannel ch(4, rates);
  SubsamplingDesign design = random_design(4, 4, 2, 8, 3, false, 5);
  EigenvalueOracle oracle(ch, 0.0, 1);
  BinTensor bins = subsample_bins(oracle, design);
  RecoveryResult result = peel(bins, design, PeelConfig{});
  EXPECT_EQ(result.status, RecoveryStatus::kComplete);
  ASSERT_EQ(result.estimates.size(), 1u);
  EXPECT_NEAR(result.estimates.at(0).rate, 1.0, 1e-12);
  EXPECT_EQ(result.estimates.at(0).round, 1u);
}

TEST(Peel, NoiselessExactRecovery) {
  int exact = 0;
  for (uint64_t seed = 0; seed < 25; ++seed) {
    auto ch = random_sparse_channel(6, 8, 1e-5, 0.9, 100 + seed);
    SubsamplingDesign design = random_design(6, 6, 2, 8, 3, false, 200 + seed);
    EigenvalueOracle oracle(ch, 0.0, 1);
    BinTensor bins = subsample_bins(oracle, design);
    RecoveryResult result = peel(bins, design, PeelConfig{});
    if (result.estimates.size() != ch.support_size()) continue;
    double linf = 0.0;
    for (size_t i = 0; i < ch.labels().size(); ++i) {
      auto it = result.estimates.find(ch.labels()[i]);
      if (it == result.estimates.end()) {
        linf = 1.0;
        break;
      }
      linf = std::max(linf, std::abs(it->second.rate - ch.rates()[i]));
    }
    exact += linf < 1e-10;
  }
  EXPECT_GE(exact, 24);
}

TEST(Peel, ConservationUnderPeeling) {
  // After peeling, the bins equal the observation model of the channel with
  // every recovered label removed from the groups it was peeled out of.
  for (uint64_t seed = 0; seed < 10; ++seed) {
    auto ch = random_sparse_channel(4, 6, 1e-4, 0.9, 300 + seed);
    SubsamplingDesign design = random_design(4, 4, 2, 8, 3, false, 400 + seed);
    EigenvalueOracle oracle(ch, 0.0, 1);
    BinTensor bins = subsample_bins(oracle, design);
    RecoveryResult result = peel(bins, design, PeelConfig{});

    BinTensor expected = bin_observation_bruteforce(ch, design);
    for (const auto& [bits, entry] : result.estimates) {
      uint64_t swapped = PauliLabel(4, bits).half_swapped().bits;
      for (size_t c = 0; c < expected.num_groups; ++c) {
        if (c == entry.group) continue;
        uint64_t j = design.groups[c].hash(bits);
        for (size_t t = 0; t < expected.num_offsets; ++t) {
          double sign =
              parity64(design.groups[c].offsets.offsets[t] & swapped) ? -1.0 : 1.0;
          expected.at(c, t, j) -= sign * entry.rate;
        }
      }
    }
    double diff = 0.0;
    for (size_t c = 0; c < bins.num_groups; ++c)
      for (size_t i = 0; i < bins.u[c].size(); ++i)
        diff = std::max(diff, std::abs(bins.u[c][i] - expected.u[c][i]));
    EXPECT_LT(diff, 1e-10) << "seed " << seed;
  }
}

TEST(Peel, VarianceMultipliersStayBounded) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto ch = random_sparse_channel(8, 32, 1e-4, 0.9, 500 + seed);
    SubsamplingDesign design = random_design(8, 8, 2, 16, 9, false, 600 + seed);
    EigenvalueOracle oracle(ch, 1e-4, 700 + seed);
    BinTensor bins = subsample_bins(oracle, design);
    DetectorParams det;
    det.eps0 = 1e-4;
    PeelConfig cfg;
    cfg.detector = det;
    peel(bins, design, cfg);
    double max_t = 0.0;
    for (const auto& group : bins.t_mult)
      for (double t : group) max_t = std::max(max_t, t);
    EXPECT_LE(max_t, 4.0) << "seed " << seed;
  }
}

TEST(Peel, DeterministicAcrossRuns) {
  auto ch = random_sparse_channel(6, 12, 1e-4, 0.9, 7);
  SubsamplingDesign design = random_design(6, 6, 2, 8, 3, false, 11);
  EigenvalueOracle oracle(ch, 1e-4, 13);
  auto run = [&] {
    BinTensor bins = subsample_bins(oracle, design);
    return peel(bins, design, PeelConfig{});
  };
  RecoveryResult a = run();
  RecoveryResult b = run();
  ASSERT_EQ(a.estimates.size(), b.estimates.size());
  for (const auto& [bits, e] : a.estimates) {
    EXPECT_EQ(b.estimates.at(bits).rate, e.rate);
    EXPECT_EQ(b.estimates.at(bits).round, e.round);
  }
  EXPECT_EQ(a.iterations_used, b.iterations_used);
}

TEST(Peel, RequiresTwoGroups) {
  auto ch = random_sparse_channel(4, 4, 1e-4, 0.9, 7);
  SubsamplingDesign design = random_design(4, 4, 1, 8, 3, false, 11);
  EigenvalueOracle oracle(ch, 0.0, 1);
  BinTensor bins = subsample_bins(oracle, design);
  EXPECT_THROW(peel(bins, design, PeelConfig{}), std::invalid_argument);
}

TEST(NoisyPeel, ThresholdScheduleMatchesWorkedNumbers) {
  // xi = 0.01 over 2^14 bins: the 3-sigma-squared start is about 5.5e-8 and
  // the two-decade relaxation floor about 5.5e-10.
  double xi = 0.01;
  double nu2 = xi * xi / std::pow(2.0, 14);
  EXPECT_NEAR(std::sqrt(nu2), 7.8e-5, 2e-6);
  double z_start = 9.0 * nu2;
  EXPECT_NEAR(z_start, 5.5e-8, 0.05e-8);
  EXPECT_NEAR(z_start / 100.0, 5.5e-10, 0.05e-10);
}

TEST(NoisyPeel, RecoversPlantedManyBodyLabels) {
  auto base = random_sparse_channel(8, 20, 1e-5, 0.9, 17);
  Rng rng(19);
  std::vector<std::pair<PauliLabel, double>> plants;
  while (plants.size() < 2) {
    double rate = rng.gaussian(0.005, 0.001);
    if (rate <= 0.0) continue;
    uint64_t bits = rng.below(1ull << 16);
    if (weight(PauliLabel(8, bits)) < 6) continue;
    plants.emplace_back(PauliLabel(8, bits), rate);
  }
  auto ch = plant_paulis(base, plants);
  RecoverOptions opt;
  opt.mode = "heuristic";
  opt.xi = 1e-4;
  opt.seed = 21;
  RecoverOutcome oc = run_recovery(ch, opt);
  for (const auto& [label, rate] : plants) {
    auto it = oc.result.estimates.find(label.bits);
    ASSERT_NE(it, oc.result.estimates.end());
    EXPECT_LE(std::abs(it->second.rate - rate) / rate, 0.10);
  }
}

TEST(NoisyPeel, StatusIncompleteOnDoubleCollision) {
  // Two labels sharing a bin in every group can never be separated; their
  // mass stays unresolved and the decoder reports incomplete. Both groups
  // here ignore the last qubit, so labels differing only there collide
  // everywhere.
  Gf2Matrix s1(2, 6), s2(2, 6);
  s1.set_row(0, label_from_string("IXI").bits);
  s1.set_row(1, label_from_string("XII").bits);
  s2.set_row(0, label_from_string("ZYI").bits);
  s2.set_row(1, label_from_string("XZI").bits);
  SubsamplingDesign design = design_from_stabilizers(3, {s1, s2});
  uint64_t m1 = 0, m2 = 0;
  for (uint64_t a = 1; a < 64 && m1 == 0; ++a)
    for (uint64_t b = a + 1; b < 64; ++b) {
      if (design.groups[0].hash(a) != design.groups[0].hash(b)) continue;
      if (design.groups[1].hash(a) != design.groups[1].hash(b)) continue;
      if (design.groups[0].hash(a) == 0 || design.groups[1].hash(a) == 0) continue;
      m1 = a;
      m2 = b;
      break;
    }
  ASSERT_NE(m1, 0u) << "no double collision among two-qubit labels";

  std::map<uint64_t, double> rates;
  rates[0] = 0.9;
  rates[m1] = 0.05;
  rates[m2] = 0.05;
  SparsePauliChannel ch(3, rates);
  BinTensor bins = bin_observation_bruteforce(ch, design);
  PeelConfig cfg;
  cfg.singleton_relax_step = 0.0;  // keep the magnitude band tight
  RecoveryResult result = noisy_peel(bins, design, cfg);
  EXPECT_EQ(result.status, RecoveryStatus::kIncomplete);
  EXPECT_EQ(result.estimates.count(m1), 0u);
  EXPECT_EQ(result.estimates.count(m2), 0u);
  EXPECT_GE(result.unresolved_bins, 2u);
  EXPECT_GT(result.unresolved_mass, 0.0);
  EXPECT_LT(result.estimate_sum(), 0.95);
}

TEST(EdgeSurvival, RecursionValues) {
  EXPECT_DOUBLE_EQ(predicted_edge_survival(6, 1.0, 0), 1.0);
  double p1 = predicted_edge_survival(6, 1.0, 1);
  double p2 = predicted_edge_survival(6, 1.0, 2);
  double p3 = predicted_edge_survival(6, 1.0, 3);
  EXPECT_NEAR(p1, 0.1009, 5e-4);
  EXPECT_NEAR(p2 / 8.1e-6, 1.0, 0.05);
  EXPECT_LT(p3, 1e-20);
  // Infinitely many bins per label: edges die immediately.
  EXPECT_LT(predicted_edge_survival(2, 1e12, 1), 1e-11);
  EXPECT_THROW(predicted_edge_survival(1, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(predicted_edge_survival(2, 0.0, 1), std::invalid_argument);
}

TEST(RecoveryResultIo, OrderedByDescendingRate) {
  auto ch = random_sparse_channel(5, 10, 1e-4, 0.9, 31);
  RecoverOptions opt;
  opt.xi = 0.0;
  opt.seed = 37;
  RecoverOutcome oc = run_recovery(ch, opt);
  std::string path =
      (std::filesystem::temp_directory_path() / "paulisift_result.json").string();
  save_result(oc.result, path);
  std::ifstream in(path);
  nlohmann::json j;
  in >> j;
  ASSERT_GE(j.at("estimates").size(), 2u);
  double prev = 2.0;
  for (const auto& row : j.at("estimates")) {
    double p = row.at("p").get<double>();
    EXPECT_LE(p, prev);
    prev = p;
  }
  EXPECT_EQ(j.at("status"), "complete");
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace paulisift
