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

#include "src/metrics.h"

#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"

namespace paulisift {
namespace {

RecoveryResult result_from_channel(const SparsePauliChannel& ch) {
  RecoveryResult r;
  r.n = ch.num_qubits();
  r.status = RecoveryStatus::kComplete;
  for (size_t i = 0; i < ch.labels().size(); ++i)
    r.estimates[ch.labels()[i]] = {ch.rates()[i], 1, 0};
  return r;
}

TEST(Compare, PerfectRecoveryScoresZero) {
  auto ch = random_sparse_channel(5, 10, 1e-4, 0.9, 3);
  RecoveryReport report = compare(ch, result_from_channel(ch), 1e-4, {});
  EXPECT_EQ(report.linf, 0.0);
  EXPECT_EQ(report.tv, 0.0);
  EXPECT_TRUE(report.false_positives.empty());
  EXPECT_TRUE(report.false_negatives.empty());
}

TEST(Compare, MissingLabelContributesItsRateToTv) {
  auto ch = random_sparse_channel(4, 6, 1e-4, 0.9, 5);
  RecoveryResult rec = result_from_channel(ch);
  uint64_t dropped = ch.labels()[2];
  double r = rec.estimates.at(dropped).rate;
  rec.estimates.erase(dropped);
  RecoveryReport report = compare(ch, rec, 1e-6, {});
  // r/2 from the label itself plus r/2 from the identity-side mismatch.
  EXPECT_NEAR(report.tv, r, 1e-15);
  EXPECT_NEAR(report.linf, r, 1e-15);
  ASSERT_EQ(report.false_negatives.size(), 1u);
  EXPECT_EQ(report.false_negatives[0], dropped);
}

TEST(Compare, TvIsSymmetric) {
  auto a = random_sparse_channel(4, 8, 1e-4, 0.9, 7);
  auto b = random_sparse_channel(4, 8, 1e-4, 0.85, 11);
  double ab = compare(a, result_from_channel(b), 1e-6, {}).tv;
  double ba = compare(b, result_from_channel(a), 1e-6, {}).tv;
  EXPECT_NEAR(ab, ba, 1e-15);
  EXPECT_GE(ab, 0.0);
  EXPECT_LE(ab, 1.0);
}

TEST(Compare, Eps0GatesFalseCounts) {
  std::map<uint64_t, double> rates;
  rates[0] = 0.98;
  rates[5] = 0.015;
  rates[9] = 0.005;  // below the declared floor
  SparsePauliChannel ch(2, rates);
  RecoveryResult rec;
  rec.n = 2;
  rec.estimates[0] = {0.98, 1, 0};
  rec.estimates[5] = {0.015, 1, 0};
  rec.estimates[7] = {0.001, 1, 0};  // not in the truth at all
  RecoveryReport report = compare(ch, rec, 0.01, {});
  // Label 9 sits below eps0: not a false negative; label 7 is a false
  // positive; the unrecovered 9 is simply ignored.
  EXPECT_TRUE(report.false_negatives.empty());
  ASSERT_EQ(report.false_positives.size(), 1u);
  EXPECT_EQ(report.false_positives[0], 7u);
}

TEST(Compare, BoundsComeFromDeclaredParametersOnly) {
  auto ch = random_sparse_channel(5, 10, 1e-4, 0.9, 13);
  BoundParams bounds;
  bounds.xi = 1e-3;
  bounds.num_bins = 1024;
  bounds.sparsity = 32;
  RecoveryReport report = compare(ch, result_from_channel(ch), 1e-4, bounds);
  EXPECT_DOUBLE_EQ(report.bound_linf, 2e-3 / 32.0);
  EXPECT_DOUBLE_EQ(report.bound_tv, 32.0 * 1e-3 / 32.0);
  EXPECT_TRUE(report.linf_within_bound);
  EXPECT_TRUE(report.tv_within_bound);
}

TEST(Compare, MismatchedQubitCountsThrow) {
  auto ch = random_sparse_channel(4, 4, 1e-4, 0.9, 17);
  RecoveryResult rec;
  rec.n = 5;
  EXPECT_THROW(compare(ch, rec, 1e-4, {}), std::invalid_argument);
}

TEST(ReportIo, JsonAndCsvCarryTheRows) {
  auto ch = random_sparse_channel(3, 5, 1e-4, 0.9, 19);
  RecoveryReport report = compare(ch, result_from_channel(ch), 1e-4, {});
  auto dir = std::filesystem::temp_directory_path();
  std::string jpath = (dir / "paulisift_report.json").string();
  std::string cpath = (dir / "paulisift_report.csv").string();
  nlohmann::ordered_json config;
  config["command"] = "test";
  save_report(report, jpath, &config);
  save_report_csv(report, cpath);

  std::ifstream in(jpath);
  nlohmann::json j;
  in >> j;
  EXPECT_EQ(j.at("config").at("command"), "test");
  EXPECT_EQ(j.at("tv").get<double>(), 0.0);

  std::ifstream csv(cpath);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "pauli,truth,estimate,rel_error");
  size_t rows = 0;
  for (std::string line; std::getline(csv, line);) rows += !line.empty();
  EXPECT_EQ(rows, ch.support_size());
  std::filesystem::remove(jpath);
  std::filesystem::remove(cpath);
}

}  // namespace
}  // namespace paulisift
