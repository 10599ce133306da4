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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace paulisift {

RecoveryReport compare(const SparsePauliChannel& truth,
                       const RecoveryResult& rec, double eps0,
                       const BoundParams& bounds) {
  if (truth.num_qubits() != rec.n)
    throw std::invalid_argument("compare: qubit counts differ");

  RecoveryReport report;
  report.n = rec.n;

  std::set<uint64_t> union_support;
  for (uint64_t bits : truth.labels()) union_support.insert(bits);
  for (const auto& [bits, e] : rec.estimates) union_support.insert(bits);

  double truth_non_identity = 0.0, est_non_identity = 0.0;
  double abs_sum_non_identity = 0.0;
  for (uint64_t bits : union_support) {
    double t = truth.rate_of(bits);
    auto it = rec.estimates.find(bits);
    double e = (it == rec.estimates.end()) ? 0.0 : it->second.rate;
    report.linf = std::max(report.linf, std::abs(e - t));

    LabelError le;
    le.label = bits;
    le.truth = t;
    le.estimate = e;
    le.rel_error = (t > 0.0) ? (e - t) / t : (e > 0.0 ? INFINITY : 0.0);
    report.per_label.push_back(le);

    if (bits == 0) continue;
    truth_non_identity += t;
    est_non_identity += e;
    abs_sum_non_identity += std::abs(e - t);
    if (it != rec.estimates.end() && (t < eps0 || t == 0.0))
      report.false_positives.push_back(bits);
    if (it == rec.estimates.end() && t >= eps0)
      report.false_negatives.push_back(bits);
  }
  // Identity enters as the closing mass of both distributions.
  double identity_diff =
      std::abs((1.0 - est_non_identity) - (1.0 - truth_non_identity));
  report.tv = 0.5 * (abs_sum_non_identity + identity_diff);
  report.tv = std::min(report.tv, 1.0);

  if (truth.rate_of(0) >= eps0 && rec.estimates.count(0) == 0)
    report.false_negatives.insert(report.false_negatives.begin(), 0);

  if (bounds.num_bins > 0) {
    double root_b = std::sqrt(static_cast<double>(bounds.num_bins));
    report.bound_linf = 2.0 * bounds.xi / root_b;
    report.bound_tv = static_cast<double>(bounds.sparsity) * bounds.xi / root_b;
    report.linf_within_bound = report.linf <= report.bound_linf;
    report.tv_within_bound = report.tv <= report.bound_tv;
  }
  report.query_count = rec.total_queries;
  return report;
}

void save_report(const RecoveryReport& report, const std::string& path,
                 const nlohmann::ordered_json* config) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["linf"] = report.linf;
  j["tv"] = report.tv;
  j["bound_linf"] = report.bound_linf;
  j["bound_tv"] = report.bound_tv;
  j["linf_within_bound"] = report.linf_within_bound;
  j["tv_within_bound"] = report.tv_within_bound;
  j["query_count"] = report.query_count;
  nlohmann::ordered_json fps = nlohmann::ordered_json::array();
  for (uint64_t bits : report.false_positives)
    fps.push_back(label_to_string(PauliLabel(report.n, bits)));
  j["false_positives"] = std::move(fps);
  nlohmann::ordered_json fns = nlohmann::ordered_json::array();
  for (uint64_t bits : report.false_negatives)
    fns.push_back(label_to_string(PauliLabel(report.n, bits)));
  j["false_negatives"] = std::move(fns);
  if (config != nullptr) j["config"] = *config;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

void save_report_csv(const RecoveryReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "pauli,truth,estimate,rel_error\n";
  char buf[128];
  for (const auto& le : report.per_label) {
    snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g",
             le.truth, le.estimate, le.rel_error);
    out << label_to_string(PauliLabel(report.n, le.label)) << "," << buf << "\n";
  }
}

}  // namespace paulisift
