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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace paulisift {

namespace {

void check_compatible(const BinTensor& bins, const SubsamplingDesign& design) {
  if (bins.num_groups != design.num_groups() || bins.num_bins != design.num_bins() ||
      bins.n != design.n)
    throw std::invalid_argument("bin tensor does not match the design");
}

double completion_tolerance(const PeelConfig& cfg, double nu_eff, size_t found) {
  if (cfg.completion_tolerance > 0.0) return cfg.completion_tolerance;
  return std::max(10.0 * nu_eff * std::sqrt(static_cast<double>(std::max<size_t>(found, 1))),
                  1e-9);
}

}  // namespace

double RecoveryResult::estimate_sum() const {
  double sum = 0.0;
  for (const auto& [bits, e] : estimates) sum += e.rate;
  return sum;
}

uint32_t default_iterations(uint64_t sparsity_hint) {
  double s = static_cast<double>(std::max<uint64_t>(sparsity_hint, 4));
  double loglog = std::log2(std::log2(s));
  return std::max<uint32_t>(10, static_cast<uint32_t>(std::ceil(3.0 * loglog)) + 3);
}

RecoveryResult peel(BinTensor& bins, const SubsamplingDesign& design,
                    const PeelConfig& cfg) {
  check_compatible(bins, design);
  if (bins.num_groups < 2) throw std::invalid_argument("peeling needs at least two groups");
  const size_t p1 = design.groups[0].offsets.num_random;
  for (const auto& g : design.groups)
    if (g.offsets.num_random != p1)
      throw std::invalid_argument("groups must share the random offset count");
  if (p1 == 0) throw std::invalid_argument("peeling needs random offsets");

  const double nu2_eff = std::max(bins.nu2, cfg.detector.nu2_floor);
  const double nu_eff = std::sqrt(nu2_eff);
  const double bins_over_n =
      std::ldexp(1.0, static_cast<int>(bins.b) - 2 * static_cast<int>(bins.n));
  const uint32_t max_iter =
      cfg.max_iterations > 0 ? cfg.max_iterations : default_iterations(bins.num_bins);

  RecoveryResult result;
  result.n = bins.n;
  result.total_queries = bins.total_queries;
  result.distinct_queries = bins.distinct_queries;

  // Cheap zero pre-test on the random offsets alone; equals the detector's
  // own zero-ton verification, so skipped bins get the same verdict without
  // gathering the full offset vector.
  auto passes_zero_test = [&](size_t c, uint64_t j) {
    double ms = 0.0;
    for (size_t t = 0; t < p1; ++t) {
      double x = bins.at(c, t, j);
      ms += x * x;
    }
    ms /= static_cast<double>(p1);
    double g1 = cfg.detector.effective_gamma1(bins.t_mult[c][j], nu2_eff);
    return ms <= bins.t_mult[c][j] * (1.0 + g1) * nu2_eff;
  };

  for (uint32_t iter = 1; iter <= max_iter; ++iter) {
    result.iterations_used = iter;
    size_t found_this_sweep = 0;
    for (size_t c = 0; c < bins.num_groups; ++c) {
      const auto& group = design.groups[c];
      for (uint64_t j = 0; j < bins.num_bins; ++j) {
        if (passes_zero_test(c, j)) continue;
        std::vector<double> values = bins.bin_values(c, j);
        BinVerdict v = detect(values, group.offsets, group.code, bins.t_mult[c][j],
                              bins.nu2, cfg.detector);
        if (v.kind != BinKind::kSingleTon) continue;
        uint64_t label_bits = v.label->bits;
        double rate = *v.rate;
        auto it = result.estimates.find(label_bits);
        if (it != result.estimates.end()) {
          // First win; later sightings only get checked for consistency.
          ++result.duplicate_rediscoveries;
          if (std::abs(rate - it->second.rate) > 4.0 * nu_eff)
            ++result.duplicate_discrepancies;
          continue;
        }
        result.estimates[label_bits] = {rate, iter, static_cast<uint32_t>(c)};
        ++found_this_sweep;
        const uint64_t swapped = PauliLabel(bins.n, label_bits).half_swapped().bits;
        for (size_t c2 = 0; c2 < bins.num_groups; ++c2) {
          if (c2 == c) continue;
          const auto& other = design.groups[c2];
          uint64_t j2 = other.hash(label_bits);
          bins.t_mult[c2][j2] += bins.t_mult[c][j] / static_cast<double>(p1) +
                                 (static_cast<double>(p1) - 1.0) * bins_over_n /
                                     static_cast<double>(p1);
          for (size_t t = 0; t < bins.num_offsets; ++t) {
            double sign = parity64(other.offsets.offsets[t] & swapped) ? -1.0 : 1.0;
            bins.at(c2, t, j2) -= sign * rate;
          }
        }
      }
    }
    if (found_this_sweep == 0) break;
  }

  // Residual audit: anything still failing detection counts as unresolved.
  for (size_t c = 0; c < bins.num_groups; ++c) {
    const auto& group = design.groups[c];
    for (uint64_t j = 0; j < bins.num_bins; ++j) {
      if (passes_zero_test(c, j)) continue;
      std::vector<double> values = bins.bin_values(c, j);
      BinVerdict v = detect(values, group.offsets, group.code, bins.t_mult[c][j],
                            bins.nu2, cfg.detector);
      bool resolved = v.kind == BinKind::kZeroTon ||
                      (v.kind == BinKind::kSingleTon && result.contains(v.label->bits));
      if (resolved) continue;
      ++result.unresolved_bins;
      double ms = 0.0;
      for (size_t t = 0; t < p1; ++t) ms += values[t] * values[t];
      result.unresolved_mass += ms / static_cast<double>(p1);
    }
  }

  double tol = completion_tolerance(cfg, nu_eff, result.estimates.size());
  result.status = std::abs(result.estimate_sum() - 1.0) <= tol
                      ? RecoveryStatus::kComplete
                      : RecoveryStatus::kIncomplete;
  return result;
}

RecoveryResult noisy_peel(BinTensor& bins, const SubsamplingDesign& design,
                          const PeelConfig& cfg) {
  check_compatible(bins, design);
  const size_t p = bins.num_offsets;
  const size_t basis_begin = design.groups[0].offsets.basis_begin();
  for (const auto& g : design.groups) {
    if (g.offsets.basis_begin() != basis_begin ||
        g.offsets.size() != basis_begin + 2 * design.n + 1)
      throw std::invalid_argument("noisy_peel needs the zero + basis offset block");
    if (g.offsets.offsets[basis_begin] != 0)
      throw std::invalid_argument("heuristic offsets must start the basis block with 0");
  }

  if (cfg.zero_relax_divisor <= 1.0)
    throw std::invalid_argument("zero relaxation divisor must exceed 1");
  if (cfg.singleton_relax_step < 0.0 || cfg.zero_sens < 0.0)
    throw std::invalid_argument("sensitivities must be non-negative");

  const double nu2_eff = std::max(bins.nu2, cfg.detector.nu2_floor);
  const double nu_eff = std::sqrt(nu2_eff);
  double zero_sens = cfg.zero_sens > 0.0 ? cfg.zero_sens : 9.0 * nu2_eff;
  double zero_floor =
      cfg.zero_sens_floor > 0.0 ? cfg.zero_sens_floor : zero_sens / 100.0;
  double singleton_sens = cfg.singleton_sens;
  // Noise-born candidates rarely survive the hash check; the value floor
  // removes the stragglers.
  const double rate_floor = 3.0 * nu_eff / std::sqrt(static_cast<double>(p));

  RecoveryResult result;
  result.n = bins.n;
  result.total_queries = bins.total_queries;
  result.distinct_queries = bins.distinct_queries;

  std::vector<std::vector<uint8_t>> found_here(
      bins.num_groups, std::vector<uint8_t>(bins.num_bins, 0));

  uint32_t round = 0;
  bool success = false;
  while (round < cfg.max_rounds && !success) {
    ++round;
    result.iterations_used = round;
    size_t added = 0;
    for (size_t c = 0; c < bins.num_groups && !success; ++c) {
      const auto& group = design.groups[c];
      for (uint64_t j = 0; j < bins.num_bins; ++j) {
        double ms = 0.0;
        for (size_t t = 0; t < p; ++t) {
          double x = bins.at(c, t, j);
          ms += x * x;
        }
        ms /= static_cast<double>(p);
        if (ms <= zero_sens) continue;
        std::vector<double> values = bins.bin_values(c, j);

        double u0 = values[basis_begin];
        double mag = std::abs(u0);
        bool banded = mag > 0.0;
        for (uint32_t i = 0; banded && i < 2 * bins.n; ++i) {
          double diff = std::abs(std::abs(values[basis_begin + 1 + i]) - mag);
          banded = diff <= singleton_sens * mag;
        }
        if (!banded) continue;

        PauliLabel label = estimate_index_basis(
            std::span<const double>(values).subspan(basis_begin + 1, 2 * bins.n), u0,
            bins.n);
        if (result.contains(label.bits)) {
          ++result.duplicate_rediscoveries;
          continue;
        }
        // The read-out must hash back into this very bin.
        if (group.hash(label.bits) != j) continue;

        const uint64_t swapped = label.half_swapped().bits;
        double rate = 0.0;
        for (size_t t = 0; t < p; ++t) {
          double sign = parity64(group.offsets.offsets[t] & swapped) ? -1.0 : 1.0;
          rate += sign * values[t];
        }
        rate /= static_cast<double>(p);
        if (rate <= rate_floor) continue;

        result.estimates[label.bits] = {rate, round, static_cast<uint32_t>(c)};
        found_here[c][j] = 1;
        ++added;
        for (size_t c2 = 0; c2 < bins.num_groups; ++c2) {
          if (c2 == c) continue;
          const auto& other = design.groups[c2];
          uint64_t j2 = other.hash(label.bits);
          for (size_t t = 0; t < p; ++t) {
            double sign = parity64(other.offsets.offsets[t] & swapped) ? -1.0 : 1.0;
            bins.at(c2, t, j2) -= sign * rate;
          }
        }
        if (std::abs(result.estimate_sum() - 1.0) <=
            completion_tolerance(cfg, nu_eff, result.estimates.size())) {
          success = true;
          break;
        }
      }
    }
    if (success) break;
    if (added == 0) {
      if (zero_sens <= zero_floor) break;  // schedule exhausted
      zero_sens /= cfg.zero_relax_divisor;
      singleton_sens += cfg.singleton_relax_step;
    }
  }

  for (size_t c = 0; c < bins.num_groups; ++c) {
    for (uint64_t j = 0; j < bins.num_bins; ++j) {
      if (found_here[c][j]) continue;
      double ms = 0.0;
      for (size_t t = 0; t < p; ++t) {
        double x = bins.at(c, t, j);
        ms += x * x;
      }
      ms /= static_cast<double>(p);
      if (ms <= zero_sens) continue;
      ++result.unresolved_bins;
      result.unresolved_mass += ms;
    }
  }

  result.status = success ? RecoveryStatus::kComplete : RecoveryStatus::kIncomplete;
  return result;
}

double predicted_edge_survival(size_t num_groups, double eta, uint32_t l) {
  if (num_groups < 2) throw std::invalid_argument("survival needs at least two groups");
  if (eta <= 0.0) throw std::invalid_argument("eta must be positive");
  double p = 1.0;
  for (uint32_t i = 1; i <= l; ++i)
    p = std::pow(1.0 - std::exp(-p / eta), static_cast<double>(num_groups - 1));
  return p;
}

void save_result(const RecoveryResult& result, const std::string& path,
                 const nlohmann::ordered_json* config) {
  nlohmann::ordered_json j;
  j["status"] =
      result.status == RecoveryStatus::kComplete ? "complete" : "incomplete";
  j["n"] = result.n;
  j["iterations"] = result.iterations_used;

  std::vector<std::pair<uint64_t, RecoveredEntry>> rows(result.estimates.begin(),
                                                        result.estimates.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second.rate != b.second.rate) return a.second.rate > b.second.rate;
    return a.first < b.first;
  });
  nlohmann::ordered_json estimates = nlohmann::ordered_json::array();
  for (const auto& [bits, e] : rows) {
    nlohmann::ordered_json row;
    row["pauli"] = label_to_string(PauliLabel(result.n, bits));
    row["p"] = e.rate;
    row["round"] = e.round;
    estimates.push_back(std::move(row));
  }
  j["estimates"] = std::move(estimates);

  nlohmann::ordered_json diag;
  diag["unresolved_bins"] = result.unresolved_bins;
  diag["unresolved_mass"] = result.unresolved_mass;
  diag["total_queries"] = result.total_queries;
  diag["distinct_queries"] = result.distinct_queries;
  diag["duplicate_rediscoveries"] = result.duplicate_rediscoveries;
  diag["duplicate_discrepancies"] = result.duplicate_discrepancies;
  j["diagnostics"] = std::move(diag);
  if (config != nullptr) j["config"] = *config;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

}  // namespace paulisift
