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

#include "src/channel.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "src/rng.h"
#include "src/version.h"

namespace paulisift {

namespace {

constexpr double kSumTolerance = 1e-12;

uint64_t num_paulis(uint32_t n) {
  return (n >= 32) ? 0 : (1ull << (2 * n));  // 0 means "does not fit", n==32 ok below
}

void check_qubit_count(uint32_t n) {
  if (n < 1 || n > 32) throw std::invalid_argument("qubit count must be in 1..32");
}

}  // namespace

SparsePauliChannel::SparsePauliChannel(uint32_t n,
                                       const std::map<uint64_t, double>& rates)
    : n_(n) {
  check_qubit_count(n);
  double sum = 0.0;
  labels_.reserve(rates.size());
  rates_.reserve(rates.size());
  for (const auto& [bits, p] : rates) {
    if (n < 32 && bits >= (1ull << (2 * n)))
      throw std::invalid_argument("label does not fit in 2n bits");
    if (p < 0.0) throw std::invalid_argument("negative rate");
    if (p == 0.0) continue;
    labels_.push_back(bits);
    swapped_.push_back(PauliLabel(n, bits).half_swapped().bits);
    rates_.push_back(p);
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    std::ostringstream msg;
    msg << "rates sum to " << sum << " (deficit " << 1.0 - sum << ")";
    throw std::invalid_argument(msg.str());
  }
}

double SparsePauliChannel::identity_rate() const { return rate_of(0); }

double SparsePauliChannel::rate_of(uint64_t label_bits) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label_bits);
  if (it == labels_.end() || *it != label_bits) return 0.0;
  return rates_[static_cast<size_t>(it - labels_.begin())];
}

double SparsePauliChannel::eigenvalue(const PauliLabel& k) const {
  if (k.n != n_) throw std::invalid_argument("eigenvalue: qubit counts differ");
  double sum = 0.0;
  for (size_t i = 0; i < labels_.size(); ++i) {
    uint64_t sign = static_cast<uint64_t>(parity64(k.bits & swapped_[i])) << 63;
    sum += std::bit_cast<double>(std::bit_cast<uint64_t>(rates_[i]) ^ sign);
  }
  return sum;
}

std::vector<double> SparsePauliChannel::dense_rates() const {
  if (n_ > 12) throw std::invalid_argument("dense_rates: 4^n too large");
  std::vector<double> out(num_paulis(n_), 0.0);
  for (size_t i = 0; i < labels_.size(); ++i) out[labels_[i]] = rates_[i];
  return out;
}

std::map<uint64_t, double> SparsePauliChannel::as_map() const {
  std::map<uint64_t, double> m;
  for (size_t i = 0; i < labels_.size(); ++i) m[labels_[i]] = rates_[i];
  return m;
}

SparsePauliChannel random_sparse_channel(uint32_t n, uint64_t s, double eps0,
                                         double p_id, uint64_t seed,
                                         double eps_max) {
  check_qubit_count(n);
  if (s < 1) throw std::invalid_argument("sparsity must be >= 1");
  if (n < 32 && s > (1ull << (2 * n)))
    throw std::invalid_argument("sparsity exceeds 4^n");
  if (eps0 <= 0.0 || eps_max < eps0) throw std::invalid_argument("need 0 < eps0 <= eps_max");
  if (p_id + static_cast<double>(s) * eps0 > 1.0 + kSumTolerance)
    throw std::invalid_argument("infeasible mass split: p_id + s*eps0 > 1");

  Rng rng(seed);
  std::map<uint64_t, double> rates;
  if (s == 1) {
    rates[0] = 1.0;
    return SparsePauliChannel(n, rates);
  }

  std::unordered_set<uint64_t> support;
  uint64_t space = (n == 32) ? 0 : (1ull << (2 * n));
  while (support.size() < s - 1) {
    uint64_t bits = (n == 32) ? rng.bits() : rng.below(space);
    if (bits == 0) continue;
    support.insert(bits);
  }
  std::vector<uint64_t> labels(support.begin(), support.end());
  std::sort(labels.begin(), labels.end());

  std::vector<double> mags(labels.size());
  for (double& m : mags) m = rng.log_uniform(eps0, eps_max);

  // Scale to the target mass, then floor at eps0 and water-fill the floored
  // deficit out of the unfloored entries until stable.
  double target = 1.0 - p_id;
  std::vector<double> out(mags.size());
  std::vector<bool> floored(mags.size(), false);
  for (;;) {
    double floored_mass = 0.0, free_weight = 0.0;
    for (size_t i = 0; i < mags.size(); ++i) {
      if (floored[i])
        floored_mass += eps0;
      else
        free_weight += mags[i];
    }
    double scale = (target - floored_mass) / free_weight;
    bool changed = false;
    for (size_t i = 0; i < mags.size(); ++i) {
      if (floored[i]) {
        out[i] = eps0;
        continue;
      }
      out[i] = mags[i] * scale;
      if (out[i] < eps0) {
        floored[i] = true;
        changed = true;
      }
    }
    if (!changed) break;
  }

  for (size_t i = 0; i < labels.size(); ++i) rates[labels[i]] = out[i];
  double non_identity = 0.0;
  for (const auto& [bits, p] : rates) non_identity += p;
  rates[0] = 1.0 - non_identity;
  return SparsePauliChannel(n, rates);
}

std::vector<TailBucket> default_tail_profile() {
  return {
      {1e-3, 1e-2, 30},
      {1e-4, 1e-3, 60},
      {1e-5, 1e-4, 110},
      {1e-6, 1e-5, 400},
      {1e-8, 1e-6, 1400},
  };
}

SparsePauliChannel tail_profile_channel(uint32_t n, double p_id,
                                        const std::vector<TailBucket>& profile,
                                        uint64_t seed) {
  check_qubit_count(n);
  if (p_id <= 0.0 || p_id >= 1.0) throw std::invalid_argument("p_id must be in (0,1)");
  uint64_t total = 0;
  for (const auto& b : profile) total += b.count;
  if (total == 0) throw std::invalid_argument("empty tail profile");
  if (n < 32 && total + 1 > (1ull << (2 * n)))
    throw std::invalid_argument("profile does not fit in 4^n labels");

  Rng rng(seed);
  std::unordered_set<uint64_t> support;
  uint64_t space = (n == 32) ? 0 : (1ull << (2 * n));
  while (support.size() < total) {
    uint64_t bits = (n == 32) ? rng.bits() : rng.below(space);
    if (bits == 0) continue;
    support.insert(bits);
  }
  std::vector<uint64_t> labels(support.begin(), support.end());
  std::sort(labels.begin(), labels.end());

  // Highest bucket absorbs whatever mass the fixed tail leaves over.
  size_t top = 0;
  for (size_t i = 1; i < profile.size(); ++i)
    if (profile[i].lo > profile[top].lo) top = i;

  std::vector<double> values;
  std::vector<size_t> bucket_of;
  values.reserve(total);
  for (size_t i = 0; i < profile.size(); ++i) {
    for (uint64_t k = 0; k < profile[i].count; ++k) {
      values.push_back(rng.log_uniform(profile[i].lo, profile[i].hi));
      bucket_of.push_back(i);
    }
  }
  double rest = 0.0, top_sum = 0.0;
  for (size_t i = 0; i < values.size(); ++i)
    (bucket_of[i] == top ? top_sum : rest) += values[i];
  double need = 1.0 - p_id - rest;
  if (need <= 0.0) throw std::invalid_argument("tail mass already exceeds 1 - p_id");
  double scale = need / top_sum;
  for (size_t i = 0; i < values.size(); ++i)
    if (bucket_of[i] == top) values[i] *= scale;

  std::map<uint64_t, double> rates;
  for (size_t i = 0; i < labels.size(); ++i) rates[labels[i]] = values[i];
  double non_identity = 0.0;
  for (const auto& [bits, p] : rates) non_identity += p;
  rates[0] = 1.0 - non_identity;
  return SparsePauliChannel(n, rates);
}

SparsePauliChannel plant_paulis(
    const SparsePauliChannel& ch,
    const std::vector<std::pair<PauliLabel, double>>& plants) {
  std::map<uint64_t, double> rates = ch.as_map();
  double identity = ch.identity_rate();
  for (const auto& [label, r] : plants) {
    if (label.n != ch.num_qubits())
      throw std::invalid_argument("plant_paulis: qubit counts differ");
    if (r <= 0.0) throw std::invalid_argument("plant_paulis: rates must be positive");
    if (label.bits == 0) throw std::invalid_argument("plant_paulis: cannot plant the identity");
    auto it = rates.find(label.bits);
    double previous = (it == rates.end()) ? 0.0 : it->second;
    identity -= (r - previous);
    rates[label.bits] = r;
  }
  if (identity < -kSumTolerance)
    throw std::invalid_argument("plant_paulis: mass overflow, identity rate would go negative");
  rates.erase(0);
  double non_identity = 0.0;
  for (const auto& [bits, p] : rates) non_identity += p;
  rates[0] = 1.0 - non_identity;
  return SparsePauliChannel(ch.num_qubits(), rates);
}

uint64_t weight_pattern(const PauliLabel& a) { return a.x_half() | a.z_half(); }

SparsePauliChannel extrapolate_local_averages(
    uint32_t n, const std::map<uint64_t, double>& avg, uint64_t seed) {
  check_qubit_count(n);
  double sum = 0.0;
  for (const auto& [pattern, mass] : avg) {
    if (n < 32 && pattern >= (1ull << n))
      throw std::invalid_argument("pattern does not fit in n bits");
    if (mass < 0.0) throw std::invalid_argument("negative averaged mass");
    sum += mass;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("averaged masses must sum to 1");

  Rng rng(seed);
  std::map<uint64_t, double> rates;
  for (const auto& [pattern, mass] : avg) {
    if (mass == 0.0) continue;
    std::vector<uint32_t> qubits;
    for (uint32_t q = 0; q < n; ++q)
      if ((pattern >> q) & 1) qubits.push_back(q);
    size_t cells = 1;
    for (size_t i = 0; i < qubits.size(); ++i) cells *= 3;

    // Uniform point on the simplex over the 3^w compatible labels.
    std::vector<double> draw(cells);
    double total = 0.0;
    for (double& d : draw) {
      d = rng.exponential();
      total += d;
    }
    for (size_t cell = 0; cell < cells; ++cell) {
      uint64_t x = 0, z = 0;
      size_t rest = cell;
      for (uint32_t q : qubits) {
        switch (rest % 3) {
          case 0: x |= 1ull << q; break;             // X
          case 1: z |= 1ull << q; break;             // Z
          case 2: x |= 1ull << q; z |= 1ull << q; break;  // Y
        }
        rest /= 3;
      }
      rates[x | (z << n)] += mass * (draw[cell] / total);
    }
  }
  return SparsePauliChannel(n, rates);
}

EigenvalueOracle::EigenvalueOracle(const SparsePauliChannel& ch,
                                   double noise_stddev, uint64_t seed,
                                   Mode mode, bool count_distinct_only)
    : ch_(ch),
      xi_(noise_stddev),
      seed_(seed),
      mode_(mode),
      count_distinct_only_(count_distinct_only) {
  if (noise_stddev < 0.0) throw std::invalid_argument("noise stddev must be >= 0");
}

double EigenvalueOracle::query(const PauliLabel& k) const {
  total_calls_.fetch_add(1, std::memory_order_relaxed);
  if (count_distinct_only_) {
    std::lock_guard<std::mutex> lock(distinct_mutex_);
    distinct_.insert(k.bits);
  }
  double value = ch_.eigenvalue(k);
  if (mode_ == Mode::kGaussian && xi_ > 0.0)
    value += xi_ * keyed_gaussian(seed_, k.bits);
  return value;
}

uint64_t EigenvalueOracle::distinct_queries() const {
  std::lock_guard<std::mutex> lock(distinct_mutex_);
  return distinct_.size();
}

uint64_t EigenvalueOracle::query_count() const {
  return count_distinct_only_ ? distinct_queries() : total_calls();
}

void EigenvalueOracle::reset_counters() {
  total_calls_.store(0);
  std::lock_guard<std::mutex> lock(distinct_mutex_);
  distinct_.clear();
}

void save_channel(const SparsePauliChannel& ch, const std::string& path,
                  const nlohmann::ordered_json* config) {
  nlohmann::ordered_json j;
  j["n"] = ch.num_qubits();
  j["identity"] = ch.identity_rate();
  nlohmann::ordered_json rates = nlohmann::ordered_json::array();
  const auto& labels = ch.labels();
  const auto& values = ch.rates();
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 0) continue;
    nlohmann::ordered_json entry;
    entry["pauli"] = label_to_string(PauliLabel(ch.num_qubits(), labels[i]));
    entry["p"] = values[i];
    rates.push_back(entry);
  }
  j["rates"] = std::move(rates);
  j["version"] = kVersion;
  if (config != nullptr) j["config"] = *config;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

SparsePauliChannel load_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  uint32_t n = j.at("n").get<uint32_t>();
  std::map<uint64_t, double> rates;
  rates[0] = j.at("identity").get<double>();
  for (const auto& entry : j.at("rates")) {
    PauliLabel label = label_from_string(entry.at("pauli").get<std::string>());
    if (label.n != n) throw std::runtime_error("label width disagrees with n");
    if (rates.count(label.bits))
      throw std::runtime_error("duplicate label in channel file");
    rates[label.bits] = entry.at("p").get<double>();
  }
  return SparsePauliChannel(n, rates);
}

void save_eigenvalues(const std::vector<std::pair<PauliLabel, double>>& rows,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "index,value\n";
  char buf[40];
  for (const auto& [label, value] : rows) {
    snprintf(buf, sizeof(buf), "%.17g", value);
    out << label_to_bit_string(label) << "," << buf << "\n";
  }
}

std::vector<std::pair<PauliLabel, double>> load_eigenvalues(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "index,value")
    throw std::runtime_error("eigenvalue CSV must start with 'index,value'");
  std::vector<std::pair<PauliLabel, double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    size_t comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("malformed CSV row: " + line);
    PauliLabel label = label_from_string(line.substr(0, comma));
    rows.emplace_back(label, std::stod(line.substr(comma + 1)));
  }
  return rows;
}

}  // namespace paulisift
