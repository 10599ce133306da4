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

#include "src/binning.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "src/wht.h"

namespace paulisift {

namespace {

BinTensor make_tensor(const SubsamplingDesign& design) {
  if (design.groups.empty()) throw std::invalid_argument("design has no groups");
  BinTensor bt;
  bt.n = design.n;
  bt.b = design.b;
  bt.num_groups = design.num_groups();
  bt.num_offsets = design.groups[0].offsets.size();
  bt.num_bins = design.num_bins();
  for (const auto& g : design.groups) {
    if (g.offsets.size() != bt.num_offsets)
      throw std::invalid_argument("groups must share the offset count");
  }
  bt.u.assign(bt.num_groups, std::vector<double>(bt.num_offsets * bt.num_bins, 0.0));
  bt.t_mult.assign(bt.num_groups, std::vector<double>(bt.num_bins, 1.0));
  return bt;
}

}  // namespace

std::vector<double> BinTensor::bin_values(size_t c, uint64_t j) const {
  std::vector<double> out(num_offsets);
  for (size_t t = 0; t < num_offsets; ++t) out[t] = at(c, t, j);
  return out;
}

BinTensor subsample_bins(const EigenvalueOracle& oracle,
                         const SubsamplingDesign& design) {
  BinTensor bt = make_tensor(design);
  double xi = oracle.noise_stddev();
  bt.nu2 = xi * xi / static_cast<double>(bt.num_bins);

  uint64_t calls_before = oracle.total_calls();
  uint64_t distinct_before = oracle.distinct_queries();
  const uint64_t bins = bt.num_bins;
  for (size_t c = 0; c < bt.num_groups; ++c) {
    const auto& group = design.groups[c];
    for (size_t t = 0; t < bt.num_offsets; ++t) {
      double* slice = bt.u[c].data() + t * bins;
      // Gray-code walk over l: each step moves the queried index by one
      // column of M', so the whole coset costs one XOR per eigenvalue.
      uint64_t idx = group.offsets.offsets[t];
      slice[0] = oracle.query(PauliLabel(bt.n, idx));
      for (uint64_t k = 1; k < bins; ++k) {
        idx ^= group.prime_cols.row(static_cast<size_t>(std::countr_zero(k)));
        slice[k ^ (k >> 1)] = oracle.query(PauliLabel(bt.n, idx));
      }
      wht_fast_inplace(slice, bins, design.bin_ordering);
      double scale = 1.0 / static_cast<double>(bins);
      for (uint64_t j = 0; j < bins; ++j) slice[j] *= scale;
    }
  }
  bt.total_queries = oracle.total_calls() - calls_before;
  bt.distinct_queries = oracle.distinct_queries() - distinct_before;
  return bt;
}

BinTensor bin_observation_bruteforce(const SparsePauliChannel& ch,
                                     const SubsamplingDesign& design) {
  if (ch.num_qubits() != design.n)
    throw std::invalid_argument("channel and design disagree on qubit count");
  BinTensor bt = make_tensor(design);
  const auto& labels = ch.labels();
  const auto& rates = ch.rates();
  for (size_t c = 0; c < bt.num_groups; ++c) {
    const auto& group = design.groups[c];
    for (size_t i = 0; i < labels.size(); ++i) {
      uint64_t j = group.hash(labels[i]);
      uint64_t swapped = PauliLabel(bt.n, labels[i]).half_swapped().bits;
      for (size_t t = 0; t < bt.num_offsets; ++t) {
        double sign = parity64(group.offsets.offsets[t] & swapped) ? -1.0 : 1.0;
        bt.at(c, t, j) += sign * rates[i];
      }
    }
  }
  return bt;
}

namespace {

constexpr char kMagic[8] = {'P', 'S', 'B', 'I', 'N', 'S', '0', '1'};

void write_u64(std::ofstream& out, uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

uint64_t read_u64(std::ifstream& in) {
  uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

}  // namespace

void save_bins(const BinTensor& bins, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(kMagic, sizeof(kMagic));
  write_u64(out, bins.n);
  write_u64(out, bins.b);
  write_u64(out, bins.num_groups);
  write_u64(out, bins.num_offsets);
  write_u64(out, bins.num_bins);
  out.write(reinterpret_cast<const char*>(&bins.nu2), sizeof(double));
  write_u64(out, bins.total_queries);
  write_u64(out, bins.distinct_queries);
  for (const auto& block : bins.u)
    out.write(reinterpret_cast<const char*>(block.data()),
              static_cast<std::streamsize>(block.size() * sizeof(double)));
  for (const auto& block : bins.t_mult)
    out.write(reinterpret_cast<const char*>(block.data()),
              static_cast<std::streamsize>(block.size() * sizeof(double)));
}

BinTensor load_bins(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("not a bin tensor dump: " + path);
  BinTensor bt;
  bt.n = static_cast<uint32_t>(read_u64(in));
  bt.b = static_cast<uint32_t>(read_u64(in));
  bt.num_groups = read_u64(in);
  bt.num_offsets = read_u64(in);
  bt.num_bins = read_u64(in);
  in.read(reinterpret_cast<char*>(&bt.nu2), sizeof(double));
  bt.total_queries = read_u64(in);
  bt.distinct_queries = read_u64(in);
  if (!in) throw std::runtime_error("truncated bin tensor dump");
  bt.u.assign(bt.num_groups, std::vector<double>(bt.num_offsets * bt.num_bins));
  bt.t_mult.assign(bt.num_groups, std::vector<double>(bt.num_bins));
  for (auto& block : bt.u)
    in.read(reinterpret_cast<char*>(block.data()),
            static_cast<std::streamsize>(block.size() * sizeof(double)));
  for (auto& block : bt.t_mult)
    in.read(reinterpret_cast<char*>(block.data()),
            static_cast<std::streamsize>(block.size() * sizeof(double)));
  if (!in) throw std::runtime_error("truncated bin tensor dump");
  return bt;
}

}  // namespace paulisift
