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

#include "src/design.h"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "json.hpp"
#include "src/rng.h"
#include "src/version.h"

namespace paulisift {

namespace {

void check_shape(uint32_t n, uint32_t b) {
  if (n < 1 || n > 32) throw std::invalid_argument("qubit count must be in 1..32");
  if (b < 1 || b > 2 * n) throw std::invalid_argument("bin width must be in 1..2n");
}

// Embeds a 2-qubit label onto qubits (u, v) of an n-qubit register.
uint64_t embed_pair(const PauliLabel& g, uint32_t u, uint32_t v, uint32_t n) {
  uint64_t x = g.x_half(), z = g.z_half();
  uint64_t bits = 0;
  if (x & 1) bits |= 1ull << u;
  if (x & 2) bits |= 1ull << v;
  if (z & 1) bits |= 1ull << (n + u);
  if (z & 2) bits |= 1ull << (n + v);
  return bits;
}

uint64_t embed_single(const PauliLabel& g, uint32_t q, uint32_t n) {
  uint64_t bits = 0;
  if (g.x_half() & 1) bits |= 1ull << q;
  if (g.z_half() & 1) bits |= 1ull << (n + q);
  return bits;
}

}  // namespace

const std::vector<std::vector<PauliLabel>>& two_qubit_groups() {
  static const std::vector<std::vector<PauliLabel>> groups = [] {
    std::vector<std::vector<PauliLabel>> g = {
        {label_from_string("IX"), label_from_string("XI")},
        {label_from_string("IY"), label_from_string("YI")},
        {label_from_string("ZI"), label_from_string("IZ")},
        {label_from_string("ZX"), label_from_string("YZ")},
        {label_from_string("ZY"), label_from_string("XZ")},
    };
    // Self-test: each pair commutes and the five groups tile all 15
    // nontrivial 2-qubit Paulis.
    std::unordered_set<uint64_t> seen;
    for (const auto& pair : g) {
      if (symplectic_product(pair[0], pair[1]) != 0)
        throw std::logic_error("two-qubit group table is not isotropic");
      seen.insert(pair[0].bits);
      seen.insert(pair[1].bits);
      seen.insert(pair[0].bits ^ pair[1].bits);
    }
    if (seen.size() != 15)
      throw std::logic_error("two-qubit groups do not tile the Pauli set");
    return g;
  }();
  return groups;
}

const std::vector<PauliLabel>& single_qubit_groups() {
  static const std::vector<PauliLabel> groups = {
      label_from_string("X"), label_from_string("Y"), label_from_string("Z")};
  return groups;
}

Gf2Matrix random_subsampling_matrix(uint32_t n, uint32_t b, uint64_t seed) {
  check_shape(n, b);
  Rng rng(seed);
  uint64_t col_mask = (b == 64) ? ~0ull : ((1ull << b) - 1);
  for (;;) {
    Gf2Matrix m(2 * n, b);
    for (size_t r = 0; r < 2 * n; ++r) m.set_row(r, rng.bits() & col_mask);
    if (gf2_rank(m) == b) return m;
  }
}

OffsetSet make_offsets(uint32_t n, size_t p1, OffsetCodeSpec& code,
                       bool include_basis, uint64_t seed) {
  if (p1 < 1) throw std::invalid_argument("make_offsets: need at least one random offset");
  if (n < 1 || n > 32) throw std::invalid_argument("qubit count must be in 1..32");
  Rng rng(seed);
  uint64_t mask = (n == 32) ? ~0ull : ((1ull << (2 * n)) - 1);

  OffsetSet set;
  set.n = n;
  set.num_random = p1;
  for (size_t t = 0; t < p1; ++t) {
    set.offsets.push_back(rng.bits() & mask);
    set.kinds.push_back(OffsetKind::kRandom);
  }

  if (code.scheme == OffsetCodeSpec::Scheme::kRepetition) {
    uint32_t r = code.repetitions;
    code.generator = Gf2Matrix(static_cast<size_t>(r) * 2 * n, 2 * n);
    code.baseline.assign(r, 0);
    for (uint32_t k = 0; k < r; ++k) {
      code.baseline[k] = static_cast<uint32_t>(k % p1);
      for (uint32_t i = 0; i < 2 * n; ++i) {
        uint64_t offset =
            set.offsets[code.baseline[k]] ^ swap_halves(1ull << i, n);
        code.generator.set_row(static_cast<size_t>(k) * 2 * n + i, offset);
      }
    }
  } else if (code.generator.rows() > 0 && code.generator.cols() != 2 * n) {
    throw std::invalid_argument("make_offsets: code generator width must be 2n");
  }
  for (size_t t = 0; t < code.generator.rows(); ++t) {
    set.offsets.push_back(code.generator.row(t));
    set.kinds.push_back(OffsetKind::kCoded);
  }
  set.num_coded = code.generator.rows();

  if (include_basis) {
    set.offsets.push_back(0);
    set.kinds.push_back(OffsetKind::kBasis);
    for (uint32_t i = 0; i < 2 * n; ++i) {
      set.offsets.push_back(1ull << i);
      set.kinds.push_back(OffsetKind::kBasis);
    }
  }
  return set;
}

SubsamplingGroup make_group(uint32_t n, const Gf2Matrix& m, OffsetSet offsets,
                            OffsetCodeSpec code, bool physical) {
  if (m.rows() != 2 * n) throw std::invalid_argument("make_group: matrix must have 2n rows");
  uint32_t b = static_cast<uint32_t>(m.cols());
  check_shape(n, b);
  if (gf2_rank(m) != b) throw std::invalid_argument("make_group: matrix must have full column rank");

  SubsamplingGroup group;
  group.m = m;
  Gf2Matrix jn = Gf2Matrix::symplectic_form(n);
  if (b % 2 == 0) {
    group.m_prime = gf2_matmul(gf2_matmul(jn, m), Gf2Matrix::symplectic_form(b / 2));
  } else {
    group.m_prime = gf2_matmul(jn, m);
  }
  group.hash_rows = m.transposed();
  group.prime_cols = group.m_prime.transposed();
  group.offsets = std::move(offsets);
  group.code = std::move(code);
  group.physical = physical;
  return group;
}

SubsamplingDesign random_design(uint32_t n, uint32_t b, size_t num_groups,
                                size_t p1, uint32_t repetitions,
                                bool include_basis, uint64_t seed) {
  check_shape(n, b);
  if (num_groups < 1) throw std::invalid_argument("need at least one group");
  SubsamplingDesign design;
  design.n = n;
  design.b = b;
  design.bin_ordering = (b % 2 == 0) ? Ordering::kSymplectic : Ordering::kNatural;
  Rng rng(seed);
  for (size_t c = 0; c < num_groups; ++c) {
    uint64_t matrix_seed = rng.bits();
    uint64_t offset_seed = rng.bits();
    Gf2Matrix m = random_subsampling_matrix(n, b, matrix_seed);
    OffsetCodeSpec code;
    code.scheme = OffsetCodeSpec::Scheme::kRepetition;
    code.repetitions = repetitions;
    OffsetSet offsets = make_offsets(n, p1, code, include_basis, offset_seed);
    design.groups.push_back(make_group(n, m, std::move(offsets), std::move(code), false));
  }
  return design;
}

namespace {

OffsetSet basis_only_offsets(uint32_t n) {
  OffsetSet set;
  set.n = n;
  set.offsets.push_back(0);
  set.kinds.push_back(OffsetKind::kBasis);
  for (uint32_t i = 0; i < 2 * n; ++i) {
    set.offsets.push_back(1ull << i);
    set.kinds.push_back(OffsetKind::kBasis);
  }
  return set;
}

SubsamplingGroup group_from_stabilizer(uint32_t n, const Gf2Matrix& s) {
  if (!is_stabilizer_group(s))
    throw std::invalid_argument("generators do not form a stabilizer group");
  uint32_t b = static_cast<uint32_t>(s.rows());
  // The query-side matrix is S^T; recover the hash matrix that induces it.
  Gf2Matrix m_prime = s.transposed();
  Gf2Matrix jn = Gf2Matrix::symplectic_form(n);
  Gf2Matrix m = (b % 2 == 0)
                    ? gf2_matmul(gf2_matmul(jn, m_prime), Gf2Matrix::symplectic_form(b / 2))
                    : gf2_matmul(jn, m_prime);
  OffsetCodeSpec code;
  code.generator = Gf2Matrix(0, 2 * n);
  return make_group(n, m, basis_only_offsets(n), std::move(code), true);
}

}  // namespace

SubsamplingDesign heuristic_random_design(uint32_t n, uint32_t b,
                                          size_t num_groups, uint64_t seed) {
  check_shape(n, b);
  if (num_groups < 1) throw std::invalid_argument("need at least one group");
  SubsamplingDesign design;
  design.n = n;
  design.b = b;
  design.bin_ordering = (b % 2 == 0) ? Ordering::kSymplectic : Ordering::kNatural;
  Rng rng(seed);
  for (size_t c = 0; c < num_groups; ++c) {
    Gf2Matrix m = random_subsampling_matrix(n, b, rng.bits());
    OffsetCodeSpec code;
    code.generator = Gf2Matrix(0, 2 * n);
    design.groups.push_back(
        make_group(n, m, basis_only_offsets(n), std::move(code), false));
  }
  return design;
}

SubsamplingDesign design_from_stabilizers(uint32_t n,
                                          const std::vector<Gf2Matrix>& groups) {
  if (groups.empty()) throw std::invalid_argument("need at least one group");
  SubsamplingDesign design;
  design.n = n;
  design.b = static_cast<uint32_t>(groups[0].rows());
  design.bin_ordering =
      (design.b % 2 == 0) ? Ordering::kSymplectic : Ordering::kNatural;
  for (const auto& s : groups) {
    if (s.rows() != design.b || s.cols() != 2 * n)
      throw std::invalid_argument("stabilizer groups must share shape b x 2n");
    design.groups.push_back(group_from_stabilizer(n, s));
  }
  return design;
}

namespace {

struct Pairing {
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  std::vector<uint32_t> singles;
};

Pairing make_pairing(uint32_t n, uint32_t start) {
  Pairing p;
  for (uint32_t q = 0; q < start && q < n; ++q) p.singles.push_back(q);
  uint32_t q = start;
  while (q + 1 < n) {
    p.pairs.emplace_back(q, q + 1);
    q += 2;
  }
  if (q < n) p.singles.push_back(q);
  return p;
}

Gf2Matrix generators_from_assignment(uint32_t n, const Pairing& pairing,
                                     const std::vector<size_t>& pair_group,
                                     const std::vector<size_t>& single_group) {
  Gf2Matrix s(n, 2 * n);
  size_t row = 0;
  for (size_t p = 0; p < pairing.pairs.size(); ++p) {
    const auto& [u, v] = pairing.pairs[p];
    const auto& gens = two_qubit_groups()[pair_group[p]];
    s.set_row(row++, embed_pair(gens[0], u, v, n));
    s.set_row(row++, embed_pair(gens[1], u, v, n));
  }
  for (size_t k = 0; k < pairing.singles.size(); ++k) {
    s.set_row(row++, embed_single(single_qubit_groups()[single_group[k]],
                                  pairing.singles[k], n));
  }
  return s;
}

}  // namespace

std::pair<SubsamplingDesign, ExperimentDesign> local_stabilizer_design(
    uint32_t n, size_t num_groups, uint64_t seed) {
  if (n < 2 || n > 32) throw std::invalid_argument("local design needs 2..32 qubits");
  if (num_groups < 1) throw std::invalid_argument("need at least one group");
  Rng rng(seed);

  std::vector<Gf2Matrix> stabilizers;
  ExperimentDesign exp;
  exp.n = n;
  exp.type = 1;

  for (size_t c = 0; c < num_groups; ++c) {
    // The second group's pairing is shifted by one qubit so its local groups
    // span different qubit pairs.
    Pairing pairing = make_pairing(n, static_cast<uint32_t>(c % 2));
    std::vector<size_t> pair_group(pairing.pairs.size());
    std::vector<size_t> single_group(pairing.singles.size());
    for (auto& g : pair_group) g = rng.below(5);
    for (auto& g : single_group) g = rng.below(3);

    Gf2Matrix base = generators_from_assignment(n, pairing, pair_group, single_group);
    stabilizers.push_back(base);

    Experiment base_exp;
    base_exp.generators = base;
    base_exp.role = "base";
    base_exp.group = static_cast<int>(c);
    exp.experiments.push_back(std::move(base_exp));

    for (size_t p = 0; p < pairing.pairs.size(); ++p) {
      for (size_t alt = 0; alt < 5; ++alt) {
        if (alt == pair_group[p]) continue;
        std::vector<size_t> cycled = pair_group;
        cycled[p] = alt;
        Experiment e;
        e.generators = generators_from_assignment(n, pairing, cycled, single_group);
        e.role = "pair-cycle";
        e.group = static_cast<int>(c);
        e.pair = static_cast<int>(p);
        e.alt = static_cast<int>(alt);
        exp.experiments.push_back(std::move(e));
      }
    }
    for (size_t k = 0; k < pairing.singles.size(); ++k) {
      for (size_t alt = 0; alt < 3; ++alt) {
        if (alt == single_group[k]) continue;
        std::vector<size_t> cycled = single_group;
        cycled[k] = alt;
        Experiment e;
        e.generators = generators_from_assignment(n, pairing, pair_group, cycled);
        e.role = "single-cycle";
        e.group = static_cast<int>(c);
        e.pair = static_cast<int>(pairing.singles[k]);
        e.alt = static_cast<int>(alt);
        exp.experiments.push_back(std::move(e));
      }
    }
  }

  if (exp.experiments.size() != type1_experiment_count(n, num_groups))
    throw std::logic_error("experiment count disagrees with C(2n+1)");
  return {design_from_stabilizers(n, stabilizers), std::move(exp)};
}

ExperimentDesign type2_design(uint32_t n) {
  if (n < 4 || n % 2 != 0 || n > 32)
    throw std::invalid_argument("quadratic design needs even n >= 4");
  ExperimentDesign exp;
  exp.n = n;
  exp.type = 2;

  const uint32_t num_pairs = n / 2;
  Pairing canonical = make_pairing(n, 0);
  std::vector<size_t> base_group(num_pairs);
  for (uint32_t p = 0; p < num_pairs; ++p) base_group[p] = p % 5;

  Experiment base;
  base.generators = generators_from_assignment(n, canonical, base_group, {});
  base.role = "base";
  exp.experiments.push_back(std::move(base));

  for (uint32_t p = 0; p < num_pairs; ++p) {
    // Induced subsampling matrix: the pair's four single-qubit directions
    // join the bin index, the other pairs keep their base generators.
    Gf2Matrix prime_cols(n + 2, 2 * n);
    size_t col = 0;
    prime_cols.set_row(col++, 1ull << (2 * p));
    prime_cols.set_row(col++, 1ull << (2 * p + 1));
    prime_cols.set_row(col++, 1ull << (n + 2 * p));
    prime_cols.set_row(col++, 1ull << (n + 2 * p + 1));
    for (uint32_t q = 0; q < num_pairs; ++q) {
      if (q == p) continue;
      const auto& gens = two_qubit_groups()[base_group[q]];
      prime_cols.set_row(col++, embed_pair(gens[0], 2 * q, 2 * q + 1, n));
      prime_cols.set_row(col++, embed_pair(gens[1], 2 * q, 2 * q + 1, n));
    }
    Gf2Matrix m_prime = prime_cols.transposed();
    Gf2Matrix jn = Gf2Matrix::symplectic_form(n);
    exp.induced_matrices.push_back(gf2_matmul(
        gf2_matmul(jn, m_prime), Gf2Matrix::symplectic_form((n + 2) / 2)));

    std::vector<uint32_t> rest;
    for (uint32_t q = 0; q < n; ++q)
      if (q != 2 * p && q != 2 * p + 1) rest.push_back(q);

    for (size_t a = 0; a < 5; ++a) {
      if (a == base_group[p]) continue;
      for (uint32_t k = 0; k < n - 2; ++k) {
        for (uint32_t alt2 = 0; alt2 < 4; ++alt2) {
          uint32_t u = rest[k];
          uint32_t v = rest[(k + 1) % (n - 2)];
          size_t perturbed = (base_group[u / 2] + 1 + alt2) % 5;

          // Partition: pair p with group a, (u,v) with the perturbed group,
          // untouched canonical pairs keep base, leftovers go single.
          Gf2Matrix s(n, 2 * n);
          size_t row = 0;
          const auto& pg = two_qubit_groups()[a];
          s.set_row(row++, embed_pair(pg[0], 2 * p, 2 * p + 1, n));
          s.set_row(row++, embed_pair(pg[1], 2 * p, 2 * p + 1, n));
          const auto& og = two_qubit_groups()[perturbed];
          s.set_row(row++, embed_pair(og[0], u, v, n));
          s.set_row(row++, embed_pair(og[1], u, v, n));
          std::vector<bool> used(n, false);
          used[2 * p] = used[2 * p + 1] = used[u] = used[v] = true;
          for (uint32_t q = 0; q < num_pairs; ++q) {
            if (used[2 * q] || used[2 * q + 1]) continue;
            const auto& gens = two_qubit_groups()[base_group[q]];
            s.set_row(row++, embed_pair(gens[0], 2 * q, 2 * q + 1, n));
            s.set_row(row++, embed_pair(gens[1], 2 * q, 2 * q + 1, n));
            used[2 * q] = used[2 * q + 1] = true;
          }
          for (uint32_t q = 0; q < n; ++q) {
            if (used[q]) continue;
            s.set_row(row++, embed_single(single_qubit_groups()[q % 3], q, n));
          }

          Experiment e;
          e.generators = std::move(s);
          e.role = "pair-cycle-offset";
          e.group = static_cast<int>(p);
          e.pair = static_cast<int>(p);
          e.alt = static_cast<int>(a);
          exp.experiments.push_back(std::move(e));
        }
      }
    }
  }

  if (exp.experiments.size() != type2_experiment_count(n))
    throw std::logic_error("experiment count disagrees with 1 + 8n(n-2)");
  return exp;
}

size_t type1_experiment_count(uint32_t n, size_t num_groups) {
  return num_groups * (2 * static_cast<size_t>(n) + 1);
}

size_t type2_experiment_count(uint32_t n) {
  return 1 + 8 * static_cast<size_t>(n) * (n - 2);
}

std::vector<uint64_t> Experiment::coverage() const {
  std::vector<uint64_t> out;
  out.reserve(1ull << generators.rows());
  uint64_t v = 0;
  out.push_back(0);
  for (uint64_t i = 1; i < (1ull << generators.rows()); ++i) {
    v ^= generators.row(static_cast<size_t>(std::countr_zero(i)));
    out.push_back(v);
  }
  return out;
}

std::vector<uint64_t> ExperimentDesign::coverage_union() const {
  std::unordered_set<uint64_t> seen;
  for (const auto& e : experiments)
    for (uint64_t v : e.coverage()) seen.insert(v);
  std::vector<uint64_t> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

QuerySet design_query_set(const SubsamplingDesign& design) {
  QuerySet qs;
  std::unordered_set<uint64_t> seen;
  uint64_t bins = design.num_bins();
  for (const auto& group : design.groups) {
    for (uint64_t d : group.offsets.offsets) {
      qs.multiset_size += bins;
      uint64_t idx = d;
      seen.insert(idx);
      for (uint64_t g = 1; g < bins; ++g) {
        idx ^= group.prime_cols.row(static_cast<size_t>(std::countr_zero(g)));
        seen.insert(idx);
      }
    }
  }
  qs.distinct.assign(seen.begin(), seen.end());
  std::sort(qs.distinct.begin(), qs.distinct.end());
  return qs;
}

namespace {

nlohmann::ordered_json matrix_to_json(const Gf2Matrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row_string(r));
  return rows;
}

nlohmann::ordered_json experiments_to_json(const ExperimentDesign& exp) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& e : exp.experiments) {
    nlohmann::ordered_json j;
    j["role"] = e.role;
    j["group"] = e.group;
    if (e.pair >= 0) j["pair"] = e.pair;
    if (e.alt >= 0) j["alt"] = e.alt;
    nlohmann::ordered_json gens = nlohmann::ordered_json::array();
    for (size_t r = 0; r < e.generators.rows(); ++r)
      gens.push_back(label_to_string(PauliLabel(exp.n, e.generators.row(r))));
    j["generators"] = std::move(gens);
    out.push_back(std::move(j));
  }
  return out;
}

const char* kind_name(OffsetKind k) {
  switch (k) {
    case OffsetKind::kRandom: return "random";
    case OffsetKind::kCoded: return "coded";
    case OffsetKind::kBasis: return "basis";
  }
  return "?";
}

}  // namespace

void save_design(const SubsamplingDesign& design, const ExperimentDesign* exp,
                 const std::string& path, const nlohmann::ordered_json* config) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["n"] = design.n;
  j["b"] = design.b;
  j["bins"] = design.num_bins();
  j["bin_ordering"] =
      design.bin_ordering == Ordering::kSymplectic ? "symplectic" : "natural";
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (const auto& g : design.groups) {
    nlohmann::ordered_json gj;
    gj["physical"] = g.physical;
    gj["matrix_rows"] = matrix_to_json(g.m);
    nlohmann::ordered_json offs = nlohmann::ordered_json::array();
    for (size_t t = 0; t < g.offsets.size(); ++t) {
      nlohmann::ordered_json oj;
      oj["bits"] = label_to_bit_string(PauliLabel(design.n, g.offsets.offsets[t]));
      oj["kind"] = kind_name(g.offsets.kinds[t]);
      offs.push_back(std::move(oj));
    }
    gj["offsets"] = std::move(offs);
    groups.push_back(std::move(gj));
  }
  j["groups"] = std::move(groups);
  if (exp != nullptr) {
    j["experiment_count"] = exp->experiment_count();
    j["experiments"] = experiments_to_json(*exp);
  }
  if (config != nullptr) j["config"] = *config;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

void save_design(const ExperimentDesign& exp, const std::string& path,
                 const nlohmann::ordered_json* config) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["n"] = exp.n;
  j["type"] = exp.type;
  j["experiment_count"] = exp.experiment_count();
  if (!exp.induced_matrices.empty()) {
    j["induced_bins"] = 1ull << (exp.n + 2);
    nlohmann::ordered_json mats = nlohmann::ordered_json::array();
    for (const auto& m : exp.induced_matrices) mats.push_back(matrix_to_json(m));
    j["induced_matrices"] = std::move(mats);
  }
  j["experiments"] = experiments_to_json(exp);
  if (config != nullptr) j["config"] = *config;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

}  // namespace paulisift
