#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "csd/config.hpp"
#include "csd/group.hpp"
#include "csd/lattice.hpp"
#include "csd/rational.hpp"

namespace csd {

/// True iff the element sets HK and KH coincide. Symmetric by definition.
inline bool permutes(const GroupTable& g, const Subgroup& h, const Subgroup& k) {
  if (h.members.contains(k.members) || k.members.contains(h.members)) return true;
  std::vector<uint32_t> hm = h.members.members();
  std::vector<uint32_t> km = k.members.members();
  ElementSet hk(g.order()), kh(g.order());
  for (uint32_t a : hm)
    for (uint32_t b : km) {
      hk.set(g.mul(a, b));
      kh.set(g.mul(b, a));
    }
  return hk == kh;
}

/// Symmetric boolean matrix of pairwise permutability over a subgroup list.
class PermutabilityTable {
 public:
  PermutabilityTable() = default;
  PermutabilityTable(size_t n) : n_(n), bits_(n * n, 0) {}

  bool get(size_t i, size_t j) const { return bits_[i * n_ + j] != 0; }
  void put(size_t i, size_t j, bool v) {
    bits_[i * n_ + j] = v;
    bits_[j * n_ + i] = v;
  }
  size_t size() const { return n_; }

  /// Number of permuting ordered pairs in rows × cols.
  uint64_t count_pairs(const std::vector<uint32_t>& rows, const std::vector<uint32_t>& cols) const {
    uint64_t c = 0;
    for (uint32_t r : rows)
      for (uint32_t k : cols) c += get(r, k) ? 1 : 0;
    return c;
  }

 private:
  size_t n_ = 0;
  std::vector<char> bits_;
};

/// Pairwise permutability over `subs`. Entries are independent, so rows can
/// be computed by several workers; the result does not depend on the split.
inline PermutabilityTable build_permutability_table(const GroupTable& g,
                                                    const std::vector<Subgroup>& subs,
                                                    unsigned workers = 1) {
  PermutabilityTable t(subs.size());
  auto fill_row = [&](size_t i) {
    for (size_t j = i; j < subs.size(); ++j) t.put(i, j, permutes(g, subs[i], subs[j]));
  };
  if (workers <= 1 || subs.size() < 8) {
    for (size_t i = 0; i < subs.size(); ++i) fill_row(i);
  } else {
    std::atomic<size_t> cursor{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t i = cursor.fetch_add(1); i < subs.size(); i = cursor.fetch_add(1)) fill_row(i);
      });
    for (auto& th : pool) th.join();
  }
  return t;
}

/// Counting engine for the cyclic degree functions of one group. Builds
/// L1(G) and its permutability matrix once; every csd query is then a
/// literal ordered-pair count over submatrix rows.
class CyclicDegreeEngine {
 public:
  explicit CyclicDegreeEngine(const GroupTable& g, unsigned workers = 1)
      : g_(&g), poset_(cyclic_subgroups(g)) {
    table_ = build_permutability_table(g, poset_.entries, workers);
    all_.resize(poset_.size());
    for (uint32_t i = 0; i < all_.size(); ++i) all_[i] = i;
  }

  const GroupTable& group() const { return *g_; }
  const CyclicPoset& poset() const { return poset_; }
  const PermutabilityTable& table() const { return table_; }

  std::vector<uint32_t> indices_in(const Subgroup& h) const {
    return indices_within(poset_, h.members);
  }

  /// csd(H,G): permuting pairs of L1(H) × L1(G) over the size product.
  Degree csd_relative(const Subgroup& h) const {
    std::vector<uint32_t> rows = indices_in(h);
    if (rows.empty()) throw std::logic_error("subgroup has no cyclic subgroups");
    uint64_t c = table_.count_pairs(rows, all_);
    return as_degree(Rational(BigInt(c), BigInt(uint64_t(rows.size()) * all_.size())));
  }

  /// csd(H) with H viewed as a group in its own right. Set products of
  /// subsets of H stay inside H, so the ambient matrix restricted to
  /// L1(H) × L1(H) is exactly H's own permutability relation.
  Degree csd_within(const Subgroup& h) const {
    std::vector<uint32_t> rows = indices_in(h);
    if (rows.empty()) throw std::logic_error("subgroup has no cyclic subgroups");
    uint64_t c = table_.count_pairs(rows, rows);
    return as_degree(Rational(BigInt(c), BigInt(uint64_t(rows.size()) * rows.size())));
  }

  Degree csd_whole() const {
    uint64_t c = table_.count_pairs(all_, all_);
    return as_degree(Rational(BigInt(c), BigInt(uint64_t(all_.size()) * all_.size())));
  }

  /// C1(H1): the cyclic subgroups of G permuting with H1.
  std::vector<uint32_t> c1_indices(uint32_t h1_index) const {
    std::vector<uint32_t> out;
    for (uint32_t j = 0; j < poset_.size(); ++j)
      if (table_.get(h1_index, j)) out.push_back(j);
    return out;
  }

 private:
  const GroupTable* g_;
  CyclicPoset poset_;
  PermutabilityTable table_;
  std::vector<uint32_t> all_;
};

/// Same engine over the full lattice, for the sd functions.
class FullDegreeEngine {
 public:
  FullDegreeEngine(const GroupTable& g, const SubgroupLattice& lat, unsigned workers = 1)
      : g_(&g), lat_(&lat) {
    table_ = build_permutability_table(g, lat.entries, workers);
    all_.resize(lat.entries.size());
    for (uint32_t i = 0; i < all_.size(); ++i) all_[i] = i;
  }

  const PermutabilityTable& table() const { return table_; }

  Degree sd_relative(const Subgroup& h) const {
    std::vector<uint32_t> rows = indices_within(*lat_, h.members);
    uint64_t c = table_.count_pairs(rows, all_);
    return as_degree(Rational(BigInt(c), BigInt(uint64_t(rows.size()) * all_.size())));
  }

  Degree sd_whole() const {
    uint64_t c = table_.count_pairs(all_, all_);
    return as_degree(Rational(BigInt(c), BigInt(uint64_t(all_.size()) * all_.size())));
  }

 private:
  const GroupTable* g_;
  const SubgroupLattice* lat_;
  PermutabilityTable table_;
  std::vector<uint32_t> all_;
};

// Convenience entry points mirroring the definitions one-for-one. Each builds
// what it needs; use the engines when evaluating many subgroups of one group.

inline Degree csd_relative(const GroupTable& g, const Subgroup& h) {
  return CyclicDegreeEngine(g).csd_relative(h);
}

inline Degree csd(const GroupTable& g) { return CyclicDegreeEngine(g).csd_whole(); }

inline Degree sd_relative(const GroupTable& g, const Subgroup& h,
                          const Limits& limits = default_limits()) {
  SubgroupLattice lat = all_subgroups(g, limits);
  return FullDegreeEngine(g, lat, limits.workers).sd_relative(h);
}

inline Degree sd(const GroupTable& g, const Limits& limits = default_limits()) {
  SubgroupLattice lat = all_subgroups(g, limits);
  return FullDegreeEngine(g, lat, limits.workers).sd_whole();
}

/// C1(H1) = {G1 ∈ L1(G) | H1 G1 = G1 H1} as subgroups.
inline std::vector<Subgroup> c1_set(const GroupTable& g, const Subgroup& h1) {
  if (!h1.is_cyclic()) throw ConstraintError("c1_set requires a cyclic subgroup");
  CyclicPoset poset = cyclic_subgroups(g);
  std::vector<Subgroup> out;
  for (const Subgroup& k : poset.entries)
    if (permutes(g, h1, k)) out.push_back(k);
  return out;
}

}  // namespace csd
