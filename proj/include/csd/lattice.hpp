#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "csd/config.hpp"
#include "csd/group.hpp"

namespace csd {

/// Fixed-width bit mask over element indices. Subgroup membership lives in
/// these; set equality, subset tests and hashing are word operations.
class ElementSet {
 public:
  explicit ElementSet(uint32_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  uint32_t universe() const { return universe_; }
  uint32_t count() const { return count_; }

  bool test(uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  /// Returns true if the bit was newly set.
  bool set(uint32_t i) {
    uint64_t& w = words_[i >> 6];
    uint64_t bit = 1ull << (i & 63);
    if (w & bit) return false;
    w |= bit;
    ++count_;
    return true;
  }

  bool contains(const ElementSet& other) const {  // other ⊆ this
    for (size_t i = 0; i < words_.size(); ++i)
      if ((other.words_[i] & ~words_[i]) != 0) return false;
    return true;
  }

  bool operator==(const ElementSet& o) const { return words_ == o.words_; }

  size_t hash() const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (uint64_t w : words_) {
      h ^= w;
      h *= 0x100000001b3ull;
    }
    return static_cast<size_t>(h);
  }

  std::vector<uint32_t> members() const {
    std::vector<uint32_t> out;
    out.reserve(count_);
    for (uint32_t i = 0; i < universe_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  /// Lexicographic order on the word vector; used only to fix deterministic
  /// report ordering among equal-order subgroups.
  bool lex_less(const ElementSet& o) const { return words_ < o.words_; }

 private:
  uint32_t universe_;
  uint32_t count_ = 0;
  std::vector<uint64_t> words_;
};

struct ElementSetHash {
  size_t operator()(const ElementSet& s) const { return s.hash(); }
};

/// A subgroup: member mask, cached order, and a generator witness when the
/// subgroup is cyclic.
struct Subgroup {
  ElementSet members;
  uint32_t order = 0;
  std::optional<uint32_t> cyclic_witness;

  bool is_cyclic() const { return cyclic_witness.has_value(); }
};

/// L1(G): the distinct cyclic subgroups, with per-entry normality.
struct CyclicPoset {
  std::vector<Subgroup> entries;
  std::vector<char> normal;

  size_t size() const { return entries.size(); }
};

/// L(G): every subgroup, with normality flags and the conjugacy-class
/// partition (class id per subgroup).
struct SubgroupLattice {
  std::vector<Subgroup> entries;
  std::vector<char> normal;
  std::vector<uint32_t> class_of;
  uint32_t class_count = 0;

  size_t size() const { return entries.size(); }

  std::vector<std::vector<uint32_t>> classes() const {
    std::vector<std::vector<uint32_t>> out(class_count);
    for (uint32_t i = 0; i < entries.size(); ++i) out[class_of[i]].push_back(i);
    return out;
  }
};

namespace detail {

/// Product-closure fixpoint from a seed set. Finiteness makes closure under
/// multiplication sufficient (inverses come for free).
inline ElementSet close_under_product(const GroupTable& g, ElementSet seed) {
  seed.set(g.identity());
  std::vector<uint32_t> elems = seed.members();
  size_t next = 0;
  while (next < elems.size()) {
    uint32_t a = elems[next++];
    for (size_t i = 0; i < elems.size(); ++i) {
      uint32_t p = g.mul(a, elems[i]);
      if (seed.set(p)) elems.push_back(p);
      uint32_t q = g.mul(elems[i], a);
      if (seed.set(q)) elems.push_back(q);
    }
  }
  return seed;
}

inline std::optional<uint32_t> find_cyclic_witness(const GroupTable& g, const ElementSet& members) {
  for (uint32_t e = 0; e < g.order(); ++e)
    if (members.test(e) && g.element_order(e) == members.count()) return e;
  return std::nullopt;
}

inline ElementSet conjugate_set(const GroupTable& g, uint32_t by, const ElementSet& s) {
  ElementSet out(g.order());
  for (uint32_t e = 0; e < g.order(); ++e)
    if (s.test(e)) out.set(g.conjugate(by, e));
  return out;
}

inline bool subgroup_order_less(const Subgroup& a, const Subgroup& b) {
  if (a.order != b.order) return a.order < b.order;
  return a.members.lex_less(b.members);
}

}  // namespace detail

/// Least subgroup containing the seed elements.
inline Subgroup generated_subgroup(const GroupTable& g, const std::vector<uint32_t>& seeds) {
  ElementSet seed(g.order());
  for (uint32_t s : seeds) {
    if (s >= g.order()) throw ConstraintError("seed element out of range");
    seed.set(s);
  }
  ElementSet closed = detail::close_under_product(g, std::move(seed));
  Subgroup h{closed, closed.count(), detail::find_cyclic_witness(g, closed)};
  return h;
}

/// True iff x H x^{-1} = H for every generator x of G (equivalently for every
/// element, since the normalizer is a subgroup).
inline bool is_normal(const GroupTable& g, const Subgroup& h) {
  for (uint32_t x : g.generators()) {
    for (uint32_t e = 0; e < g.order(); ++e)
      if (h.members.test(e) && !h.members.test(g.conjugate(x, e))) return false;
  }
  return true;
}

/// The deduplicated set {⟨g⟩ : g ∈ G}, sorted by (order, mask).
inline CyclicPoset cyclic_subgroups(const GroupTable& g) {
  std::unordered_map<ElementSet, uint32_t, ElementSetHash> seen;
  std::vector<Subgroup> subs;
  for (uint32_t e = 0; e < g.order(); ++e) {
    ElementSet m(g.order());
    uint32_t x = g.identity();
    m.set(x);
    while (true) {
      x = g.mul(x, e);
      if (x == g.identity()) break;
      m.set(x);
    }
    if (seen.emplace(m, static_cast<uint32_t>(subs.size())).second)
      subs.push_back(Subgroup{m, m.count(), e});
  }
  std::sort(subs.begin(), subs.end(), detail::subgroup_order_less);
  CyclicPoset poset;
  poset.entries = std::move(subs);
  poset.normal.reserve(poset.entries.size());
  for (const Subgroup& h : poset.entries) poset.normal.push_back(is_normal(g, h));
  return poset;
}

/// Orbit partition of the given subgroups under conjugation. Orbits are
/// closed through generator conjugation only; conjugation by a word in the
/// generators reaches everything conjugation by group elements can.
inline std::vector<uint32_t> conjugacy_classes(const GroupTable& g,
                                               const std::vector<Subgroup>& subs,
                                               uint32_t* class_count_out = nullptr) {
  std::unordered_map<ElementSet, uint32_t, ElementSetHash> index;
  for (uint32_t i = 0; i < subs.size(); ++i) index.emplace(subs[i].members, i);

  std::vector<uint32_t> class_of(subs.size(), UINT32_MAX);
  uint32_t classes = 0;
  for (uint32_t i = 0; i < subs.size(); ++i) {
    if (class_of[i] != UINT32_MAX) continue;
    uint32_t id = classes++;
    std::vector<uint32_t> frontier{i};
    class_of[i] = id;
    while (!frontier.empty()) {
      uint32_t j = frontier.back();
      frontier.pop_back();
      for (uint32_t x : g.generators()) {
        ElementSet conj = detail::conjugate_set(g, x, subs[j].members);
        auto it = index.find(conj);
        if (it == index.end())
          throw std::logic_error("conjugate of a listed subgroup is not in the list");
        if (class_of[it->second] == UINT32_MAX) {
          class_of[it->second] = id;
          frontier.push_back(it->second);
        }
      }
    }
  }
  if (class_count_out) *class_count_out = classes;
  return class_of;
}

/// Complete L(G) by layered closure: seed with the cyclic subgroups, then
/// adjoin ⟨A ∪ {g}⟩ for proper subgroups A and elements g ∉ A until nothing
/// new appears. Every subgroup is ⟨g_1,...,g_t⟩ and is reached by adding one
/// generator at a time, so the fixpoint is all of L(G).
inline SubgroupLattice all_subgroups(const GroupTable& g,
                                     const Limits& limits = default_limits()) {
  if (g.order() > limits.max_lattice_order)
    throw BoundError("order " + std::to_string(g.order()) + " exceeds full-lattice bound " +
                     std::to_string(limits.max_lattice_order));

  CyclicPoset l1 = cyclic_subgroups(g);
  std::unordered_map<ElementSet, uint32_t, ElementSetHash> seen;
  std::vector<Subgroup> subs;
  for (const Subgroup& h : l1.entries) {
    seen.emplace(h.members, static_cast<uint32_t>(subs.size()));
    subs.push_back(h);
  }
  size_t next = 0;
  while (next < subs.size()) {
    // copy the mask: subs may reallocate while we extend
    ElementSet base = subs[next].members;
    ++next;
    if (base.count() == g.order()) continue;
    for (uint32_t e = 0; e < g.order(); ++e) {
      if (base.test(e)) continue;
      ElementSet seed = base;
      seed.set(e);
      ElementSet closed = detail::close_under_product(g, std::move(seed));
      if (seen.find(closed) == seen.end()) {
        seen.emplace(closed, static_cast<uint32_t>(subs.size()));
        // any cyclic subgroup is already present via L1, so no witness here
        subs.push_back(Subgroup{closed, closed.count(), std::nullopt});
      }
    }
  }
  std::sort(subs.begin(), subs.end(), detail::subgroup_order_less);

  SubgroupLattice lat;
  lat.entries = std::move(subs);
  lat.normal.reserve(lat.entries.size());
  for (const Subgroup& h : lat.entries) lat.normal.push_back(is_normal(g, h));
  lat.class_of = conjugacy_classes(g, lat.entries, &lat.class_count);
  return lat;
}

/// Entries of the ambient collection contained in H. Correct for L(H) and
/// L1(H) because every subgroup of H is a subgroup of G; normality flags stay
/// relative to G.
template <typename Collection>
inline Collection subgroups_within(const Collection& ambient, const Subgroup& h) {
  Collection out;
  for (size_t i = 0; i < ambient.entries.size(); ++i) {
    if (h.members.contains(ambient.entries[i].members)) {
      out.entries.push_back(ambient.entries[i]);
      out.normal.push_back(ambient.normal[i]);
    }
  }
  return out;
}

/// Indices of ambient entries contained in the given member set.
template <typename Collection>
inline std::vector<uint32_t> indices_within(const Collection& ambient, const ElementSet& members) {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < ambient.entries.size(); ++i)
    if (members.contains(ambient.entries[i].members)) out.push_back(i);
  return out;
}

/// |N(G) ∩ L1(G)|: the number of normal cyclic subgroups.
inline uint32_t normal_cyclic_count(const GroupTable& g) {
  CyclicPoset l1 = cyclic_subgroups(g);
  uint32_t n = 0;
  for (char f : l1.normal) n += f ? 1 : 0;
  return n;
}

/// γ(G): conjugacy classes of non-normal subgroups.
inline uint32_t gamma(const GroupTable& g, const Limits& limits = default_limits()) {
  SubgroupLattice lat = all_subgroups(g, limits);
  std::vector<char> class_nonnormal(lat.class_count, 0);
  for (uint32_t i = 0; i < lat.entries.size(); ++i)
    if (!lat.normal[i]) class_nonnormal[lat.class_of[i]] = 1;
  uint32_t n = 0;
  for (char f : class_nonnormal) n += f ? 1 : 0;
  return n;
}

}  // namespace csd
