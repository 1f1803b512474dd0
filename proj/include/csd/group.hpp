#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "csd/config.hpp"
#include "csd/primes.hpp"

namespace csd {

/// A finite group as an immutable multiplication table over element indices
/// 0..order-1, with identity/inverse data, a canonical spec string and a
/// generating set. Immutable after construction; safe to share across threads.
class GroupTable {
 public:
  using Elem = uint32_t;

  GroupTable(uint32_t order, std::vector<uint16_t> mul, std::string spec,
             std::vector<Elem> generators, const Limits& limits = default_limits())
      : order_(order), mul_(std::move(mul)), spec_(std::move(spec)),
        generators_(std::move(generators)) {
    if (order_ == 0) throw ConstraintError("group order must be positive");
    if (order_ > limits.max_construction_order)
      throw BoundError("order " + std::to_string(order_) + " exceeds construction bound " +
                       std::to_string(limits.max_construction_order));
    if (mul_.size() != static_cast<size_t>(order_) * order_)
      throw ConstraintError("multiplication table has wrong size");
    find_identity();
    build_inverses();
    validate(limits);
  }

  uint32_t order() const { return order_; }
  Elem identity() const { return identity_; }
  Elem mul(Elem a, Elem b) const { return mul_[static_cast<size_t>(a) * order_ + b]; }
  Elem inverse(Elem a) const { return inv_[a]; }
  const std::string& spec() const { return spec_; }
  const std::vector<Elem>& generators() const { return generators_; }

  Elem conjugate(Elem g, Elem h) const {  // g h g^-1
    return mul(mul(g, h), inv_[g]);
  }

  Elem power(Elem g, uint64_t e) const {
    Elem acc = identity_;
    while (e) {
      if (e & 1) acc = mul(acc, g);
      g = mul(g, g);
      e >>= 1;
    }
    return acc;
  }

  /// Least t >= 1 with g^t = identity.
  uint32_t element_order(Elem g) const {
    uint32_t t = 1;
    Elem x = g;
    while (x != identity_) { x = mul(x, g); ++t; }
    return t;
  }

  /// order -> multiplicity. An isomorphism-invariant fingerprint used by
  /// tests; equality of histograms is necessary, not sufficient.
  std::map<uint32_t, uint32_t> element_order_histogram() const {
    std::map<uint32_t, uint32_t> h;
    for (Elem g = 0; g < order_; ++g) ++h[element_order(g)];
    return h;
  }

  /// Re-runs the construction checks: two-sided identity and inverses,
  /// associativity (exhaustive up to the configured order, sampled beyond),
  /// and that the generator set generates everything.
  void validate(const Limits& limits = default_limits()) const {
    for (Elem a = 0; a < order_; ++a) {
      if (mul(identity_, a) != a || mul(a, identity_) != a)
        throw ConstraintError("identity is not two-sided in " + spec_);
      if (mul(a, inv_[a]) != identity_ || mul(inv_[a], a) != identity_)
        throw ConstraintError("inverse is not two-sided in " + spec_);
      for (Elem b = 0; b < order_; ++b)
        if (mul(a, b) >= order_) throw ConstraintError("table entry out of range in " + spec_);
    }
    if (order_ <= limits.assoc_exhaustive_order) {
      for (Elem a = 0; a < order_; ++a)
        for (Elem b = 0; b < order_; ++b)
          for (Elem c = 0; c < order_; ++c)
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
              throw ConstraintError("multiplication not associative in " + spec_);
    } else {
      uint64_t state = 0x9e3779b97f4a7c15ull ^ order_;
      auto next = [&state]() {
        state ^= state << 13; state ^= state >> 7; state ^= state << 17;
        return state;
      };
      for (int i = 0; i < 200000; ++i) {
        Elem a = next() % order_, b = next() % order_, c = next() % order_;
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw ConstraintError("multiplication not associative in " + spec_);
      }
    }
    // closure of the generators must be the whole element set
    std::vector<char> seen(order_, 0);
    seen[identity_] = 1;
    std::vector<Elem> frontier{identity_};
    size_t reached = 1;
    while (!frontier.empty()) {
      std::vector<Elem> next_frontier;
      for (Elem x : frontier) {
        for (Elem g : generators_) {
          Elem y = mul(x, g);
          if (!seen[y]) { seen[y] = 1; ++reached; next_frontier.push_back(y); }
        }
      }
      frontier = std::move(next_frontier);
    }
    if (reached != order_)
      throw ConstraintError("generator set does not generate " + spec_);
  }

 private:
  void find_identity() {
    for (Elem e = 0; e < order_; ++e) {
      bool ok = true;
      for (Elem a = 0; a < order_ && ok; ++a)
        ok = mul(e, a) == a && mul(a, e) == a;
      if (ok) { identity_ = e; return; }
    }
    throw ConstraintError("no two-sided identity in " + spec_);
  }

  void build_inverses() {
    inv_.assign(order_, 0);
    for (Elem a = 0; a < order_; ++a) {
      bool found = false;
      for (Elem b = 0; b < order_; ++b) {
        if (mul(a, b) == identity_ && mul(b, a) == identity_) {
          inv_[a] = static_cast<uint16_t>(b);
          found = true;
          break;
        }
      }
      if (!found) throw ConstraintError("element without inverse in " + spec_);
    }
  }

  uint32_t order_;
  std::vector<uint16_t> mul_;
  std::vector<uint16_t> inv_;
  Elem identity_ = 0;
  std::string spec_;
  std::vector<Elem> generators_;
};

namespace detail {

inline GroupTable from_mul_fn(uint32_t order,
                              const std::function<uint32_t(uint32_t, uint32_t)>& f,
                              std::string spec, std::vector<uint32_t> gens,
                              const Limits& limits) {
  if (order > limits.max_construction_order)
    throw BoundError("order " + std::to_string(order) + " exceeds construction bound " +
                     std::to_string(limits.max_construction_order));
  if (order > 65535) throw BoundError("order exceeds table element width");
  std::vector<uint16_t> mul(static_cast<size_t>(order) * order);
  for (uint32_t a = 0; a < order; ++a)
    for (uint32_t b = 0; b < order; ++b)
      mul[static_cast<size_t>(a) * order + b] = static_cast<uint16_t>(f(a, b));
  return GroupTable(order, std::move(mul), std::move(spec), std::move(gens), limits);
}

}  // namespace detail

/// Z_m with i*j = (i+j) mod m.
inline GroupTable build_cyclic(uint32_t m, const Limits& limits = default_limits()) {
  if (m < 1) throw ConstraintError("cyclic order must be >= 1");
  std::vector<uint32_t> gens;
  if (m > 1) gens.push_back(1);
  return detail::from_mul_fn(
      m, [m](uint32_t a, uint32_t b) { return (a + b) % m; },
      "Z" + std::to_string(m), std::move(gens), limits);
}

/// Z_m ⋊ Z_n acting by k: (a,b)(a',b') = (a + a'·k^b mod m, b+b' mod n).
/// Realizes the relation y x y^{-1} = x^k. Requires gcd(k,m) = 1 and
/// k^n ≡ 1 (mod m); the trivial action k = 1 gives the direct product.
inline GroupTable build_semidirect_cyclic(uint32_t m, uint32_t n, uint32_t k,
                                          const Limits& limits = default_limits(),
                                          std::string spec = "") {
  if (m < 1 || n < 1) throw ConstraintError("Zsd parameters must be positive");
  uint32_t kr = m == 1 ? 0 : k % m;
  if (m > 1) {
    if (std::gcd(static_cast<uint64_t>(kr), static_cast<uint64_t>(m)) != 1)
      throw ConstraintError("Zsd(" + std::to_string(m) + "," + std::to_string(n) + "," +
                            std::to_string(k) + "): gcd(k,m) = " +
                            std::to_string(std::gcd<uint64_t>(kr, m)) + ", expected 1");
    uint64_t kn = pow_mod(kr, n, m);
    if (kn != 1 % m)
      throw ConstraintError("Zsd(" + std::to_string(m) + "," + std::to_string(n) + "," +
                            std::to_string(k) + "): k^n ≡ " + std::to_string(kn) +
                            " (mod m), expected 1");
  }
  // powers of k mod m, indexed by the Z_n coordinate
  std::vector<uint32_t> kp(n, m == 1 ? 0 : 1);
  for (uint32_t b = 1; b < n; ++b) kp[b] = static_cast<uint32_t>((static_cast<uint64_t>(kp[b - 1]) * kr) % m);
  auto f = [m, n, &kp](uint32_t x, uint32_t y) {
    uint32_t a = x / n, b = x % n, a2 = y / n, b2 = y % n;
    uint32_t ar = m == 1 ? 0 : (a + static_cast<uint32_t>((static_cast<uint64_t>(a2) * kp[b]) % m)) % m;
    return ar * n + (b + b2) % n;
  };
  if (spec.empty())
    spec = "Zsd(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(k) + ")";
  std::vector<uint32_t> gens;
  if (m > 1) gens.push_back(n);  // x = (1,0)
  if (n > 1) gens.push_back(1);  // y = (0,1)
  return detail::from_mul_fn(m * n, f, std::move(spec), std::move(gens), limits);
}

/// Dihedral group of the given ORDER 2m (rotation subgroup Z_m, m reflections).
inline GroupTable build_dihedral(uint32_t order, const Limits& limits = default_limits()) {
  if (order < 4 || order % 2 != 0)
    throw ConstraintError("dihedral order must be even and >= 4, got " + std::to_string(order));
  uint32_t m = order / 2;
  return build_semidirect_cyclic(m, 2, m - 1, limits, "D" + std::to_string(order));
}

/// Generalized quaternion (dicyclic) group of order 2^n, n >= 3, on pairs
/// x^a y^b with y^2 = x^{2^{n-2}} and y x y^{-1} = x^{-1}.
inline GroupTable build_generalized_quaternion(uint32_t order,
                                               const Limits& limits = default_limits()) {
  if (order < 8 || (order & (order - 1)) != 0)
    throw ConstraintError("quaternion order must be 2^n with n >= 3, got " + std::to_string(order));
  uint32_t h = order / 2;  // order of x
  uint32_t q = order / 4;  // y^2 = x^q
  auto f = [h, q](uint32_t s, uint32_t t) {
    uint32_t a = s / 2, b = s % 2, a2 = t / 2, b2 = t % 2;
    uint32_t ar = b == 0 ? (a + a2) % h : (a + h - a2 % h) % h;
    if (b == 1 && b2 == 1) ar = (ar + q) % h;
    return ar * 2 + (b ^ b2);
  };
  return detail::from_mul_fn(order, f, "Q" + std::to_string(order), {2, 1}, limits);
}

/// Quasidihedral (semidihedral) group of order 2^n, n >= 4, with the
/// conjugation action x -> x^{2^{n-2}-1}.
inline GroupTable build_quasidihedral(uint32_t order, const Limits& limits = default_limits()) {
  if (order < 16 || (order & (order - 1)) != 0)
    throw ConstraintError("quasidihedral order must be 2^n with n >= 4, got " + std::to_string(order));
  uint32_t m = order / 2;
  return build_semidirect_cyclic(m, 2, m / 2 - 1, limits, "SD" + std::to_string(order));
}

/// Modular maximal-cyclic group M(p^n). The defining relation conjugates x by
/// y with exponent 1+p^{n-2}; under this library's y x y^{-1} = x^k convention
/// the equivalent k is the inverse of that exponent mod p^{n-1}.
inline GroupTable build_modular(uint32_t p, uint32_t n, const Limits& limits = default_limits()) {
  if (!is_prime(p)) throw ConstraintError("M(p,n): p = " + std::to_string(p) + " is not prime");
  if ((p >= 3 && n < 3) || (p == 2 && n < 4))
    throw ConstraintError("M(p,n) requires n >= 3 for odd p and n >= 4 for p = 2");
  uint64_t m = 1;
  for (uint32_t i = 0; i + 1 < n; ++i) {
    m *= p;
    if (m > 65535) throw BoundError("M(p,n) order overflows table width");
  }
  uint64_t exp = 1 + m / p;  // 1 + p^{n-2}
  // k = exp^{-1} mod p^{n-1}; exp is coprime to p so the inverse exists
  uint64_t k = 1, base = exp % m, e = (m / p) * (p - 1) - 1;  // φ(p^{n-1}) - 1
  while (e) {
    if (e & 1) k = (k * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return build_semidirect_cyclic(static_cast<uint32_t>(m), p, static_cast<uint32_t>(k), limits,
                                 "M(" + std::to_string(p) + "," + std::to_string(n) + ")");
}

/// The alternating group A_4: the 12 even permutations of 4 points.
inline GroupTable build_alternating4(const Limits& limits = default_limits()) {
  std::vector<std::array<uint8_t, 4>> perms;
  std::array<uint8_t, 4> p{0, 1, 2, 3};
  // enumerate all permutations, keep the even ones, in lexicographic order
  std::vector<uint8_t> idx{0, 1, 2, 3};
  do {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (idx[i] > idx[j]) ++inv;
    if (inv % 2 == 0) {
      for (int i = 0; i < 4; ++i) p[i] = idx[i];
      perms.push_back(p);
    }
  } while (std::next_permutation(idx.begin(), idx.end()));

  std::map<std::array<uint8_t, 4>, uint32_t> lookup;
  for (uint32_t i = 0; i < perms.size(); ++i) lookup[perms[i]] = i;
  auto f = [&perms, &lookup](uint32_t a, uint32_t b) {
    std::array<uint8_t, 4> c;
    for (int i = 0; i < 4; ++i) c[i] = perms[a][perms[b][i]];  // b first, then a
    return lookup.at(c);
  };
  // (012) and (01)(23) generate A_4
  uint32_t g1 = lookup.at({1, 2, 0, 3});
  uint32_t g2 = lookup.at({1, 0, 3, 2});
  return detail::from_mul_fn(12, f, "A4", {g1, g2}, limits);
}

/// Componentwise product on pairs (a, b) with index a*|H| + b.
inline GroupTable build_direct_product(const GroupTable& g, const GroupTable& h,
                                       const Limits& limits = default_limits()) {
  uint64_t order = static_cast<uint64_t>(g.order()) * h.order();
  if (order > limits.max_construction_order)
    throw BoundError("product order " + std::to_string(order) + " exceeds construction bound " +
                     std::to_string(limits.max_construction_order));
  uint32_t hn = h.order();
  auto f = [&g, &h, hn](uint32_t x, uint32_t y) {
    return g.mul(x / hn, y / hn) * hn + h.mul(x % hn, y % hn);
  };
  std::vector<uint32_t> gens;
  for (auto e : g.generators()) gens.push_back(e * hn + h.identity());
  for (auto e : h.generators()) gens.push_back(g.identity() * hn + e);
  return detail::from_mul_fn(static_cast<uint32_t>(order), f, g.spec() + " x " + h.spec(),
                             std::move(gens), limits);
}

/// Least t >= 1 with g^t = identity.
inline uint32_t element_order(const GroupTable& g, GroupTable::Elem e) {
  return g.element_order(e);
}

}  // namespace csd
