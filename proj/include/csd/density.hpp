#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "csd/config.hpp"
#include "csd/degrees.hpp"
#include "csd/formulas.hpp"
#include "csd/group.hpp"
#include "csd/lattice.hpp"
#include "csd/primes.hpp"
#include "csd/rational.hpp"

namespace csd {

/// One factor of a density witness: the subgroup/group pair
/// (Z_{q^n}, Z_p ⋊ Z_{q^n}) with csd value tending to n/(n+1) as p grows.
/// k is the acting exponent used when the group is instantiated concretely.
struct WitnessTerm {
  uint64_t q = 0;
  uint64_t n = 0;
  uint64_t p = 0;
  uint64_t k = 0;
  Rational value;  // csd(Z_{q^n}, Z_p ⋊ Z_{q^n}), exact
  Rational limit;  // n/(n+1)
};

/// A finite, checkable witness that csd values approach the target rational.
struct ApproachWitness {
  enum class Kind { Product, QuaternionTail, Constant };

  Kind kind = Kind::Constant;
  uint64_t a = 0, b = 1;  // target = a/b as requested (not reduced)
  Rational target;
  Rational tolerance;
  std::vector<WitnessTerm> terms;  // Product
  uint64_t tail_n = 0;             // QuaternionTail: csd(Q_{2^n}) < tol
  Rational value;
  Rational error;  // |value - target|, strictly below tolerance

  /// Re-derives every claim from the stored integers alone: primality,
  /// distinctness (hence coprime component orders), congruences, exponent
  /// sequence, term values, the exact product and the error bound. Throws
  /// std::logic_error on any violation.
  void validate() const {
    auto ensure = [](bool ok, const std::string& what) {
      if (!ok) throw std::logic_error("witness check failed: " + what);
    };
    ensure(tolerance > 0, "tolerance must be positive");
    ensure(target == Rational(BigInt(a), BigInt(b)), "target does not match a/b");
    ensure(error < tolerance, "error not below tolerance");
    switch (kind) {
      case Kind::Constant:
        ensure(a == b && value == 1 && error == 0, "constant witness must be the value 1");
        break;
      case Kind::QuaternionTail: {
        ensure(a == 0, "tail witness only represents the target 0");
        ensure(tail_n >= 3, "tail index must be >= 3");
        ensure(value == csd_quaternion(static_cast<uint32_t>(tail_n)), "tail value mismatch");
        ensure(error == value, "tail error must equal its value");
        if (tail_n > 3)
          ensure(csd_quaternion(static_cast<uint32_t>(tail_n - 1)) >= tolerance,
                 "tail index not minimal");
        break;
      }
      case Kind::Product: {
        ensure(terms.size() == b - a, "wrong number of terms");
        std::set<uint64_t> primes;
        Rational product = 1, limit_product = 1;
        for (size_t j = 0; j < terms.size(); ++j) {
          const WitnessTerm& t = terms[j];
          ensure(is_prime(t.q) && is_prime(t.p), "term primes must be prime");
          ensure(primes.insert(t.q).second && primes.insert(t.p).second,
                 "term primes must be pairwise distinct");
          ensure(t.p % t.q == 1, "p ≡ 1 (mod q) violated");
          ensure(t.n == a + j, "exponent sequence must be a, a+1, ..., b-1");
          ensure(t.k > 1 && pow_mod(t.k, t.q, t.p) == 1, "k^q ≡ 1 (mod p) violated");
          for (uint64_t c = 2; c < t.k; ++c)
            ensure(pow_mod(c, t.q, t.p) != 1, "k not minimal");
          G1FamilyValues v = g1_family_formulas(t.p, t.q, static_cast<uint32_t>(t.n));
          ensure(t.value == v.relative, "term value mismatch");
          ensure(t.limit == v.rel_limit, "term limit mismatch");
          product *= t.value;
          limit_product *= t.limit;
        }
        ensure(limit_product == target, "limits do not telescope to the target");
        ensure(product == value, "product value mismatch");
        ensure(value - target == error, "error mismatch");
        ensure(error > 0, "product witness must overshoot the target");
        break;
      }
    }
  }
};

/// Exact value and limit of one witness term: csd(Z_{q^n}, Z_p ⋊ Z_{q^n})
/// and n/(n+1). Whenever the concrete group fits under the construction
/// bound the value is re-derived by enumeration; a mismatch would mean the
/// construction is broken and raises std::logic_error.
inline std::pair<Rational, Rational> limit_term(uint64_t q, uint64_t n, uint64_t p,
                                                const Limits& limits = default_limits(),
                                                bool audit = true) {
  G1FamilyValues v = g1_family_formulas(p, q, static_cast<uint32_t>(n));
  if (audit) {
    uint64_t qn = 1;
    bool fits = true;
    for (uint64_t i = 0; i < n && fits; ++i) {
      qn *= q;
      fits = qn <= limits.max_construction_order;
    }
    if (fits && p * qn <= limits.max_construction_order) {
      uint64_t k = smallest_element_of_order(q, p);
      GroupTable g = build_semidirect_cyclic(static_cast<uint32_t>(p), static_cast<uint32_t>(qn),
                                             static_cast<uint32_t>(k), limits);
      // the Z_{q^n} factor is generated by (0,1), which is element index 1
      Subgroup h = generated_subgroup(g, {1});
      if (h.order != qn) throw std::logic_error("unexpected Sylow subgroup order in limit_term");
      Rational enumerated = csd_relative(g, h);
      if (enumerated != v.relative)
        throw std::logic_error("limit_term: enumeration disagrees with the closed form for Zsd(" +
                               std::to_string(p) + "," + std::to_string(qn) + ",...): " +
                               fraction_string(enumerated) + " vs " + fraction_string(v.relative));
    }
  }
  return {v.relative, v.rel_limit};
}

/// csd(Q_{2^n}) for n = 3..max_n. Strictly decreasing from n = 4 and tending
/// to 0, which settles the target 0 endpoint.
inline std::vector<std::pair<uint32_t, Rational>> quaternion_tail(uint32_t max_n) {
  if (max_n < 3) throw ConstraintError("quaternion_tail requires max_n >= 3");
  std::vector<std::pair<uint32_t, Rational>> out;
  out.reserve(max_n - 2);
  for (uint32_t n = 3; n <= max_n; ++n) out.emplace_back(n, csd_quaternion(n));
  return out;
}

/// Constructs a witness whose exact value lies within tol of a/b.
///
/// For 0 < a < b: b-a terms with exponents n_j = a+j-1 whose limits
/// telescope to a/b. The q_j are drawn in order from the primes ≡ 3 (mod 4);
/// p_j is the smallest unused prime ≡ 1 (mod q_j) large enough that the term
/// gap (2n+1)/((n+1)(2n+p)) stays under tol/(b-a). Every factor is < 1, so
/// the total overshoot is below the sum of the gaps, hence below tol.
inline ApproachWitness approach_rational(uint64_t a, uint64_t b, const Rational& tol,
                                         const Limits& limits = default_limits()) {
  if (b < 1 || a > b) throw ConstraintError("approach_rational requires 0 <= a <= b, b >= 1");
  if (tol <= 0) throw ConstraintError("tolerance must be positive");

  ApproachWitness w;
  w.a = a;
  w.b = b;
  w.target = Rational(BigInt(a), BigInt(b));
  w.tolerance = tol;

  if (a == b) {
    w.kind = ApproachWitness::Kind::Constant;
    w.value = 1;
    w.error = 0;
    return w;
  }
  if (a == 0) {
    w.kind = ApproachWitness::Kind::QuaternionTail;
    uint32_t n = 3;
    while (csd_quaternion(n) >= tol) {
      ++n;
      if (n > 1'000'000) throw BoundError("quaternion tail index exceeds horizon");
    }
    w.tail_n = n;
    w.value = csd_quaternion(n);
    w.error = w.value;
    return w;
  }

  w.kind = ApproachWitness::Kind::Product;
  Rational per_term = tol / Rational(BigInt(b - a));
  std::set<uint64_t> used;
  uint64_t q_candidate = 3;
  for (uint64_t j = 1; j <= b - a; ++j) {
    uint64_t n = a + j - 1;
    while (!is_prime(q_candidate) || q_candidate % 4 != 3 || used.count(q_candidate)) {
      q_candidate += 2;
      if (q_candidate > limits.prime_search_horizon)
        throw BoundError("ran out of primes ≡ 3 (mod 4) under the horizon");
    }
    uint64_t q = q_candidate;

    // gap < per_term  ⟺  p > (2n+1) / (per_term (n+1)) - 2n
    Rational bound = Rational(BigInt(2 * n + 1)) / (per_term * Rational(BigInt(n + 1))) -
                     Rational(BigInt(2 * n));
    uint64_t lo = 2;
    if (bound >= 2) {
      BigInt fl = numerator(bound) / denominator(bound);
      lo = fl.convert_to<uint64_t>() + 1;
    }
    uint64_t p = next_prime_cong1(q, lo, limits);
    while (used.count(p)) p = next_prime_cong1(q, p + 1, limits);
    used.insert(q);
    used.insert(p);

    WitnessTerm t;
    t.q = q;
    t.n = n;
    t.p = p;
    t.k = smallest_element_of_order(q, p);
    G1FamilyValues v = g1_family_formulas(p, q, static_cast<uint32_t>(n));
    t.value = v.relative;
    t.limit = v.rel_limit;
    w.terms.push_back(std::move(t));
  }

  w.value = 1;
  for (const WitnessTerm& t : w.terms) w.value *= t.value;
  w.error = w.value - w.target;
  w.validate();
  return w;
}

}  // namespace csd
