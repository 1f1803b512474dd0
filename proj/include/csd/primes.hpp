#pragma once

#include <cstdint>
#include <numeric>

#include "csd/config.hpp"

namespace csd {

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t mod) {
  if (mod == 1) return 0;
  uint64_t result = 1;
  base %= mod;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

/// Deterministic Miller-Rabin, valid for all n < 2^64.
inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // This base set is a proven witness set for the full 64-bit range.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

/// Smallest prime p >= lo with p ≡ 1 (mod q). Existence is guaranteed by
/// Dirichlet's theorem; the search still refuses to run past the horizon.
inline uint64_t next_prime_cong1(uint64_t q, uint64_t lo,
                                 const Limits& limits = default_limits()) {
  if (!is_prime(q)) throw ConstraintError("modulus q = " + std::to_string(q) + " is not prime");
  if (lo < 2) lo = 2;
  uint64_t p = lo + ((1 + q - lo % q) % q);  // first candidate >= lo, ≡ 1 mod q
  for (; p <= limits.prime_search_horizon; p += q) {
    if (p != q && is_prime(p)) return p;
  }
  throw BoundError("no prime ≡ 1 (mod " + std::to_string(q) + ") found in [" +
                   std::to_string(lo) + ", " + std::to_string(limits.prime_search_horizon) + "]");
}

/// Smallest k > 1 with k^q ≡ 1 (mod p), i.e. of multiplicative order exactly
/// q when q is prime. Requires q | p-1.
inline uint64_t smallest_element_of_order(uint64_t q, uint64_t p) {
  if ((p - 1) % q != 0)
    throw ConstraintError(std::to_string(q) + " does not divide " + std::to_string(p) + " - 1");
  for (uint64_t k = 2; k < p; ++k) {
    if (pow_mod(k, q, p) == 1) return k;
  }
  throw ConstraintError("no element of order " + std::to_string(q) + " mod " + std::to_string(p));
}

inline uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

/// Order of k in (Z/m)^*. Requires gcd(k, m) = 1 and m >= 2.
inline uint64_t multiplicative_order(uint64_t k, uint64_t m) {
  if (m < 2 || std::gcd(k % m, m) != 1)
    throw ConstraintError("multiplicative_order requires gcd(k,m) = 1");
  uint64_t x = k % m, t = 1;
  while (x != 1) {
    x = mul_mod(x, k % m, m);
    ++t;
  }
  return t;
}

/// Smallest k > 1 with multiplicative order exactly d mod m, if any.
inline uint64_t smallest_with_order(uint64_t m, uint64_t d) {
  for (uint64_t k = 2; k < m; ++k) {
    if (std::gcd(k, m) != 1) continue;
    if (multiplicative_order(k, m) == d) return k;
  }
  throw ConstraintError("no element of order " + std::to_string(d) + " mod " + std::to_string(m));
}

}  // namespace csd
