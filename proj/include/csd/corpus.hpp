#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "csd/group_spec.hpp"
#include "csd/primes.hpp"

namespace csd {

/// Deterministic enumeration of every constructor family up to max_order,
/// plus a slate of coprime direct products. This is the corpus the scan
/// commands walk; it is family-driven, not an all-groups-of-order-n census.
inline std::vector<std::string> builtin_corpus_specs(uint32_t max_order) {
  std::vector<std::string> out;
  auto push = [&out](std::string s) { out.push_back(std::move(s)); };

  for (uint32_t m = 1; m <= max_order; ++m) push("Z" + std::to_string(m));
  for (uint32_t o = 4; o <= max_order; o += 2) push("D" + std::to_string(o));
  for (uint32_t o = 8; o <= max_order; o *= 2) push("Q" + std::to_string(o));
  for (uint32_t o = 16; o <= max_order; o *= 2) push("SD" + std::to_string(o));
  if (max_order >= 12) push("A4");

  // modular maximal-cyclic groups M(p^n)
  for (uint32_t p = 2; p <= max_order; ++p) {
    if (!is_prime(p)) continue;
    uint32_t n0 = p == 2 ? 4 : 3;
    uint64_t order = 1;
    for (uint32_t i = 0; i < n0; ++i) order *= p;
    for (uint32_t n = n0; order <= max_order; ++n, order *= p)
      push("M(" + std::to_string(p) + "," + std::to_string(n) + ")");
  }

  // Z_p ⋊ Z_{q^n} with an action of prime order q | p-1
  for (uint64_t p = 3; p <= max_order / 2; ++p) {
    if (!is_prime(p)) continue;
    for (uint64_t q = 2; q < p; ++q) {
      if (!is_prime(q) || (p - 1) % q != 0) continue;
      uint64_t k = smallest_element_of_order(q, p);
      for (uint64_t qn = q; p * qn <= max_order; qn *= q)
        push("Zsd(" + std::to_string(p) + "," + std::to_string(qn) + "," + std::to_string(k) + ")");
    }
  }

  // Z_q ⋊ Z_{p^n} with an action of order p^2 (p^2 | q-1, n >= 2)
  for (uint64_t q = 5; q <= max_order / 4; ++q) {
    if (!is_prime(q)) continue;
    for (uint64_t p = 2; p * p <= q - 1; ++p) {
      if (!is_prime(p) || (q - 1) % (p * p) != 0) continue;
      uint64_t k = smallest_with_order(q, p * p);
      uint64_t pn = p * p;
      for (uint64_t n = 2; q * pn <= max_order; ++n, pn *= p)
        push("Zsd(" + std::to_string(q) + "," + std::to_string(pn) + "," + std::to_string(k) + ")");
    }
  }

  // Z_{q^2} ⋊ Z_{p^n} with an action of order p | q-1
  for (uint64_t q = 3; q * q <= max_order / 2; ++q) {
    if (!is_prime(q)) continue;
    for (uint64_t p = 2; p < q; ++p) {
      if (!is_prime(p) || (q - 1) % p != 0) continue;
      uint64_t k = smallest_with_order(q * q, p);
      uint64_t pn = p;
      for (uint64_t n = 1; q * q * pn <= max_order; ++n, pn *= p)
        push("Zsd(" + std::to_string(q * q) + "," + std::to_string(pn) + "," + std::to_string(k) + ")");
    }
  }

  if (max_order >= 16) push("Zsd(4,4,3)");
  // Z_{2^m} ⋊ Z_4 with the modular-style action 1 + 2^{m-1}
  for (uint64_t m = 8; 4 * m <= max_order; m *= 2)
    push("Zsd(" + std::to_string(m) + ",4," + std::to_string(1 + m / 2) + ")");

  // coprime products: nonabelian atom × cyclic
  struct Atom { const char* spec; uint32_t order; };
  const Atom atoms[] = {{"D8", 8},  {"Q8", 8},   {"D16", 16}, {"Q16", 16}, {"SD16", 16},
                        {"A4", 12}, {"Q32", 32}, {"M(3,3)", 27}, {"Zsd(7,3,2)", 21},
                        {"Zsd(3,2,2)", 6}};
  const uint32_t cyclics[] = {3, 5, 7, 9, 25, 2, 4};
  for (const Atom& a : atoms) {
    if (a.order > max_order) continue;
    for (uint32_t c : cyclics) {
      if (std::gcd(a.order, c) != 1) continue;
      if (static_cast<uint64_t>(a.order) * c > max_order) continue;
      push(std::string(a.spec) + " x Z" + std::to_string(c));
    }
  }
  return out;
}

/// The corpus for the property suites: every family represented at orders up
/// to 128, plus ten seeded-random coprime direct products. Deterministic.
inline std::vector<std::string> property_corpus_specs() {
  std::vector<std::string> out = {
      "Z1",  "Z2",  "Z12", "Z30",  "Z36",  "Z64",  "Z100", "Z128",
      "D4",  "D6",  "D8",  "D12",  "D16",  "D20",  "D32",  "D64",  "D128",
      "Q8",  "Q16", "Q32", "Q64",  "Q128",
      "SD16", "SD32", "SD64", "SD128",
      "A4",
      "M(2,4)", "M(3,3)", "M(2,5)", "M(3,4)", "M(2,7)",
      "Zsd(3,2,2)", "Zsd(7,3,2)", "Zsd(13,9,3)", "Zsd(11,5,3)",
      "Zsd(5,4,2)", "Zsd(9,2,8)", "Zsd(4,4,3)", "Zsd(8,4,5)",
  };

  struct Atom { const char* spec; uint32_t order; };
  const Atom pool[] = {{"D8", 8},   {"Q8", 8},   {"Q16", 16},    {"SD16", 16},  {"A4", 12},
                       {"D16", 16}, {"M(3,3)", 27}, {"Zsd(7,3,2)", 21}, {"Zsd(3,2,2)", 6},
                       {"Z4", 4},   {"Z9", 9},   {"Z5", 5},      {"Z7", 7},     {"Z8", 8},
                       {"Z3", 3},   {"Z25", 25}, {"Z27", 27},    {"Z15", 15}};
  std::mt19937 rng(20140623);  // fixed seed: same ten products every run
  std::uniform_int_distribution<size_t> pick(0, std::size(pool) - 1);
  size_t added = 0;
  while (added < 10) {
    const Atom& a = pool[pick(rng)];
    const Atom& b = pool[pick(rng)];
    if (std::gcd(a.order, b.order) != 1) continue;
    if (static_cast<uint64_t>(a.order) * b.order > 128) continue;
    std::string spec = std::string(a.spec) + " x " + b.spec;
    if (std::find(out.begin(), out.end(), spec) != out.end()) continue;
    out.push_back(std::move(spec));
    ++added;
  }
  return out;
}

}  // namespace csd
