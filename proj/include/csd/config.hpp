#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace csd {

/// Thrown when an input (spec text, parameter) is malformed.
struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(std::size_t off, const std::string& what)
      : std::runtime_error(what + " (at byte " + std::to_string(off) + ")"),
        offset(off) {}
};

/// Thrown when a structurally valid input violates a constructor constraint.
struct ConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a computation would exceed a configured resource bound.
struct BoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Resource bounds. Construction fails loudly beyond these rather than
/// degrading; all are overridable per call and from the CLI.
struct Limits {
  uint32_t max_construction_order = 5000;  // largest multiplication table
  uint32_t max_lattice_order = 512;        // largest full-lattice enumeration
  uint32_t assoc_exhaustive_order = 512;   // exhaustive associativity check up to here
  uint64_t prime_search_horizon = 100'000'000;  // next_prime_cong1 gives up past this
  unsigned workers = 1;                    // permutability-matrix parallelism
};

inline const Limits& default_limits() {
  static const Limits l{};
  return l;
}

}  // namespace csd
