#pragma once

#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "csd/config.hpp"
#include "csd/group.hpp"

namespace csd {

/// Parsed form of the group-spec mini-language:
///
///   expr := atom { "x" atom }
///   atom := "Z" nat | "D" nat | "Q" nat | "SD" nat | "A4"
///         | "M(" nat "," nat ")" | "Zsd(" nat "," nat "," nat ")"
///
/// Whitespace-insensitive; numbers are decimal. "D n", "Q n" and "SD n" take
/// the group ORDER. The grammar is a public, versioned contract: canonical
/// renderings are used verbatim as cache keys.
struct GroupExpr {
  enum class Kind : uint8_t {
    Cyclic, Dihedral, Quaternion, Quasidihedral, Modular, SemidirectCyclic, A4, Product
  };

  Kind kind = Kind::Cyclic;
  std::vector<uint64_t> params;     // atom parameters, empty for A4/Product
  std::vector<GroupExpr> factors;   // Product only, flattened (left-assoc)

  bool operator==(const GroupExpr&) const = default;

  std::string render() const {
    switch (kind) {
      case Kind::Cyclic: return "Z" + std::to_string(params[0]);
      case Kind::Dihedral: return "D" + std::to_string(params[0]);
      case Kind::Quaternion: return "Q" + std::to_string(params[0]);
      case Kind::Quasidihedral: return "SD" + std::to_string(params[0]);
      case Kind::A4: return "A4";
      case Kind::Modular:
        return "M(" + std::to_string(params[0]) + "," + std::to_string(params[1]) + ")";
      case Kind::SemidirectCyclic:
        return "Zsd(" + std::to_string(params[0]) + "," + std::to_string(params[1]) + "," +
               std::to_string(params[2]) + ")";
      case Kind::Product: {
        std::string out;
        for (size_t i = 0; i < factors.size(); ++i) {
          if (i) out += " x ";
          out += factors[i].render();
        }
        return out;
      }
    }
    return {};
  }

  uint64_t order() const {
    switch (kind) {
      case Kind::Cyclic:
      case Kind::Dihedral:
      case Kind::Quaternion:
      case Kind::Quasidihedral: return params[0];
      case Kind::A4: return 12;
      case Kind::Modular: {
        uint64_t o = 1;
        for (uint64_t i = 0; i < params[1]; ++i) o *= params[0];
        return o;
      }
      case Kind::SemidirectCyclic: return params[0] * params[1];
      case Kind::Product: {
        uint64_t o = 1;
        for (const auto& f : factors) o *= f.order();
        return o;
      }
    }
    return 0;
  }
};

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(const std::string& text) : text_(text) {}

  GroupExpr parse() {
    GroupExpr first = parse_atom();
    skip_ws();
    if (!at_product_sep()) {
      expect_end();
      return first;
    }
    GroupExpr prod;
    prod.kind = GroupExpr::Kind::Product;
    prod.factors.push_back(std::move(first));
    while (at_product_sep()) {
      ++pos_;  // consume 'x'
      prod.factors.push_back(parse_atom());
      skip_ws();
    }
    expect_end();
    return prod;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_product_sep() { return pos_ < text_.size() && text_[pos_] == 'x'; }

  void expect_end() {
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError(pos_, "unexpected trailing input '" + text_.substr(pos_) + "'");
  }

  bool literal(const char* s) {
    size_t len = std::char_traits<char>::length(s);
    if (text_.compare(pos_, len, s) == 0) {
      pos_ += len;
      return true;
    }
    return false;
  }

  uint64_t parse_nat() {
    skip_ws();
    size_t start = pos_;
    if (pos_ >= text_.size() || !isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError(pos_, "expected a decimal number");
    uint64_t v = 0;
    while (pos_ < text_.size() && isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 0xFFFFFFFFull) throw ParseError(start, "number too large");
      ++pos_;
    }
    return v;
  }

  void expect_char(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  GroupExpr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "expected a group atom");
    size_t start = pos_;
    GroupExpr e;
    char c = text_[pos_];
    if (c == 'Z') {
      ++pos_;
      if (literal("sd")) {
        expect_char('(');
        e.kind = GroupExpr::Kind::SemidirectCyclic;
        uint64_t m = parse_nat();
        expect_char(',');
        uint64_t n = parse_nat();
        expect_char(',');
        uint64_t k = parse_nat();
        expect_char(')');
        e.params = {m, n, k};
      } else {
        e.kind = GroupExpr::Kind::Cyclic;
        e.params = {parse_nat()};
      }
    } else if (c == 'D') {
      ++pos_;
      e.kind = GroupExpr::Kind::Dihedral;
      e.params = {parse_nat()};
    } else if (c == 'Q') {
      ++pos_;
      e.kind = GroupExpr::Kind::Quaternion;
      e.params = {parse_nat()};
    } else if (c == 'S') {
      ++pos_;
      if (!literal("D")) throw ParseError(pos_, "expected 'SD'");
      e.kind = GroupExpr::Kind::Quasidihedral;
      e.params = {parse_nat()};
    } else if (c == 'A') {
      ++pos_;
      if (!literal("4")) throw ParseError(pos_, "expected 'A4'");
      e.kind = GroupExpr::Kind::A4;
    } else if (c == 'M') {
      ++pos_;
      expect_char('(');
      e.kind = GroupExpr::Kind::Modular;
      uint64_t p = parse_nat();
      expect_char(',');
      uint64_t n = parse_nat();
      expect_char(')');
      e.params = {p, n};
    } else {
      throw ParseError(pos_, std::string("unknown atom starting with '") + c + "'");
    }
    validate_atom(e, start);
    return e;
  }

  static bool power_of_two(uint64_t v) { return v && (v & (v - 1)) == 0; }

  /// Parameter constraints of the group constructors, checked at parse time
  /// so that invalid specs never reach table construction.
  void validate_atom(const GroupExpr& e, size_t at) {
    auto fail = [&](const std::string& msg) { throw ConstraintError(e.render() + ": " + msg); };
    switch (e.kind) {
      case GroupExpr::Kind::Cyclic:
        if (e.params[0] < 1) fail("cyclic order must be >= 1");
        break;
      case GroupExpr::Kind::Dihedral:
        if (e.params[0] < 4 || e.params[0] % 2 != 0) fail("order must be even and >= 4");
        break;
      case GroupExpr::Kind::Quaternion:
        if (e.params[0] < 8 || !power_of_two(e.params[0])) fail("order must be 2^n with n >= 3");
        break;
      case GroupExpr::Kind::Quasidihedral:
        if (e.params[0] < 16 || !power_of_two(e.params[0])) fail("order must be 2^n with n >= 4");
        break;
      case GroupExpr::Kind::Modular: {
        uint64_t p = e.params[0], n = e.params[1];
        if (!is_prime(p)) fail("p must be prime");
        if (p >= 3 && n < 3) fail("n >= 3 required when p >= 3");
        if (p == 2 && n < 4) fail("n >= 4 required when p = 2");
        break;
      }
      case GroupExpr::Kind::SemidirectCyclic: {
        uint64_t m = e.params[0], n = e.params[1], k = e.params[2];
        if (m < 1 || n < 1) fail("m and n must be positive");
        if (m > 1) {
          if (std::gcd(k % m, m) != 1)
            fail("gcd(k,m) = " + std::to_string(std::gcd(k % m, m)) + ", expected 1");
          uint64_t kn = pow_mod(k % m, n, m);
          if (kn != 1 % m)
            fail("k^n ≡ " + std::to_string(kn) + " (mod " + std::to_string(m) + "), expected 1");
        }
        break;
      }
      case GroupExpr::Kind::A4:
      case GroupExpr::Kind::Product:
        break;
    }
    (void)at;
  }

  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace detail

/// Parses and validates a group spec. Throws ParseError (with byte offset)
/// on syntax errors and ConstraintError (naming the violated condition) on
/// structurally valid but inadmissible parameters.
inline GroupExpr parse_group_spec(const std::string& text) {
  return detail::SpecParser(text).parse();
}

/// Builds the multiplication table for a validated expression. The resulting
/// table carries the canonical rendering as its spec string.
inline GroupTable build_group(const GroupExpr& expr, const Limits& limits = default_limits()) {
  switch (expr.kind) {
    case GroupExpr::Kind::Cyclic:
      return build_cyclic(static_cast<uint32_t>(expr.params[0]), limits);
    case GroupExpr::Kind::Dihedral:
      return build_dihedral(static_cast<uint32_t>(expr.params[0]), limits);
    case GroupExpr::Kind::Quaternion:
      return build_generalized_quaternion(static_cast<uint32_t>(expr.params[0]), limits);
    case GroupExpr::Kind::Quasidihedral:
      return build_quasidihedral(static_cast<uint32_t>(expr.params[0]), limits);
    case GroupExpr::Kind::Modular:
      return build_modular(static_cast<uint32_t>(expr.params[0]),
                           static_cast<uint32_t>(expr.params[1]), limits);
    case GroupExpr::Kind::A4:
      return build_alternating4(limits);
    case GroupExpr::Kind::SemidirectCyclic:
      return build_semidirect_cyclic(static_cast<uint32_t>(expr.params[0]),
                                     static_cast<uint32_t>(expr.params[1]),
                                     static_cast<uint32_t>(expr.params[2]), limits);
    case GroupExpr::Kind::Product: {
      GroupTable acc = build_group(expr.factors[0], limits);
      for (size_t i = 1; i < expr.factors.size(); ++i)
        acc = build_direct_product(acc, build_group(expr.factors[i], limits), limits);
      return acc;
    }
  }
  throw std::logic_error("unreachable expr kind");
}

inline GroupTable build_group(const std::string& spec, const Limits& limits = default_limits()) {
  return build_group(parse_group_spec(spec), limits);
}

}  // namespace csd
