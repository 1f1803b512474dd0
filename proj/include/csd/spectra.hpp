#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "csd/config.hpp"
#include "csd/degrees.hpp"
#include "csd/group.hpp"
#include "csd/group_spec.hpp"
#include "csd/lattice.hpp"
#include "csd/rational.hpp"

namespace csd {

/// One conjugacy class of subgroups with its common degree value.
struct SpectrumRow {
  uint32_t class_id = 0;
  uint32_t rep_index = 0;   // index into the lattice entry list
  uint32_t rep_order = 0;
  bool rep_cyclic = false;
  bool rep_normal = false;
  uint32_t class_size = 0;
  Degree value;
};

/// The distinct values of a degree function over L(G), together with the
/// per-conjugacy-class table that produced them.
struct DegreeSpectrum {
  std::vector<Degree> distinct_values;  // ascending
  std::vector<SpectrumRow> rows;        // one per conjugacy class, by class id

  size_t size() const { return distinct_values.size(); }
  bool contains(const Degree& d) const {
    return std::binary_search(distinct_values.begin(), distinct_values.end(), d);
  }
};

struct SpectrumCounts {
  size_t im_f = 0;    // distinct sd(H,G)
  size_t im_f1 = 0;   // distinct csd(H,G)
  size_t im_g1 = 0;   // distinct csd(H)
  uint32_t gamma = 0; // conjugacy classes of non-normal subgroups
};

/// Per-group cache of the lattice, the permutability matrices and the
/// spectra. Everything is computed lazily; the group table must outlive the
/// analyzer.
class Analyzer {
 public:
  explicit Analyzer(const GroupTable& g, const Limits& limits = default_limits())
      : g_(&g), limits_(limits) {}

  const GroupTable& group() const { return *g_; }

  const CyclicDegreeEngine& cyclic() {
    if (!cyclic_) cyclic_.emplace(*g_, limits_.workers);
    return *cyclic_;
  }

  const SubgroupLattice& lattice() {
    if (!lattice_) lattice_ = all_subgroups(*g_, limits_);
    return *lattice_;
  }

  const FullDegreeEngine& full() {
    if (!full_) {
      const SubgroupLattice& lat = lattice();
      full_.emplace(*g_, lat, limits_.workers);
    }
    return *full_;
  }

  Degree csd() { return cyclic().csd_whole(); }
  Degree sd() { return full().sd_whole(); }
  bool iwasawa() { return csd() == 1; }

  uint32_t normal_cyclic() {
    const CyclicPoset& poset = cyclic().poset();
    uint32_t n = 0;
    for (char f : poset.normal) n += f ? 1 : 0;
    return n;
  }

  /// csd(G) < 1/2 + |N(G)∩L1(G)| / (2 |L1(G)|), compared exactly. When true,
  /// the group has more than two relative cyclic subgroup commutativity
  /// degrees.
  bool prop31_criterion() {
    Rational rhs = Rational(1, 2) + Rational(BigInt(normal_cyclic()),
                                             BigInt(2 * cyclic().poset().size()));
    return csd() < rhs;
  }

  uint32_t gamma() {
    const SubgroupLattice& lat = lattice();
    std::vector<char> nonnormal(lat.class_count, 0);
    for (uint32_t i = 0; i < lat.entries.size(); ++i)
      if (!lat.normal[i]) nonnormal[lat.class_of[i]] = 1;
    uint32_t n = 0;
    for (char f : nonnormal) n += f ? 1 : 0;
    return n;
  }

  /// Im f1: one csd(H,G) evaluation per conjugacy class (the function is
  /// constant on classes; a second class member is recomputed as a guard
  /// whenever the class is nontrivial).
  const DegreeSpectrum& f1_spectrum() {
    if (!f1_) f1_ = class_spectrum([this](const Subgroup& h) { return cyclic().csd_relative(h); });
    return *f1_;
  }

  /// Im g1: distinct csd(H) over all subgroups.
  const DegreeSpectrum& g1_spectrum() {
    if (!g1_) g1_ = class_spectrum([this](const Subgroup& h) { return cyclic().csd_within(h); });
    return *g1_;
  }

  /// Im f: distinct sd(H,G) over all subgroups.
  const DegreeSpectrum& f_spectrum() {
    if (!f_) {
      full();  // force the full matrix before evaluating rows
      f_ = class_spectrum([this](const Subgroup& h) { return full_->sd_relative(h); });
    }
    return *f_;
  }

  SpectrumCounts counts() {
    return SpectrumCounts{f_spectrum().size(), f1_spectrum().size(), g1_spectrum().size(), gamma()};
  }

 private:
  template <typename Eval>
  DegreeSpectrum class_spectrum(Eval&& eval) {
    const SubgroupLattice& lat = lattice();
    auto classes = lat.classes();
    DegreeSpectrum spec;
    std::set<Degree> values;
    for (uint32_t c = 0; c < classes.size(); ++c) {
      const auto& members = classes[c];
      uint32_t rep = members.front();
      Degree v = eval(lat.entries[rep]);
      if (members.size() > 1) {
        Degree check = eval(lat.entries[members[1]]);
        if (check != v)
          throw std::logic_error("degree not constant on a conjugacy class of " + g_->spec());
      }
      values.insert(v);
      spec.rows.push_back(SpectrumRow{c, rep, lat.entries[rep].order,
                                      lat.entries[rep].is_cyclic(), lat.normal[rep] != 0,
                                      static_cast<uint32_t>(members.size()), v});
    }
    spec.distinct_values.assign(values.begin(), values.end());
    return spec;
  }

  const GroupTable* g_;
  Limits limits_;
  std::optional<CyclicDegreeEngine> cyclic_;
  std::optional<SubgroupLattice> lattice_;
  std::optional<FullDegreeEngine> full_;
  std::optional<DegreeSpectrum> f1_, g1_, f_;
};

// Free-function forms.

inline DegreeSpectrum relative_csd_spectrum(const GroupTable& g,
                                            const Limits& limits = default_limits()) {
  return Analyzer(g, limits).f1_spectrum();
}

inline DegreeSpectrum csd_spectrum(const GroupTable& g, const Limits& limits = default_limits()) {
  return Analyzer(g, limits).g1_spectrum();
}

inline DegreeSpectrum relative_sd_spectrum(const GroupTable& g,
                                           const Limits& limits = default_limits()) {
  return Analyzer(g, limits).f_spectrum();
}

inline bool is_iwasawa(const GroupTable& g) { return CyclicDegreeEngine(g).csd_whole() == 1; }

inline bool prop31_criterion(const GroupTable& g) { return Analyzer(g).prop31_criterion(); }

inline SpectrumCounts spectrum_counts(const GroupTable& g,
                                      const Limits& limits = default_limits()) {
  return Analyzer(g, limits).counts();
}

/// One census line of a corpus scan.
struct ScanEntry {
  std::string spec;
  uint32_t order = 0;
  size_t im_f1 = 0;
  std::optional<size_t> im_f;   // only for the equal-degrees scan
  bool iwasawa = false;
  uint32_t gamma = 0;
};

struct ScanOutcome {
  std::vector<ScanEntry> census;                          // ordered by (order, spec)
  std::vector<ScanEntry> findings;                        // scan-specific hits
  std::vector<std::pair<std::string, std::string>> errors;  // (spec, message)
};

namespace detail {

template <typename PerGroup>
ScanOutcome run_scan(const std::vector<std::string>& specs, uint32_t max_order,
                     const Limits& limits, PerGroup&& per_group) {
  ScanOutcome out;
  for (const std::string& text : specs) {
    try {
      GroupExpr expr = parse_group_spec(text);
      if (expr.order() > max_order) continue;
      GroupTable g = build_group(expr, limits);
      Analyzer a(g, limits);
      ScanEntry entry;
      entry.spec = expr.render();
      entry.order = g.order();
      entry.im_f1 = a.f1_spectrum().size();
      entry.iwasawa = a.iwasawa();
      entry.gamma = a.gamma();
      per_group(a, entry, out);
      out.census.push_back(std::move(entry));
    } catch (const std::exception& e) {
      out.errors.emplace_back(text, e.what());
    }
  }
  std::sort(out.census.begin(), out.census.end(), [](const ScanEntry& a, const ScanEntry& b) {
    return a.order != b.order ? a.order < b.order : a.spec < b.spec;
  });
  std::sort(out.findings.begin(), out.findings.end(), [](const ScanEntry& a, const ScanEntry& b) {
    return a.order != b.order ? a.order < b.order : a.spec < b.spec;
  });
  return out;
}

}  // namespace detail

/// Census of |Im f1| over the given specs (orders ≤ max_order); any group
/// with exactly two values is a counterexample candidate and is reported,
/// never suppressed. Per-spec failures are collected, not fatal.
inline ScanOutcome scan_two_valued(const std::vector<std::string>& specs, uint32_t max_order,
                                   const Limits& limits = default_limits()) {
  return detail::run_scan(specs, max_order, limits,
                          [](Analyzer&, ScanEntry& entry, ScanOutcome& out) {
                            if (entry.im_f1 == 2) out.findings.push_back(entry);
                          });
}

/// Census of (|Im f|, |Im f1|); the findings list the non-Iwasawa groups
/// where the two cardinalities agree.
inline ScanOutcome scan_equal_degrees(const std::vector<std::string>& specs, uint32_t max_order,
                                      const Limits& limits = default_limits()) {
  return detail::run_scan(specs, max_order, limits,
                          [](Analyzer& a, ScanEntry& entry, ScanOutcome& out) {
                            entry.im_f = a.f_spectrum().size();
                            if (!entry.iwasawa && *entry.im_f == entry.im_f1)
                              out.findings.push_back(entry);
                          });
}

}  // namespace csd
