#ifndef TREID_TWISTED_HPP
#define TREID_TWISTED_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "treid/errors.hpp"
#include "treid/perm.hpp"
#include "treid/perm_group.hpp"
#include "treid/portrait.hpp"
#include "treid/quotient.hpp"
#include "treid/wreath.hpp"

namespace treid {

// A level quotient together with the automorphism phi(x) = t x t^-1 induced
// by the level action of an isometry t.  Construction validates that t
// normalizes the quotient, so phi is a bijection respecting products.
class TwistedSetting {
 public:
  TwistedSetting(const LevelQuotient& q, Perm t_perm)
      : quotient_(&q), t_perm_(std::move(t_perm)), t_inv_(t_perm_.inverse()) {
    if (t_perm_.degree() != q.group().degree())
      throw Error("t permutation degree does not match the quotient");
    for (const Perm& g : q.group().generators())
      if (!q.group().contains(t_perm_ * g * t_inv_))
        throw InvalidNormalizerError(
            "t does not normalize the level-" + std::to_string(q.level()) +
            " quotient");
  }

  const LevelQuotient& quotient() const { return *quotient_; }
  const Perm& t_perm() const { return t_perm_; }

  Perm phi(const Perm& x) const { return t_perm_ * x * t_inv_; }

 private:
  const LevelQuotient* quotient_;
  Perm t_perm_;
  Perm t_inv_;
};

// Partition of the quotient under g ~ h g phi(h^-1); class ids are numbered
// by least member in BFS element order.
struct ReidemeisterPartition {
  std::vector<std::uint32_t> class_of;
  std::size_t count = 0;
  std::vector<std::size_t> representatives;  // class id -> least element index
};

// Union-find closure with h ranging over the generators; the generator
// moves generate the whole relation.
inline ReidemeisterPartition reidemeister_classes(const TwistedSetting& s) {
  const PermGroup& g = s.quotient().group();
  const auto& elements = g.elements();
  detail::UnionFind uf(elements.size());
  for (const Perm& h : g.generators()) {
    Perm phi_hinv = s.phi(h.inverse());
    for (std::size_t x = 0; x < elements.size(); ++x) {
      Perm moved = h * elements[x] * phi_hinv;
      auto idx = g.index_of(moved);
      if (!idx) throw Error("twisted move left the enumerated group");
      uf.unite(x, *idx);
    }
  }
  ConjugacyClasses cc = detail::finalize_partition(uf, elements.size());
  return ReidemeisterPartition{std::move(cc.class_of), cc.count,
                               std::move(cc.representatives)};
}

// {q : phi(q) = q}; the centralizer of t_perm in the quotient.  Always
// contains the identity.
inline std::vector<std::size_t> fixed_points(const TwistedSetting& s) {
  const auto& elements = s.quotient().group().elements();
  std::vector<std::size_t> out;
  for (std::size_t idx = 0; idx < elements.size(); ++idx)
    if (s.phi(elements[idx]) == elements[idx]) out.push_back(idx);
  return out;
}

inline std::size_t class_of(const TwistedSetting& s, const ReidemeisterPartition& part,
                            const Perm& g) {
  auto idx = s.quotient().index_of(g);
  if (!idx) throw Error("element is not in the enumerated quotient");
  return part.class_of[*idx];
}

struct ShiftCheckReport {
  bool passed = false;          // counts equal and the shift is a class bijection
  bool counts_equal = false;
  bool bijection = false;
  std::size_t count_phi = 0;
  std::size_t count_shifted = 0;
};

// Right shift by g maps Reidemeister classes of phi onto classes of
// tau_{g^-1} o phi, realized at the permutation level by replacing t with
// g^-1 t.  Verifies the class bijection and the count equality.
inline ShiftCheckReport shift_check(const TwistedSetting& s, const Perm& g) {
  const PermGroup& grp = s.quotient().group();
  if (!grp.contains(g)) throw Error("shift element is not in the quotient");
  TwistedSetting shifted(s.quotient(), g.inverse() * s.t_perm());
  ReidemeisterPartition part = reidemeister_classes(s);
  ReidemeisterPartition part_shifted = reidemeister_classes(shifted);
  ShiftCheckReport report;
  report.count_phi = part.count;
  report.count_shifted = part_shifted.count;
  report.counts_equal = part.count == part_shifted.count;
  // class-level map induced by x -> x*g must be well-defined and injective
  std::vector<std::size_t> image(part.count, part_shifted.count);
  bool well_defined = true;
  for (std::size_t x = 0; x < grp.elements().size() && well_defined; ++x) {
    auto idx = grp.index_of(grp.elements()[x] * g);
    if (!idx) throw Error("shift left the enumerated group");
    std::uint32_t from = part.class_of[x], to = part_shifted.class_of[*idx];
    if (image[from] == part_shifted.count) image[from] = to;
    else if (image[from] != to) well_defined = false;
  }
  bool injective = true;
  if (well_defined) {
    std::vector<bool> hit(part_shifted.count, false);
    for (std::size_t c = 0; c < part.count; ++c) {
      if (image[c] >= part_shifted.count || hit[image[c]]) { injective = false; break; }
      hit[image[c]] = true;
    }
  }
  report.bijection = well_defined && injective && report.counts_equal;
  report.passed = report.bijection && report.counts_equal;
  return report;
}

struct ReidSeriesRow {
  std::size_t level = 0;
  std::uint64_t group_order = 0;
  std::size_t reid_count = 0;
  std::size_t fixed_count = 0;
  std::size_t orb_count = 0;
  std::vector<GroupWord> representatives;
};

struct ReidSeries {
  std::vector<ReidSeriesRow> rows;
  bool truncated = false;
  std::string truncation_note;
};

// Reidemeister counts of the automorphisms induced on the level quotients,
// for n = 1..n_max.  Counts never decrease with n (classes of the deeper
// quotient surject onto classes of the shallower one).  A cap overrun
// truncates the series with a marker instead of failing.
inline ReidSeries reid_series(const WreathRecursion& spec, const Portrait& t,
                              std::size_t n_max, std::size_t cap) {
  if (t.depth() < n_max)
    throw DepthExceededError("portrait shallower than requested series depth");
  ReidSeries series;
  for (std::size_t n = 1; n <= n_max; ++n) {
    try {
      LevelQuotient q = level_quotient(spec, n, cap);
      TwistedSetting s(q, level_perm(t, n));
      ReidemeisterPartition part = reidemeister_classes(s);
      ReidSeriesRow row;
      row.level = n;
      row.group_order = q.group().order();
      row.reid_count = part.count;
      row.fixed_count = fixed_points(s).size();
      row.orb_count = orbit_stats(t, n).orbit_count;
      for (std::size_t rep : part.representatives)
        row.representatives.push_back(q.discovery_word(rep));
      series.rows.push_back(std::move(row));
    } catch (const CapExceededError& e) {
      series.truncated = true;
      series.truncation_note = "series truncated at level " + std::to_string(n) +
                               ": " + e.what();
      break;
    }
  }
  return series;
}

}  // namespace treid

#endif  // TREID_TWISTED_HPP
