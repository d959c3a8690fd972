#ifndef TREID_PERM_GROUP_HPP
#define TREID_PERM_GROUP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "treid/errors.hpp"
#include "treid/perm.hpp"

namespace treid {

// One BFS step: right-multiply by generators[gen_index]^exponent.
struct BfsMove {
  std::uint32_t gen_index;
  std::int8_t exponent;  // +1 or -1
};

// Finite permutation group.  The primary engine is full enumeration by
// breadth-first closure with a hard cap; the BFS discovery order is the
// canonical element order and every search downstream ties breaks by it.
class PermGroup {
 public:
  // Enumerated closure.  Moves are taken in generator order, positive
  // exponent before negative, and the negative move is skipped for
  // involutions.  Throws CapExceededError past `cap` elements.
  static PermGroup closure(std::size_t degree, std::vector<Perm> generators,
                           std::size_t cap) {
    if (cap < 1) throw PreconditionError("cap must be >= 1");
    PermGroup g(degree, std::move(generators));
    g.enumerate(cap);
    return g;
  }

  // Generators only; no element list.  Queries that need enumeration throw.
  static PermGroup generated(std::size_t degree, std::vector<Perm> generators) {
    return PermGroup(degree, std::move(generators));
  }

  // Wrap an externally filtered subgroup (e.g. a stabilizer) keeping the
  // caller's element order.  The element list is trusted to be a subgroup;
  // generators = elements.
  static PermGroup from_elements(std::size_t degree, std::vector<Perm> elements) {
    PermGroup g(degree, elements);
    g.elements_ = std::move(elements);
    g.enumerated_ = true;
    for (std::size_t idx = 0; idx < g.elements_.size(); ++idx)
      g.index_.emplace(g.elements_[idx], idx);
    return g;
  }

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return generators_; }
  bool enumerated() const { return enumerated_; }

  std::uint64_t order() const {
    require_enumerated("order");
    return elements_.size();
  }

  const std::vector<Perm>& elements() const {
    require_enumerated("element list");
    return elements_;
  }

  bool contains(const Perm& p) const {
    require_enumerated("membership test");
    return index_.count(p) > 0;
  }

  std::optional<std::size_t> index_of(const Perm& p) const {
    require_enumerated("element index");
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // BFS word for an element: moves multiplied left to right, shortest in
  // the +/-1 generator alphabet.  Only for closure-enumerated groups.
  std::vector<BfsMove> bfs_word(std::size_t element_index) const {
    require_enumerated("BFS word");
    if (parent_.empty() && elements_.size() > 1)
      throw RequiresEnumerationError("group was not built by BFS closure");
    std::vector<BfsMove> word;
    std::size_t cur = element_index;
    while (cur != 0) {
      word.push_back(moves_[parent_move_[cur]]);
      cur = parent_[cur];
    }
    std::reverse(word.begin(), word.end());
    return word;
  }

 private:
  PermGroup(std::size_t degree, std::vector<Perm> generators)
      : degree_(degree), generators_(std::move(generators)) {
    for (const Perm& g : generators_)
      if (g.degree() != degree_)
        throw Error("generator degree mismatch");
  }

  void enumerate(std::size_t cap) {
    moves_.clear();
    std::vector<Perm> move_perms;
    for (std::uint32_t gi = 0; gi < generators_.size(); ++gi) {
      moves_.push_back({gi, +1});
      move_perms.push_back(generators_[gi]);
      Perm inv = generators_[gi].inverse();
      if (inv != generators_[gi]) {
        moves_.push_back({gi, -1});
        move_perms.push_back(std::move(inv));
      }
    }
    elements_.clear();
    index_.clear();
    elements_.push_back(Perm::identity(degree_));
    index_.emplace(elements_[0], 0);
    parent_.assign(1, 0);
    parent_move_.assign(1, 0);
    for (std::size_t at = 0; at < elements_.size(); ++at) {
      for (std::size_t mk = 0; mk < move_perms.size(); ++mk) {
        Perm next = elements_[at] * move_perms[mk];
        if (index_.count(next)) continue;
        if (elements_.size() >= cap)
          throw CapExceededError("closure exceeded cap", elements_.size());
        index_.emplace(next, elements_.size());
        elements_.push_back(std::move(next));
        parent_.push_back(at);
        parent_move_.push_back(mk);
      }
    }
    enumerated_ = true;
  }

  void require_enumerated(const std::string& what) const {
    if (!enumerated_)
      throw RequiresEnumerationError(what + " requires an enumerated group");
  }

  std::size_t degree_;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
  bool enumerated_ = false;
  std::unordered_map<Perm, std::size_t, PermHash> index_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> parent_move_;
  std::vector<BfsMove> moves_;
};

// Orbit of `start` under the generators (enumeration not needed).
inline std::vector<Point> orbit_of(const PermGroup& g, Point start) {
  std::vector<Point> orbit{start};
  std::vector<bool> seen(g.degree(), false);
  seen[start] = true;
  for (std::size_t at = 0; at < orbit.size(); ++at) {
    for (const Perm& gen : g.generators()) {
      Point y = gen(orbit[at]);
      if (!seen[y]) {
        seen[y] = true;
        orbit.push_back(y);
      }
    }
  }
  return orbit;
}

// Single orbit covering `domain` (the domain is assumed invariant).
inline bool is_transitive(const PermGroup& g, std::span<const Point> domain) {
  if (domain.empty()) return true;
  std::vector<Point> orbit = orbit_of(g, domain[0]);
  std::vector<bool> in_orbit(g.degree(), false);
  for (Point x : orbit) in_orbit[x] = true;
  for (Point x : domain)
    if (!in_orbit[x]) return false;
  return true;
}

inline bool is_transitive(const PermGroup& g) {
  if (g.degree() == 0) return true;
  return orbit_of(g, 0).size() == g.degree();
}

inline bool is_abelian(const PermGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      if (gens[a] * gens[b] != gens[b] * gens[a]) return false;
  return true;
}

namespace detail {

// Elements of the subgroup generated by `gens` (plain BFS, no word data).
inline std::vector<Perm> subgroup_elements(std::size_t degree,
                                           const std::vector<Perm>& gens,
                                           std::size_t cap) {
  std::vector<Perm> elements{Perm::identity(degree)};
  std::unordered_set<Perm, PermHash> seen{elements[0]};
  for (std::size_t at = 0; at < elements.size(); ++at) {
    for (const Perm& g : gens) {
      Perm next = elements[at] * g;
      if (seen.insert(next).second) {
        if (elements.size() >= cap)
          throw CapExceededError("subgroup closure exceeded cap", elements.size());
        elements.push_back(std::move(next));
      }
    }
  }
  return elements;
}

// Normal closure of `seeds` in the group generated by `conjugators`:
// close the seed set under conjugation, then take the subgroup closure.
inline std::vector<Perm> normal_closure_elements(std::size_t degree,
                                                 const std::vector<Perm>& seeds,
                                                 const std::vector<Perm>& conjugators,
                                                 std::size_t cap) {
  std::vector<Perm> conj_moves;
  for (const Perm& c : conjugators) {
    conj_moves.push_back(c);
    Perm inv = c.inverse();
    if (inv != c) conj_moves.push_back(std::move(inv));
  }
  std::vector<Perm> gens;
  std::unordered_set<Perm, PermHash> seen;
  for (const Perm& s : seeds)
    if (seen.insert(s).second) gens.push_back(s);
  for (std::size_t at = 0; at < gens.size(); ++at) {
    for (const Perm& c : conj_moves) {
      Perm conj = c * gens[at] * c.inverse();
      if (seen.insert(conj).second) {
        if (gens.size() >= cap)
          throw CapExceededError("conjugate closure exceeded cap", gens.size());
        gens.push_back(std::move(conj));
      }
    }
  }
  return subgroup_elements(degree, gens, cap);
}

}  // namespace detail

// Derived series by commutator + normal-closure computation on the
// enumerated group; solvable iff the series reaches the trivial group.
// Returns the subgroup orders along the series, starting with |G|.
inline std::vector<std::uint64_t> derived_series_orders(const PermGroup& g,
                                                        std::size_t cap = 4000000) {
  if (!g.enumerated())
    throw RequiresEnumerationError("derived series requires an enumerated group");
  std::vector<std::uint64_t> orders{g.order()};
  std::vector<Perm> gens = g.generators();
  if (gens.empty()) return orders;
  std::uint64_t prev = g.order();
  while (prev > 1) {
    std::vector<Perm> commutators;
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = a + 1; b < gens.size(); ++b)
        commutators.push_back(gens[a] * gens[b] * gens[a].inverse() * gens[b].inverse());
    std::vector<Perm> derived =
        detail::normal_closure_elements(g.degree(), commutators, gens, cap);
    std::uint64_t size = derived.size();
    orders.push_back(size);
    if (size == prev) break;  // perfect subgroup: series stalls
    prev = size;
    gens = std::move(derived);
  }
  return orders;
}

inline bool is_solvable(const PermGroup& g, std::size_t cap = 4000000) {
  return derived_series_orders(g, cap).back() == 1;
}

struct ConjugacyClasses {
  std::vector<std::uint32_t> class_of;       // element index -> class id
  std::size_t count = 0;                     // number of classes
  std::vector<std::size_t> representatives;  // class id -> least element index
};

namespace detail {

// Union-find with path halving; deterministic given the union sequence.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t k = 0; k < n; ++k) parent_[k] = k;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a;  // keep the least index as root
    else parent_[a] = b;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Renumber classes by least member; ids increase with the representative.
inline ConjugacyClasses finalize_partition(UnionFind& uf, std::size_t n) {
  ConjugacyClasses out;
  out.class_of.assign(n, 0);
  std::unordered_map<std::size_t, std::uint32_t> root_to_id;
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t root = uf.find(x);
    auto it = root_to_id.find(root);
    if (it == root_to_id.end()) {
      it = root_to_id.emplace(root, static_cast<std::uint32_t>(out.representatives.size())).first;
      out.representatives.push_back(root);  // root is the least member by union rule
    }
    out.class_of[x] = it->second;
  }
  out.count = out.representatives.size();
  return out;
}

}  // namespace detail

// Conjugacy classes by union-find over generator conjugation moves.
inline ConjugacyClasses conjugacy_classes(const PermGroup& g) {
  if (!g.enumerated())
    throw RequiresEnumerationError("conjugacy classes require an enumerated group");
  const auto& elements = g.elements();
  detail::UnionFind uf(elements.size());
  for (const Perm& h : g.generators()) {
    Perm hinv = h.inverse();
    for (std::size_t x = 0; x < elements.size(); ++x) {
      Perm conj = h * elements[x] * hinv;
      auto idx = g.index_of(conj);
      if (!idx) throw Error("group not closed under conjugation by generator");
      uf.unite(x, *idx);
    }
  }
  return detail::finalize_partition(uf, elements.size());
}

enum class ConjugacyStatus {
  conjugate,                 // witness h with y = h^-1 x h
  not_conjugate_cycle_type,  // valid against the whole symmetric group
  not_conjugate_in_group     // exhaustive search over the enumerated group
};

struct ConjugacyResult {
  ConjugacyStatus status;
  std::optional<Perm> witness;
};

inline ConjugacyResult are_conjugate(const PermGroup& g, const Perm& x, const Perm& y) {
  if (x == y) return {ConjugacyStatus::conjugate, Perm::identity(x.degree())};
  if (cycle_type(x) != cycle_type(y))
    return {ConjugacyStatus::not_conjugate_cycle_type, std::nullopt};
  if (!g.enumerated())
    throw RequiresEnumerationError("conjugacy search requires an enumerated group");
  for (const Perm& h : g.elements())
    if (h.inverse() * x * h == y) return {ConjugacyStatus::conjugate, h};
  return {ConjugacyStatus::not_conjugate_in_group, std::nullopt};
}

}  // namespace treid

#endif  // TREID_PERM_GROUP_HPP
