#ifndef TREID_TRANSITIVE_SUBGROUPS_HPP
#define TREID_TRANSITIVE_SUBGROUPS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "treid/errors.hpp"
#include "treid/perm.hpp"
#include "treid/perm_group.hpp"
#include "treid/witness.hpp"

namespace treid {

struct TransitiveSubgroupClass {
  std::uint64_t order = 0;
  bool transitive = true;
  bool solvable = false;
  bool abelian = false;
  bool contains_odd = false;
  // solvable, transitive, non-abelian, yet all elements even: falls outside
  // the Z_p / Z_p x| Z_{p-1} dichotomy (e.g. the order-10 dihedral group in
  // S_5, which sits inside A_5)
  bool dichotomy_counterexample = false;
  std::vector<Perm> generators;
};

namespace detail {

inline std::vector<Perm> symmetric_group_elements(unsigned degree) {
  std::vector<Point> line(degree);
  for (unsigned k = 0; k < degree; ++k) line[k] = k;
  std::vector<Perm> out;
  do {
    out.push_back(Perm(line));
  } while (std::next_permutation(line.begin(), line.end()));
  return out;
}

}  // namespace detail

// All transitive subgroups of S_p (p prime) up to conjugacy, each with its
// solvability / abelianness / odd-permutation profile.  Every transitive
// subgroup of S_p contains a p-cycle and all p-cycles are conjugate, so the
// enumeration grows subgroups upward from a fixed p-cycle one generator at
// a time, deduplicating generated subgroups by their element sets and
// finally merging S_p-conjugate copies.
inline std::vector<TransitiveSubgroupClass> solvable_transitive_analysis(
    unsigned p, std::size_t cap) {
  if (!is_prime(p)) throw PreconditionError("p must be prime");
  if (p > 11) throw PreconditionError("p out of range (supported: 2,3,5,7,11)");

  std::vector<Perm> sym = detail::symmetric_group_elements(p);
  std::vector<Point> cyc(p);
  for (unsigned k = 0; k < p; ++k) cyc[k] = (k + 1) % p;
  Perm p_cycle{cyc};

  struct Node {
    std::vector<Perm> gens;
    PermGroup group;
  };
  std::vector<Node> found;
  std::set<std::vector<Perm>> seen;  // sorted element lists

  auto key_of = [](const PermGroup& g) {
    std::vector<Perm> key = g.elements();
    std::sort(key.begin(), key.end());
    return key;
  };

  PermGroup seed = PermGroup::closure(p, {p_cycle}, cap);
  seen.insert(key_of(seed));
  found.push_back({{p_cycle}, std::move(seed)});

  for (std::size_t at = 0; at < found.size(); ++at) {
    // candidates up to conjugation by the current subgroup: extending by
    // h g h^-1 (h inside) yields a conjugate subgroup, which the final
    // merge would drop anyway
    std::unordered_set<Perm, PermHash> tried;
    const std::vector<Perm> members = found[at].group.elements();
    std::unordered_set<Perm, PermHash> member_set(members.begin(), members.end());
    for (const Perm& g : sym) {
      if (member_set.count(g) || tried.count(g)) continue;
      std::vector<Perm> orbit{g};
      tried.insert(g);
      for (std::size_t k = 0; k < orbit.size(); ++k)
        for (const Perm& h : found[at].gens) {
          for (const Perm& c : {h * orbit[k] * h.inverse(),
                                h.inverse() * orbit[k] * h})
            if (tried.insert(c).second) orbit.push_back(c);
        }
      std::vector<Perm> gens = found[at].gens;
      gens.push_back(g);
      PermGroup bigger = PermGroup::closure(p, gens, cap);
      if (seen.insert(key_of(bigger)).second)
        found.push_back({std::move(gens), std::move(bigger)});
    }
  }

  // merge S_p-conjugate subgroups; keep the lexicographically least copy
  std::vector<std::size_t> order_idx(found.size());
  for (std::size_t k = 0; k < found.size(); ++k) order_idx[k] = k;
  std::sort(order_idx.begin(), order_idx.end(), [&](std::size_t a, std::size_t b) {
    if (found[a].group.order() != found[b].group.order())
      return found[a].group.order() < found[b].group.order();
    return key_of(found[a].group) < key_of(found[b].group);
  });
  std::vector<std::size_t> kept;
  for (std::size_t idx : order_idx) {
    bool duplicate = false;
    for (std::size_t rep : kept) {
      if (found[rep].group.order() != found[idx].group.order()) continue;
      for (const Perm& s : sym) {
        bool maps_in = true;
        for (const Perm& g : found[idx].gens)
          if (!found[rep].group.contains(s * g * s.inverse())) {
            maps_in = false;
            break;
          }
        if (maps_in) {  // equal orders, so inclusion is equality
          duplicate = true;
          break;
        }
      }
      if (duplicate) break;
    }
    if (!duplicate) kept.push_back(idx);
  }

  std::vector<TransitiveSubgroupClass> table;
  for (std::size_t idx : kept) {
    const Node& node = found[idx];
    TransitiveSubgroupClass row;
    row.order = node.group.order();
    row.transitive = is_transitive(node.group);
    row.solvable = is_solvable(node.group);
    row.abelian = is_abelian(node.group);
    for (const Perm& x : node.group.elements())
      if (sign(x) == -1) {
        row.contains_odd = true;
        break;
      }
    row.dichotomy_counterexample =
        row.solvable && row.transitive && !row.abelian && !row.contains_odd;
    row.generators = node.gens;
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace treid

#endif  // TREID_TRANSITIVE_SUBGROUPS_HPP
