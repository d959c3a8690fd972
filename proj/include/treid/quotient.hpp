#ifndef TREID_QUOTIENT_HPP
#define TREID_QUOTIENT_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treid/errors.hpp"
#include "treid/perm.hpp"
#include "treid/perm_group.hpp"
#include "treid/portrait.hpp"
#include "treid/tree.hpp"
#include "treid/wreath.hpp"

namespace treid {

// Action induced on L_j by a permutation of L_n (j <= n).  Tree-automorphism
// images map leaf blocks to leaf blocks; a violation means the permutation
// did not come from a tree automorphism.
inline Perm project_to_level(const BranchingSequence& tree, const Perm& leaf_perm,
                             std::size_t n, std::size_t j) {
  if (j > n) throw DepthExceededError("cannot project level action upward");
  std::uint64_t upper = tree.level_size(j);
  std::uint64_t block = tree.level_size(n) / upper;
  std::vector<Point> images(static_cast<std::size_t>(upper));
  for (std::uint64_t v = 0; v < upper; ++v) {
    std::uint64_t target = leaf_perm(static_cast<Point>(v * block)) / block;
    for (std::uint64_t s = 1; s < block; ++s)
      if (leaf_perm(static_cast<Point>(v * block + s)) / block != target)
        throw Error("permutation does not respect the leaf-block structure");
    images[static_cast<std::size_t>(v)] = static_cast<Point>(target);
  }
  return Perm(std::move(images));
}

// The finite quotient p_n : G -> G/St_n, enumerated with BFS discovery
// words over the declared generators.
class LevelQuotient {
 public:
  LevelQuotient(WreathRecursion spec, std::size_t level, std::size_t cap)
      : spec_(std::move(spec)), level_(level), tree_(spec_.tree()),
        group_(PermGroup::generated(0, {})) {
    if (level_ < 1) throw PreconditionError("quotient level must be >= 1");
    std::uint64_t degree = tree_.level_size(level_);
    if (degree > cap)
      throw CapExceededError("level size exceeds cap", 0);
    std::vector<Perm> images;
    for (const std::string& g : spec_.generators()) {
      gen_names_.push_back(g);
      images.push_back(level_perm(spec_.generator_portrait(g, level_), level_));
    }
    group_ = PermGroup::closure(static_cast<std::size_t>(degree), std::move(images), cap);
  }

  const WreathRecursion& group_spec() const { return spec_; }
  std::size_t level() const { return level_; }
  const BranchingSequence& tree() const { return tree_; }
  const PermGroup& group() const { return group_; }
  const std::vector<std::string>& generator_names() const { return gen_names_; }

  const Perm& word_image(const std::string& gen) const {
    for (std::size_t k = 0; k < gen_names_.size(); ++k)
      if (gen_names_[k] == gen) return group_.generators()[k];
    throw WordError("undeclared generator '" + gen + "'");
  }

  Perm word_image(const GroupWord& w) const {
    Perm acc = Perm::identity(group_.degree());
    for (const Letter& l : w.letters()) {
      if (l.name == WreathRecursion::identity_state()) continue;
      const Perm& g = word_image(l.name);
      acc = acc * (l.exponent == 1 ? g : g.inverse());
    }
    return acc;
  }

  // Shortest witnessing word (BFS, +/-1 alphabet) for an enumerated element.
  GroupWord discovery_word(std::size_t element_index) const {
    GroupWord w;
    for (const BfsMove& m : group_.bfs_word(element_index))
      w.append(gen_names_[m.gen_index], m.exponent);
    return w;
  }

  std::optional<std::size_t> index_of(const Perm& p) const { return group_.index_of(p); }

  // Induced action of an enumerated element on L_j.
  Perm project(std::size_t element_index, std::size_t j) const {
    return project_to_level(tree_, group_.elements()[element_index], level_, j);
  }

 private:
  WreathRecursion spec_;
  std::size_t level_;
  BranchingSequence tree_;
  PermGroup group_;
  std::vector<std::string> gen_names_;
};

inline LevelQuotient level_quotient(const WreathRecursion& spec, std::size_t n,
                                    std::size_t cap) {
  return LevelQuotient(spec, n, cap);
}

// Indices (in BFS order) of the elements acting trivially on L_j: the exact
// image p_n(St_j ∩ G), since the level-j action factors through level n.
inline std::vector<std::size_t> stabilizer_elements(const LevelQuotient& q,
                                                    std::size_t j) {
  if (j > q.level()) throw DepthExceededError("stabilizer level exceeds quotient level");
  std::vector<std::size_t> out;
  for (std::size_t idx = 0; idx < q.group().elements().size(); ++idx)
    if (q.project(idx, j).is_identity()) out.push_back(idx);
  return out;
}

// Level-n shadow of G_{v}: elements fixing v and every vertex of the next
// level outside D(v).  Sandwiched between the Rist_v and St_j shadows.
inline PermGroup g_brace(const LevelQuotient& q, const Vertex& v) {
  validate_vertex(q.tree(), v);
  std::size_t j = v.level();
  if (j + 1 > q.level())
    throw DepthExceededError("g_brace needs quotient level >= vertex level + 1");
  std::uint64_t vidx = leaf_index(q.tree(), v);
  std::uint32_t b = q.tree().branching_at(j);
  std::uint64_t child_lo = vidx * b, child_hi = child_lo + b;
  std::vector<Perm> members;
  for (std::size_t idx = 0; idx < q.group().elements().size(); ++idx) {
    Perm pj = q.project(idx, j);
    if (pj(static_cast<Point>(vidx)) != vidx) continue;
    Perm pj1 = q.project(idx, j + 1);
    bool fixes_rest = true;
    for (std::uint64_t u = 0; fixes_rest && u < pj1.degree(); ++u)
      if ((u < child_lo || u >= child_hi) && pj1(static_cast<Point>(u)) != u)
        fixes_rest = false;
    if (fixes_rest) members.push_back(q.group().elements()[idx]);
  }
  return PermGroup::from_elements(q.group().degree(), std::move(members));
}

struct GammaReport {
  PermGroup group;                          // product of the g_brace factors
  bool abelian = false;
  std::vector<std::uint64_t> factor_orders; // one per level-(i-1) vertex
};

// Γ at level i = Q.level: internal product of g_brace(Q, v) over v in
// L_{i-1}.  The factors must commute pairwise; a violation signals a
// non-level-transitive or inconsistent input.
inline GammaReport gamma_i(const LevelQuotient& q, std::size_t cap) {
  std::size_t i = q.level();
  std::vector<PermGroup> factors;
  for (std::uint64_t u = 0; u < q.tree().level_size(i - 1); ++u)
    factors.push_back(g_brace(q, vertex_at(q.tree(), i - 1, u)));
  for (std::size_t a = 0; a < factors.size(); ++a)
    for (std::size_t b = a + 1; b < factors.size(); ++b)
      for (const Perm& x : factors[a].elements())
        for (const Perm& y : factors[b].elements())
          if (x * y != y * x)
            throw CommutationViolationError(
                "g_brace factors at vertices " + std::to_string(a) + " and " +
                std::to_string(b) + " do not commute");
  GammaReport report{PermGroup::generated(q.group().degree(), {}), false, {}};
  std::vector<Perm> gens;
  for (const PermGroup& f : factors) {
    report.factor_orders.push_back(f.order());
    for (const Perm& x : f.elements())
      if (!x.is_identity()) gens.push_back(x);
  }
  report.group = PermGroup::closure(q.group().degree(), std::move(gens), cap);
  report.abelian = is_abelian(report.group);
  return report;
}

enum class WstStatus { found, not_found };

struct WstEvidence {
  Vertex v0;
  std::size_t quotient_level = 0;       // v0.level() + 1
  std::vector<Point> child_orbit;       // leaf indices of D(v0), one orbit
};

struct WstOutcome {
  WstStatus status = WstStatus::not_found;
  std::optional<WstEvidence> evidence;
  std::size_t searched_depth = 0;
};

// Breadth-first search below v for the first v0 whose G_{v0} shadow acts
// transitively on D(v0).  "not found" is bounded-depth knowledge, never a
// refutation of WST.
inline WstOutcome wst_check(const WreathRecursion& spec, const Vertex& v,
                            std::size_t max_search_depth, std::size_t cap) {
  WstOutcome outcome;
  outcome.searched_depth = max_search_depth;
  BranchingSequence tree = spec.tree();
  validate_vertex(tree, v);
  std::map<std::size_t, LevelQuotient> quotients;
  std::vector<Vertex> queue{v};
  for (std::size_t at = 0; at < queue.size(); ++at) {
    const Vertex v0 = queue[at];
    if (v0.level() + 1 > max_search_depth) continue;
    auto it = quotients.find(v0.level() + 1);
    if (it == quotients.end())
      it = quotients.emplace(v0.level() + 1,
                             level_quotient(spec, v0.level() + 1, cap)).first;
    PermGroup shadow = g_brace(it->second, v0);
    std::uint64_t vidx = leaf_index(tree, v0);
    std::uint32_t b = tree.branching_at(v0.level());
    std::vector<Point> domain;
    for (std::uint32_t s = 0; s < b; ++s)
      domain.push_back(static_cast<Point>(vidx * b + s));
    if (is_transitive(shadow, domain)) {
      outcome.status = WstStatus::found;
      outcome.evidence = WstEvidence{v0, v0.level() + 1,
                                     orbit_of(shadow, domain[0])};
      return outcome;
    }
    for (std::uint32_t s = 0; s < b; ++s) queue.push_back(v0.child(s));
  }
  return outcome;
}

// Transitivity of the level-n action; no enumeration needed.
inline bool is_level_transitive(const WreathRecursion& spec, std::size_t n,
                                std::size_t cap) {
  BranchingSequence tree = spec.tree();
  std::uint64_t degree = tree.level_size(n);
  if (degree == 1) return true;
  if (degree > cap) throw CapExceededError("level size exceeds cap", 0);
  std::vector<Perm> images;
  for (const std::string& g : spec.generators())
    images.push_back(level_perm(spec.generator_portrait(g, n), n));
  return is_transitive(PermGroup::generated(static_cast<std::size_t>(degree),
                                            std::move(images)));
}

// Necessary finite-depth condition for t to induce an automorphism of G:
// conjugation by the level action of t maps the quotient onto itself.
inline bool validate_normalizer(const LevelQuotient& q, const Portrait& t) {
  if (t.depth() < q.level())
    throw DepthExceededError("portrait shallower than quotient level");
  Perm tn = level_perm(t, q.level());
  Perm tn_inv = tn.inverse();
  for (const Perm& g : q.group().generators())
    if (!q.group().contains(tn * g * tn_inv)) return false;
  return true;
}

// Level-i shadows of rigid-stabilizer elements at v: trivial outside the
// leaf block of T_v, nontrivial inside.  Every true Rist element's shadow
// appears here; membership alone does not certify a true Rist element.
inline std::vector<std::size_t> rist_probe(const LevelQuotient& q, const Vertex& v) {
  validate_vertex(q.tree(), v);
  if (v.level() > q.level())
    throw PreconditionError("rist_probe needs v.level() <= quotient level");
  std::uint64_t block = q.tree().level_size(q.level()) / q.tree().level_size(v.level());
  std::uint64_t lo = leaf_index(q.tree(), v) * block, hi = lo + block;
  std::vector<std::size_t> out;
  const auto& elements = q.group().elements();
  for (std::size_t idx = 0; idx < elements.size(); ++idx) {
    const Perm& p = elements[idx];
    bool outside_trivial = true, inside_nontrivial = false;
    for (std::uint64_t x = 0; x < p.degree(); ++x) {
      bool inside = (x >= lo && x < hi);
      if (p(static_cast<Point>(x)) != x) {
        if (inside) inside_nontrivial = true;
        else { outside_trivial = false; break; }
      }
    }
    if (outside_trivial && inside_nontrivial) out.push_back(idx);
  }
  return out;
}

}  // namespace treid

#endif  // TREID_QUOTIENT_HPP
