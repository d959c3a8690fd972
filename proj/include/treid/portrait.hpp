#ifndef TREID_PORTRAIT_HPP
#define TREID_PORTRAIT_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "treid/errors.hpp"
#include "treid/perm.hpp"
#include "treid/tree.hpp"

namespace treid {

// Depth-d truncation of a tree isometry: one child-permutation per vertex of
// level < d, attached to the source vertex.  The image of a path is computed
// symbol by symbol: the label at the source prefix permutes the next symbol.
// All operations fail loudly past the depth instead of silently truncating.
class Portrait {
 public:
  Portrait(BranchingSequence tree, std::size_t depth)
      : tree_(std::move(tree)), depth_(depth) {
    if (!tree_.has_level(depth_))
      throw DepthExceededError("tree has no level " + std::to_string(depth_));
    labels_.resize(depth_);
    for (std::size_t j = 0; j < depth_; ++j)
      labels_[j].assign(static_cast<std::size_t>(tree_.level_size(j)),
                        Perm::identity(tree_.branching_at(j)));
  }

  static Portrait identity(BranchingSequence tree, std::size_t depth) {
    return Portrait(std::move(tree), depth);
  }

  const BranchingSequence& tree() const { return tree_; }
  std::size_t depth() const { return depth_; }

  const Perm& label(const Vertex& v) const {
    check_internal(v);
    return labels_[v.level()][leaf_index(tree_, v)];
  }

  void set_label(const Vertex& v, Perm p) {
    check_internal(v);
    if (p.degree() != tree_.branching_at(v.level()))
      throw Error("label degree does not match branching at level " +
                  std::to_string(v.level()));
    labels_[v.level()][leaf_index(tree_, v)] = std::move(p);
  }

  bool is_identity() const {
    for (const auto& level : labels_)
      for (const auto& p : level)
        if (!p.is_identity()) return false;
    return true;
  }

  Vertex apply(const Vertex& v) const {
    validate_vertex(tree_, v);
    if (v.level() > depth_)
      throw DepthExceededError("vertex " + v.to_string() + " deeper than portrait depth " +
                               std::to_string(depth_));
    std::vector<std::uint32_t> image(v.path.size());
    std::uint64_t src = 0;  // lexicographic index of the source prefix
    for (std::size_t j = 0; j < v.path.size(); ++j) {
      image[j] = labels_[j][src](v.path[j]);
      src = src * tree_.branching_at(j) + v.path[j];
    }
    return Vertex(std::move(image));
  }

  friend bool operator==(const Portrait&, const Portrait&) = default;

  // direct level-indexed access used by the free functions below
  const std::vector<std::vector<Perm>>& levels() const { return labels_; }

 private:
  void check_internal(const Vertex& v) const {
    validate_vertex(tree_, v);
    if (v.level() >= depth_)
      throw DepthExceededError("vertex " + v.to_string() +
                               " has no label in a depth-" + std::to_string(depth_) +
                               " portrait");
  }

  BranchingSequence tree_;
  std::size_t depth_;
  std::vector<std::vector<Perm>> labels_;
};

// Permutation induced on the lexicographically ordered vertices of L_n.
inline Perm level_perm(const Portrait& p, std::size_t n) {
  if (n > p.depth())
    throw DepthExceededError("level " + std::to_string(n) + " exceeds portrait depth " +
                             std::to_string(p.depth()));
  const auto& tree = p.tree();
  std::uint64_t size = tree.level_size(n);
  std::vector<Point> images(static_cast<std::size_t>(size));
  // expand level by level: image index of every prefix
  std::vector<std::uint64_t> cur{0}, next;
  for (std::size_t j = 0; j < n; ++j) {
    std::uint32_t b = tree.branching_at(j);
    next.assign(cur.size() * b, 0);
    for (std::uint64_t src = 0; src < cur.size(); ++src) {
      const Perm& lab = p.levels()[j][static_cast<std::size_t>(src)];
      for (std::uint32_t s = 0; s < b; ++s)
        next[static_cast<std::size_t>(src * b + s)] = cur[static_cast<std::size_t>(src)] * b + lab(s);
    }
    cur.swap(next);
  }
  for (std::size_t idx = 0; idx < cur.size(); ++idx)
    images[idx] = static_cast<Point>(cur[idx]);
  return Perm(std::move(images));
}

// compose(p, q) acts as "apply q, then p"; result depth = min of depths.
inline Portrait compose(const Portrait& p, const Portrait& q) {
  if (p.tree() != q.tree()) throw Error("portraits live on different trees");
  std::size_t depth = std::min(p.depth(), q.depth());
  Portrait out(p.tree(), depth);
  for (std::size_t j = 0; j < depth; ++j) {
    Perm qj = level_perm(q, j);
    std::uint64_t size = p.tree().level_size(j);
    for (std::uint64_t u = 0; u < size; ++u) {
      const Perm& lp = p.levels()[j][static_cast<std::size_t>(qj(static_cast<Point>(u)))];
      const Perm& lq = q.levels()[j][static_cast<std::size_t>(u)];
      out.set_label(vertex_at(p.tree(), j, u), lp * lq);
    }
  }
  return out;
}

inline Portrait invert(const Portrait& p) {
  Portrait out(p.tree(), p.depth());
  for (std::size_t j = 0; j < p.depth(); ++j) {
    Perm pj = level_perm(p, j);
    std::uint64_t size = p.tree().level_size(j);
    for (std::uint64_t u = 0; u < size; ++u)
      out.set_label(vertex_at(p.tree(), j, pj(static_cast<Point>(u))),
                    p.levels()[j][static_cast<std::size_t>(u)].inverse());
  }
  return out;
}

// Copy to a new depth with identity labels below the stored depth.  This is
// how finitary isometries, identity from some level on, reach deeper levels.
inline Portrait extended(const Portrait& p, std::size_t depth) {
  Portrait out(p.tree(), depth);
  for (std::size_t j = 0; j < std::min(depth, p.depth()); ++j)
    for (std::uint64_t u = 0; u < p.tree().level_size(j); ++u)
      out.set_label(vertex_at(p.tree(), j, u), p.levels()[j][static_cast<std::size_t>(u)]);
  return out;
}

struct OrbitStats {
  std::size_t level = 0;
  std::size_t orbit_count = 0;
  std::vector<std::size_t> lengths;  // sorted ascending
  std::vector<Vertex> fixed_vertices;
};

// Orbit decomposition of <level_perm(p, n)> acting on L_n.
inline OrbitStats orbit_stats(const Portrait& p, std::size_t n) {
  Perm pn = level_perm(p, n);
  OrbitStats stats;
  stats.level = n;
  std::vector<bool> seen(pn.degree(), false);
  for (Point start = 0; start < pn.degree(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    Point x = start;
    do {
      seen[x] = true;
      x = pn(x);
      ++len;
    } while (x != start);
    stats.lengths.push_back(len);
    if (len == 1) stats.fixed_vertices.push_back(vertex_at(p.tree(), n, start));
  }
  std::sort(stats.lengths.begin(), stats.lengths.end());
  stats.orbit_count = stats.lengths.size();
  return stats;
}

// Order of the permutation induced on L_n: lcm of the orbit lengths.
inline std::uint64_t level_order(const Portrait& p, std::size_t n) {
  std::uint64_t order = 1;
  for (std::size_t len : cycle_type(level_perm(p, n))) {
    std::uint64_t g = std::gcd(order, static_cast<std::uint64_t>(len));
    std::uint64_t q = order / g;
    if (q > std::numeric_limits<std::uint64_t>::max() / len)
      throw Error("level order overflow");
    order = q * len;
  }
  return order;
}

enum class GrowthVerdict { growing, stabilized };

// Finite-depth evidence for the orbit-count dichotomy; never a proof.
struct GrowthReport {
  std::vector<std::size_t> orbit_counts;  // Orb_1 .. Orb_up_to
  GrowthVerdict verdict = GrowthVerdict::growing;
  std::size_t stable_count = 0;  // M, when stabilized
  std::size_t since_level = 0;   // first level of the observed plateau
  std::size_t window = 0;        // required plateau length
};

// Verdict "stabilized": the count is constant on a trailing window of at
// least `window` levels with no fixed vertices anywhere in the window.
inline GrowthReport classify_orbit_growth(const Portrait& p, std::size_t up_to,
                                          std::size_t window = 3) {
  if (up_to > p.depth())
    throw DepthExceededError("growth classification beyond portrait depth");
  if (up_to == 0) throw PreconditionError("need at least one level");
  if (window == 0) throw PreconditionError("window must be >= 1");
  GrowthReport report;
  report.window = window;
  std::vector<bool> has_fixed;
  for (std::size_t n = 1; n <= up_to; ++n) {
    OrbitStats stats = orbit_stats(p, n);
    report.orbit_counts.push_back(stats.orbit_count);
    has_fixed.push_back(!stats.fixed_vertices.empty());
  }
  std::size_t last = report.orbit_counts.size() - 1;
  std::size_t first = last;  // extent of the trailing plateau, as vector index
  while (first > 0 && report.orbit_counts[first - 1] == report.orbit_counts[last] &&
         !has_fixed[first - 1])
    --first;
  if (has_fixed[last]) first = last + 1;  // fixed vertex at the deepest level: no plateau
  std::size_t plateau = (first <= last) ? last - first + 1 : 0;
  if (plateau >= window && !has_fixed[last]) {
    report.verdict = GrowthVerdict::stabilized;
    report.stable_count = report.orbit_counts[last];
    report.since_level = first + 1;  // levels are 1-based
  }
  return report;
}

// The adding machine: a single cycle through every level of the binary tree.
inline Portrait binary_odometer(std::size_t depth) {
  Portrait p(BranchingSequence::constant(2), depth);
  Perm swap = Perm::from_cycles(2, {{0, 1}});
  // labels: swap at the root and all-ones prefixes (the carry chain)
  Vertex v;
  for (std::size_t j = 0; j < depth; ++j) {
    p.set_label(v, swap);
    v = v.child(1);
  }
  return p;
}

// Transposes the first two children of v; identity everywhere else.
inline Portrait vertex_swap(const BranchingSequence& tree, const Vertex& v,
                            std::size_t depth) {
  Portrait p(tree, depth);
  std::uint32_t b = tree.branching_at(v.level());
  p.set_label(v, Perm::from_cycles(b, {{0, 1}}));
  return p;
}

}  // namespace treid

#endif  // TREID_PORTRAIT_HPP
