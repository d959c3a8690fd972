#ifndef TREID_TREE_HPP
#define TREID_TREE_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "treid/errors.hpp"

namespace treid {

// Spherically symmetric rooted tree: one branching index per level.
// indices[k] is the number of children of every level-k vertex, so
// |L_n| = indices[0] * ... * indices[n-1].  With repeat_tail the last
// index repeats for all deeper levels; otherwise vertices stop at
// level indices.size().
class BranchingSequence {
 public:
  BranchingSequence(std::vector<std::uint32_t> indices, bool repeat_tail)
      : indices_(std::move(indices)), repeat_tail_(repeat_tail) {
    if (indices_.empty()) throw Error("branching sequence must not be empty");
    for (auto b : indices_)
      if (b < 2) throw Error("every branching index must be >= 2");
    if (repeat_tail_) {
      // normalize: drop duplicates of the repeating last index
      while (indices_.size() >= 2 && indices_[indices_.size() - 2] == indices_.back())
        indices_.pop_back();
    }
  }

  static BranchingSequence constant(std::uint32_t b) {
    return BranchingSequence({b}, true);
  }

  const std::vector<std::uint32_t>& indices() const { return indices_; }
  bool repeat_tail() const { return repeat_tail_; }

  // Number of children of a level-`level` vertex.
  std::uint32_t branching_at(std::size_t level) const {
    if (level < indices_.size()) return indices_[level];
    if (repeat_tail_) return indices_.back();
    throw InvalidVertexError("no vertices below level " +
                             std::to_string(indices_.size()));
  }

  // Vertices exist at this level.
  bool has_level(std::size_t level) const {
    return repeat_tail_ || level <= indices_.size();
  }

  // Internal vertices (with children) exist at this level.
  bool has_children_at(std::size_t level) const {
    return repeat_tail_ || level < indices_.size();
  }

  std::uint64_t level_size(std::size_t n) const {
    if (!has_level(n))
      throw InvalidVertexError("tree has no level " + std::to_string(n));
    std::uint64_t size = 1;
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t b = branching_at(j);
      if (size > std::numeric_limits<std::uint64_t>::max() / b)
        throw Error("level size overflow at level " + std::to_string(n));
      size *= b;
    }
    return size;
  }

  friend bool operator==(const BranchingSequence&, const BranchingSequence&) = default;

 private:
  std::vector<std::uint32_t> indices_;
  bool repeat_tail_;
};

// A vertex is its path word from the root; the root has the empty path.
struct Vertex {
  std::vector<std::uint32_t> path;

  Vertex() = default;
  explicit Vertex(std::vector<std::uint32_t> p) : path(std::move(p)) {}

  std::size_t level() const { return path.size(); }
  bool is_root() const { return path.empty(); }

  Vertex child(std::uint32_t symbol) const {
    Vertex v = *this;
    v.path.push_back(symbol);
    return v;
  }

  Vertex parent() const {
    if (is_root()) throw InvalidVertexError("root has no parent");
    Vertex v = *this;
    v.path.pop_back();
    return v;
  }

  // Dot-joined path; the root is the empty string.
  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (k) s += ".";
      s += std::to_string(path[k]);
    }
    return s;
  }

  static Vertex parse(const std::string& text) {
    Vertex v;
    if (text.empty()) return v;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t dot = text.find('.', pos);
      std::string token = text.substr(pos, dot == std::string::npos ? dot : dot - pos);
      if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad vertex path: '" + text + "'");
      v.path.push_back(static_cast<std::uint32_t>(std::stoul(token)));
      if (dot == std::string::npos) break;
      pos = dot + 1;
    }
    return v;
  }

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend std::strong_ordering operator<=>(const Vertex&, const Vertex&) = default;
};

inline void validate_vertex(const BranchingSequence& tree, const Vertex& v) {
  if (!tree.has_level(v.level()))
    throw InvalidVertexError("vertex " + v.to_string() + " below the deepest level");
  for (std::size_t j = 0; j < v.path.size(); ++j)
    if (v.path[j] >= tree.branching_at(j))
      throw InvalidVertexError("vertex " + v.to_string() + " has symbol " +
                               std::to_string(v.path[j]) + " out of range at level " +
                               std::to_string(j));
}

// D(v): the immediate descendants in increasing symbol order.
inline std::vector<Vertex> children(const BranchingSequence& tree, const Vertex& v) {
  validate_vertex(tree, v);
  if (!tree.has_children_at(v.level()))
    throw InvalidVertexError("vertex " + v.to_string() + " is at the deepest level");
  std::vector<Vertex> out;
  std::uint32_t b = tree.branching_at(v.level());
  out.reserve(b);
  for (std::uint32_t s = 0; s < b; ++s) out.push_back(v.child(s));
  return out;
}

// Lexicographic rank of v among the vertices of its level.
inline std::uint64_t leaf_index(const BranchingSequence& tree, const Vertex& v) {
  validate_vertex(tree, v);
  std::uint64_t idx = 0;
  for (std::size_t j = 0; j < v.path.size(); ++j)
    idx = idx * tree.branching_at(j) + v.path[j];
  return idx;
}

inline Vertex vertex_at(const BranchingSequence& tree, std::size_t level,
                        std::uint64_t index) {
  if (index >= tree.level_size(level))
    throw InvalidVertexError("index " + std::to_string(index) +
                             " out of range at level " + std::to_string(level));
  std::vector<std::uint32_t> path(level);
  for (std::size_t j = level; j-- > 0;) {
    std::uint32_t b = tree.branching_at(j);
    path[j] = static_cast<std::uint32_t>(index % b);
    index /= b;
  }
  return Vertex(std::move(path));
}

}  // namespace treid

#endif  // TREID_TREE_HPP
