#ifndef TREID_PERM_HPP
#define TREID_PERM_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "treid/errors.hpp"

namespace treid {

using Point = std::uint32_t;

// Permutation of {0, ..., degree-1} in one-line notation.
// Composition is right-to-left: (p * q)(x) = p(q(x)).
class Perm {
 public:
  Perm() = default;

  explicit Perm(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  explicit Perm(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point x : images_) {
      if (x >= images_.size() || seen[x])
        throw Error("one-line array is not a permutation");
      seen[x] = true;
    }
  }

  static Perm identity(std::size_t degree) { return Perm(degree); }

  // Product of cycles over {0,...,degree-1}; handy in tests.
  static Perm from_cycles(std::size_t degree,
                          std::initializer_list<std::initializer_list<Point>> cycles) {
    Perm p(degree);
    for (const auto& cyc : cycles) {
      const auto* data = cyc.begin();
      for (std::size_t k = 0; k + 1 < cyc.size(); ++k)
        p.images_.at(data[k]) = data[k + 1];
      if (cyc.size() > 1) p.images_.at(data[cyc.size() - 1]) = data[0];
    }
    return Perm(std::move(p.images_));  // revalidate
  }

  std::size_t degree() const { return images_.size(); }

  Point operator()(Point x) const { return images_[x]; }

  const std::vector<Point>& images() const { return images_; }

  Perm operator*(const Perm& rhs) const {
    if (degree() != rhs.degree()) throw Error("permutation degree mismatch");
    std::vector<Point> out(degree());
    for (std::size_t x = 0; x < out.size(); ++x) out[x] = images_[rhs.images_[x]];
    return Perm(PrivateTag{}, std::move(out));
  }

  Perm inverse() const {
    std::vector<Point> out(degree());
    for (std::size_t x = 0; x < out.size(); ++x) out[images_[x]] = static_cast<Point>(x);
    return Perm(PrivateTag{}, std::move(out));
  }

  bool is_identity() const {
    for (std::size_t x = 0; x < images_.size(); ++x)
      if (images_[x] != x) return false;
    return true;
  }

  friend bool operator==(const Perm&, const Perm&) = default;
  friend std::strong_ordering operator<=>(const Perm&, const Perm&) = default;

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t x = 0; x < images_.size(); ++x) {
      if (x) s += ",";
      s += std::to_string(images_[x]);
    }
    return s + "]";
  }

 private:
  struct PrivateTag {};
  Perm(PrivateTag, std::vector<Point> images) : images_(std::move(images)) {}

  std::vector<Point> images_;
};

// Cycle lengths sorted ascending, fixed points included as 1s.
inline std::vector<std::size_t> cycle_type(const Perm& p) {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(p.degree(), false);
  for (Point start = 0; start < p.degree(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    Point x = start;
    do {
      seen[x] = true;
      x = p(x);
      ++len;
    } while (x != start);
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

inline int sign(const Perm& p) {
  std::size_t cycles = cycle_type(p).size();
  return ((p.degree() - cycles) % 2 == 0) ? +1 : -1;
}

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept {
    // FNV-1a over the one-line images
    std::uint64_t h = 1469598103934665603ull;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace treid

#endif  // TREID_PERM_HPP
