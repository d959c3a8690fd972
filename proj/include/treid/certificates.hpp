#ifndef TREID_CERTIFICATES_HPP
#define TREID_CERTIFICATES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treid/errors.hpp"
#include "treid/perm.hpp"
#include "treid/portrait.hpp"
#include "treid/quotient.hpp"
#include "treid/tree.hpp"
#include "treid/wreath.hpp"

namespace treid {

enum class ObstructionKind { cycle_type, parity, exhaustive };

inline const char* to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::cycle_type: return "cycle-type";
    case ObstructionKind::parity: return "parity";
    case ObstructionKind::exhaustive: return "exhaustive";
  }
  return "?";
}

// Obstruction to (g t) being conjugate to t at the certified level.
// cycle_type and parity are conjugation invariants: they rule out every h
// in the full symmetric group of the level.  exhaustive only rules out the
// enumerated quotient.
struct Obstruction {
  ObstructionKind kind = ObstructionKind::cycle_type;
  std::vector<std::size_t> gt_cycle_type;  // cycle_type kind
  std::vector<std::size_t> t_cycle_type;
  int gt_sign = 0;                         // parity kind
  int t_sign = 0;
  std::uint64_t searched_order = 0;        // exhaustive kind
  bool search_completed = false;
};

// Witness-specific data re-checked by the verifier when present.
struct CertificateContext {
  std::optional<Vertex> v0;                // vertex whose subtree houses g
  std::optional<Vertex> v1;                // child with g(t^m(v1)) = v1
  std::optional<Vertex> v;                 // leaf with (g t)^n(v) = g(v) != v
  std::optional<std::uint64_t> m;          // t-orbit length of v0
  std::optional<std::uint64_t> n;          // observed order of t
  std::optional<std::uint64_t> b;          // branching index at v0
  std::vector<std::uint64_t> orbit_lengths;  // smallest (g t)- and t-lengths
};

// Verifiable record asserting that the Reidemeister class of g (w.r.t. the
// automorphism induced by t) contains no element acting trivially on L_i:
// g is in the St_j shadow and (g t) is not conjugate to t at level i by the
// recorded obstruction.  Embeds the group and t so a certificate file can
// be re-checked standalone.
struct SeparationCertificate {
  SeparationCertificate(WreathRecursion group_spec, Portrait t_portrait,
                        GroupWord word)
      : group(std::move(group_spec)), t(std::move(t_portrait)),
        g_word(std::move(word)) {}

  WreathRecursion group;
  Portrait t;
  GroupWord g_word;
  std::size_t j = 0;
  std::size_t i = 0;
  Obstruction obstruction;
  CertificateContext context;
  std::vector<std::string> caveats;
};

struct CheckResult {
  bool ok = false;
  std::string failure;  // names the violated invariant
};

namespace detail {

inline std::uint64_t orbit_length_of(const Perm& p, std::uint64_t start) {
  std::uint64_t len = 0, x = start;
  do {
    x = p(static_cast<Point>(x));
    ++len;
  } while (x != start);
  return len;
}

}  // namespace detail

// Independent re-verification: recomputes every claim of the certificate
// from the embedded group spec and portrait, using only the tree/word/perm
// primitives.  Never trusts recorded data it can recompute.
inline CheckResult check_certificate(const SeparationCertificate& c,
                                     std::size_t cap = 2000000) {
  const WreathRecursion& spec = c.group;
  for (const Letter& l : c.g_word.letters())
    if (!spec.has_generator(l.name) && l.name != WreathRecursion::identity_state())
      return {false, "g_word uses undeclared generator '" + l.name + "'"};
  if (c.j >= c.i) return {false, "levels not ordered: need j < i"};
  if (c.t.depth() < c.i) return {false, "portrait t shallower than level i"};
  if (c.t.tree() != spec.tree()) return {false, "t lives on a different tree"};

  Portrait g_portrait = portrait_of_word(spec, c.g_word, c.i);
  if (!level_perm(g_portrait, c.j).is_identity())
    return {false, "g is not in the St_j shadow"};

  Perm g_i = level_perm(g_portrait, c.i);
  Perm t_i = level_perm(c.t, c.i);
  Perm gt = g_i * t_i;

  switch (c.obstruction.kind) {
    case ObstructionKind::cycle_type: {
      if (cycle_type(gt) != c.obstruction.gt_cycle_type)
        return {false, "recorded (g t) cycle type does not match recomputation"};
      if (cycle_type(t_i) != c.obstruction.t_cycle_type)
        return {false, "recorded t cycle type does not match recomputation"};
      if (c.obstruction.gt_cycle_type == c.obstruction.t_cycle_type)
        return {false, "cycle types are equal: no obstruction"};
      break;
    }
    case ObstructionKind::parity: {
      if (sign(gt) != c.obstruction.gt_sign)
        return {false, "recorded (g t) sign does not match recomputation"};
      if (sign(t_i) != c.obstruction.t_sign)
        return {false, "recorded t sign does not match recomputation"};
      if (c.obstruction.gt_sign == c.obstruction.t_sign)
        return {false, "signs are equal: no obstruction"};
      break;
    }
    case ObstructionKind::exhaustive: {
      if (!c.obstruction.search_completed)
        return {false, "exhaustive obstruction without a completed search"};
      LevelQuotient q(spec, c.i, cap);
      if (q.group().order() != c.obstruction.searched_order)
        return {false, "exhaustive search order does not match the quotient"};
      for (const Perm& h : q.group().elements())
        if (h.inverse() * t_i * h == gt)
          return {false, "exhaustive obstruction refuted: conjugating h exists"};
      break;
    }
  }

  // context equations, when recorded
  if (c.context.n && c.context.v) {
    const Vertex& v = *c.context.v;
    if (v.level() != c.i) return {false, "context vertex v is not at level i"};
    std::uint64_t vi = leaf_index(spec.tree(), v);
    std::uint64_t n = *c.context.n;
    if (detail::orbit_length_of(t_i, vi) != n)
      return {false, "t-orbit of v does not have the recorded length n"};
    std::uint64_t x = vi;
    for (std::uint64_t k = 0; k < n; ++k) x = gt(static_cast<Point>(x));
    if (x != g_i(static_cast<Point>(vi)))
      return {false, "(g t)^n(v) != g(v)"};
    if (x == vi) return {false, "(g t)^n(v) = v: no displacement"};
  }
  if (c.context.m && c.context.v1) {
    const Vertex& v1 = *c.context.v1;
    if (v1.level() != c.i) return {false, "context vertex v1 is not at level i"};
    std::uint64_t v1i = leaf_index(spec.tree(), v1);
    std::uint64_t m = *c.context.m;
    std::uint64_t x = v1i;
    for (std::uint64_t k = 0; k < m; ++k) x = gt(static_cast<Point>(x));
    if (x != v1i) return {false, "(g t)^m(v1) != v1"};
    std::uint64_t smallest_gt = cycle_type(gt).front();  // sorted ascending
    std::uint64_t smallest_t = cycle_type(t_i).front();
    if (m % smallest_gt != 0)
      return {false, "smallest (g t)-orbit length does not divide m"};
    if (c.context.b) {
      if (smallest_t != m * *c.context.b)
        return {false, "smallest t-orbit length is not m*b"};
      if (smallest_gt >= m * *c.context.b)
        return {false, "smallest (g t)-orbit length not below m*b"};
    }
  }
  return {true, ""};
}

}  // namespace treid

#endif  // TREID_CERTIFICATES_HPP
