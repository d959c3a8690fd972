#ifndef TREID_WITNESS_HPP
#define TREID_WITNESS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "treid/certificates.hpp"
#include "treid/errors.hpp"
#include "treid/perm.hpp"
#include "treid/perm_group.hpp"
#include "treid/portrait.hpp"
#include "treid/quotient.hpp"
#include "treid/tree.hpp"
#include "treid/twisted.hpp"
#include "treid/wreath.hpp"

namespace treid {

// Tries the obstructions in order cycle-type -> parity -> exhaustive for the
// non-conjugacy of (g t) and t at level i.  The first two are cap-independent
// (valid against the whole symmetric group of the level); the exhaustive one
// is scoped to the enumerated quotient.  Returns the first certificate, or
// nothing when (g t) is conjugate to t at this level.
inline std::optional<SeparationCertificate> certify_separation(
    const LevelQuotient& q_i, const Portrait& t, const Perm& g, std::size_t j,
    std::size_t i) {
  if (i != q_i.level()) throw PreconditionError("i must equal the quotient level");
  if (j >= i) throw PreconditionError("need j < i");
  if (!validate_normalizer(q_i, t))
    throw InvalidNormalizerError("t does not normalize the level-" +
                                 std::to_string(i) + " quotient");
  auto g_idx = q_i.index_of(g);
  if (!g_idx) throw PreconditionError("g is not an element of the quotient");
  if (!project_to_level(q_i.tree(), g, i, j).is_identity())
    throw PreconditionError("g is not in the St_j shadow");

  Perm t_i = level_perm(t, i);
  Perm gt = g * t_i;
  SeparationCertificate cert{q_i.group_spec(), t, q_i.discovery_word(*g_idx)};
  cert.j = j;
  cert.i = i;

  std::vector<std::size_t> gt_type = cycle_type(gt), t_type = cycle_type(t_i);
  if (gt_type != t_type) {
    cert.obstruction.kind = ObstructionKind::cycle_type;
    cert.obstruction.gt_cycle_type = std::move(gt_type);
    cert.obstruction.t_cycle_type = std::move(t_type);
    cert.caveats.push_back("cycle-type obstruction is conjugation-invariant: "
                           "valid against every h in Sym(L_i)");
    return cert;
  }
  if (sign(gt) != sign(t_i)) {  // unreachable when cycle types match; kept in order
    cert.obstruction.kind = ObstructionKind::parity;
    cert.obstruction.gt_sign = sign(gt);
    cert.obstruction.t_sign = sign(t_i);
    cert.caveats.push_back("parity obstruction is conjugation-invariant: "
                           "valid against every h in Sym(L_i)");
    return cert;
  }
  for (const Perm& h : q_i.group().elements())
    if (h.inverse() * t_i * h == gt) return std::nullopt;
  cert.obstruction.kind = ObstructionKind::exhaustive;
  cert.obstruction.search_completed = true;
  cert.obstruction.searched_order = q_i.group().order();
  cert.caveats.push_back("exhaustive obstruction is valid only against the "
                         "enumerated level-i quotient");
  return cert;
}

enum class WitnessStatus { found, not_found };

struct WitnessResult {
  WitnessStatus status = WitnessStatus::not_found;
  std::optional<SeparationCertificate> certificate;
  std::string note;
};

namespace detail {

struct FiniteOrderParams {
  std::uint64_t order = 0;  // n, stable at the two deepest tested levels
  std::size_t j0 = 0;       // first level with an orbit of exact length n
};

// Order of t observed at the deepest levels, plus the first level carrying
// an orbit of the full length.  nullopt when no such orbit exists yet.
inline std::optional<FiniteOrderParams> finite_order_params(const Portrait& t,
                                                            std::size_t depth_budget) {
  if (depth_budget < 2)
    throw PreconditionError("depth budget must cover two levels for the "
                            "order stability check");
  if (t.depth() < depth_budget)
    throw DepthExceededError("portrait shallower than the depth budget");
  std::uint64_t n = level_order(t, depth_budget);
  if (level_order(t, depth_budget - 1) != n)
    throw PreconditionError("order of t not stabilized within the depth budget");
  for (std::size_t level = 1; level <= depth_budget; ++level) {
    const auto lengths = orbit_stats(t, level).lengths;
    if (std::binary_search(lengths.begin(), lengths.end(),
                           static_cast<std::size_t>(n)))
      return FiniteOrderParams{n, level};
  }
  return std::nullopt;
}

inline std::uint64_t orbit_length_at(const Perm& p, std::uint64_t start) {
  std::uint64_t len = 0, x = start;
  do {
    x = p(static_cast<Point>(x));
    ++len;
  } while (x != start);
  return len;
}

inline std::uint64_t iterate(const Perm& p, std::uint64_t start, std::uint64_t times) {
  std::uint64_t x = start;
  for (std::uint64_t k = 0; k < times; ++k) x = p(static_cast<Point>(x));
  return x;
}

}  // namespace detail

// Witness search for finite-order t: picks a vertex v0 in an orbit of the
// full length n at L_j, digs for a rigid-stabilizer shadow g below it, and
// certifies that (g t)^n displaces the recorded leaf while t has order n,
// so the cycle types at level i differ.
inline WitnessResult finite_order_witness(const WreathRecursion& spec,
                                          const Portrait& t, std::size_t j,
                                          std::size_t depth_budget, std::size_t cap) {
  auto params = detail::finite_order_params(t, depth_budget);
  if (!params)
    return {WitnessStatus::not_found, std::nullopt,
            "no orbit of the full order length within the depth budget"};
  std::uint64_t n = params->order;
  if (j < params->j0)
    throw PreconditionError("j is below the first level carrying an orbit of "
                            "length " + std::to_string(n));
  if (j >= depth_budget)
    throw PreconditionError("j leaves no separation level within the depth budget");

  Perm t_j = level_perm(t, j);
  std::optional<std::uint64_t> v0_idx;
  for (std::uint64_t x = 0; x < t_j.degree(); ++x)
    if (detail::orbit_length_at(t_j, x) == n) { v0_idx = x; break; }
  if (!v0_idx) throw Error("internal: no length-n orbit at level j despite j >= j0");
  Vertex v0 = vertex_at(t.tree(), j, *v0_idx);

  for (std::size_t i = j + 1; i <= depth_budget; ++i) {
    LevelQuotient q_i = level_quotient(spec, i, cap);
    if (!validate_normalizer(q_i, t))
      throw InvalidNormalizerError("t does not normalize the level-" +
                                   std::to_string(i) + " quotient");
    std::vector<std::size_t> probe = rist_probe(q_i, v0);
    if (probe.empty()) continue;
    const Perm& g = q_i.group().elements()[probe[0]];

    std::uint64_t block = q_i.tree().level_size(i) / q_i.tree().level_size(j);
    std::uint64_t lo = *v0_idx * block;
    std::uint64_t v_idx = lo;
    while (v_idx < lo + block && g(static_cast<Point>(v_idx)) == v_idx) ++v_idx;
    if (v_idx == lo + block) throw Error("internal: probe element fixes the block");

    Perm t_i = level_perm(t, i);
    Perm gt = g * t_i;
    if (detail::orbit_length_at(t_i, v_idx) != n)
      throw Error("internal: t-orbit of v does not have length n");
    std::uint64_t displaced = detail::iterate(gt, v_idx, n);
    if (displaced != g(static_cast<Point>(v_idx)) || displaced == v_idx)
      throw Error("internal: (g t)^n(v) != g(v) or no displacement");

    auto cert = certify_separation(q_i, t, g, j, i);
    if (!cert || cert->obstruction.kind != ObstructionKind::cycle_type)
      throw Error("internal: expected a cycle-type obstruction");
    cert->context.v0 = v0;
    cert->context.v = vertex_at(t.tree(), i, v_idx);
    cert->context.n = n;
    cert->context.orbit_lengths = {detail::orbit_length_at(gt, v_idx), n};
    cert->caveats.push_back("order of t is a finite-depth observation (stable "
                            "at the two deepest tested levels)");
    return {WitnessStatus::found, std::move(cert), ""};
  }
  return {WitnessStatus::not_found, std::nullopt,
          "no rigid-stabilizer shadow below v0 within the depth budget (not a "
          "refutation of weak branching)"};
}

// Witness search for t with stabilized orbit counts: descends from a
// smallest orbit at L_j to a WST vertex v0, picks g in the G_{v0} shadow
// returning t^m(v1) to v1, and certifies the smallest-cycle-length gap
// m < m*b between (g t) and t at level i.
inline WitnessResult bounded_orbit_witness(const WreathRecursion& spec,
                                           const Portrait& t, std::size_t j,
                                           std::size_t depth_budget, std::size_t cap) {
  if (t.depth() < depth_budget)
    throw DepthExceededError("portrait shallower than the depth budget");
  GrowthReport growth = classify_orbit_growth(t, depth_budget);
  if (growth.verdict != GrowthVerdict::stabilized)
    throw PreconditionError("orbit counts of t not stabilized within the depth "
                            "budget");
  if (j < growth.since_level)
    throw PreconditionError("j is below the stabilization level " +
                            std::to_string(growth.since_level));
  if (j >= depth_budget)
    throw PreconditionError("j leaves no separation level within the depth budget");

  OrbitStats stats_j = orbit_stats(t, j);
  std::size_t min_len = stats_j.lengths.front();
  Perm t_j = level_perm(t, j);
  std::uint64_t v_idx = 0;
  while (detail::orbit_length_at(t_j, v_idx) != min_len) ++v_idx;
  Vertex v = vertex_at(t.tree(), j, v_idx);

  WstOutcome wst = wst_check(spec, v, depth_budget, cap);
  if (wst.status != WstStatus::found)
    return {WitnessStatus::not_found, std::nullopt,
            "WST witness not found below the smallest orbit within the depth "
            "budget (not a refutation)"};
  Vertex v0 = wst.evidence->v0;
  std::size_t i = v0.level() + 1;

  LevelQuotient q_i = level_quotient(spec, i, cap);
  if (!validate_normalizer(q_i, t))
    throw InvalidNormalizerError("t does not normalize the level-" +
                                 std::to_string(i) + " quotient");
  Perm t_prev = level_perm(t, i - 1);
  std::uint64_t v0_idx = leaf_index(t.tree(), v0);
  std::uint64_t m = detail::orbit_length_at(t_prev, v0_idx);
  std::uint64_t b = t.tree().branching_at(v0.level());

  Vertex v1 = v0.child(0);
  std::uint64_t v1_idx = leaf_index(t.tree(), v1);
  Perm t_i = level_perm(t, i);
  std::uint64_t w = detail::iterate(t_i, v1_idx, m);

  PermGroup shadow = g_brace(q_i, v0);
  const Perm* g = nullptr;
  for (const Perm& f : shadow.elements())
    if (f(static_cast<Point>(w)) == v1_idx) { g = &f; break; }
  if (!g) throw Error("internal: transitive G_{v0} shadow has no element "
                      "returning t^m(v1) to v1");

  Perm gt = *g * t_i;
  std::uint64_t v1_orbit = detail::orbit_length_at(gt, v1_idx);
  std::uint64_t smallest_gt = cycle_type(gt).front();
  std::uint64_t smallest_t = cycle_type(t_i).front();
  if (m % v1_orbit != 0) throw Error("internal: (g t)-orbit of v1 does not divide m");
  if (smallest_t != m * b) throw Error("internal: smallest t-orbit is not m*b");
  if (smallest_gt >= smallest_t) throw Error("internal: no smallest-cycle gap");

  auto cert = certify_separation(q_i, t, *g, j, i);
  if (!cert || cert->obstruction.kind != ObstructionKind::cycle_type)
    throw Error("internal: expected a cycle-type obstruction");
  cert->context.v0 = v0;
  cert->context.v1 = v1;
  cert->context.m = m;
  cert->context.b = b;
  cert->context.orbit_lengths = {smallest_gt, smallest_t};
  cert->caveats.push_back("orbit-count stabilization observed within the depth "
                          "budget only");
  return {WitnessStatus::found, std::move(cert), ""};
}

// An element of the St_j shadow acting by an odd permutation at level j0.
// Separates against EVERY inducing isometry t, since h^-1 t h t^-1 is even
// while (g t) and t have opposite signs; the factory stamps a certificate
// for any supplied t.
struct ParityWitness {
  WreathRecursion group;
  GroupWord g_word;
  std::size_t j = 0;
  std::size_t j0 = 0;

  SeparationCertificate make_certificate(const Portrait& t) const {
    if (t.depth() < j0)
      throw DepthExceededError("portrait shallower than the parity level");
    SeparationCertificate cert{group, t, g_word};
    cert.j = j;
    cert.i = j0;
    Perm g_perm = level_perm(portrait_of_word(group, g_word, j0), j0);
    Perm t_perm = level_perm(t, j0);
    cert.obstruction.kind = ObstructionKind::parity;
    cert.obstruction.gt_sign = sign(g_perm * t_perm);
    cert.obstruction.t_sign = sign(t_perm);
    if (cert.obstruction.gt_sign == cert.obstruction.t_sign)
      throw Error("internal: parity witness lost its sign");
    cert.caveats.push_back("parity obstruction is conjugation-invariant: "
                           "valid against every h in Sym(L_i) and every "
                           "inducing isometry t");
    return cert;
  }
};

struct ParitySearchResult {
  WitnessStatus status = WitnessStatus::not_found;
  std::optional<ParityWitness> witness;
  std::string note;
};

// Searches the enumerated quotients for an element of the St_j shadow that
// is odd at some level j0 in (j, depth_budget].
inline ParitySearchResult parity_witness(const WreathRecursion& spec, std::size_t j,
                                         std::size_t depth_budget, std::size_t cap) {
  if (j >= depth_budget)
    return {WitnessStatus::not_found, std::nullopt,
            "no levels above j within the depth budget"};
  for (std::size_t j0 = j + 1; j0 <= depth_budget; ++j0) {
    LevelQuotient q = level_quotient(spec, j0, cap);
    for (std::size_t idx : stabilizer_elements(q, j)) {
      if (sign(q.group().elements()[idx]) == -1) {
        ParityWitness w{spec, q.discovery_word(idx), j, j0};
        return {WitnessStatus::found, std::move(w), ""};
      }
    }
  }
  return {WitnessStatus::not_found, std::nullopt,
          "no odd element in the St_j shadows within the depth budget (not a "
          "refutation)"};
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct PrimeCaseReport {
  std::size_t level = 0;       // i
  std::uint32_t prime = 0;     // branching index at level i-1
  std::uint64_t quotient_order = 0;
  std::size_t fixed_count = 0;  // phi-fixed elements of the level-i quotient
  std::size_t orb_prev = 0;     // Orb_{i-1}(t)
  bool fixed_lt_orb = false;    // fixed_count < orb_prev, as the paper uses
  bool v0_found = false;
  std::optional<Vertex> v0;     // BFS-least fixed-point-avoiding vertex
  std::uint64_t orbit_len = 0;  // t-orbit length of v0 at level i-1
  bool factors_commute = false;
  bool gamma_phi_invariant = false;
  bool gamma_fixed_point_free = false;
  bool gamma_solvable = false;
  std::uint64_t gamma_order = 0;
  bool gv0_transitive = false;
  bool gv0_abelian = false;
  bool gv0_has_odd = false;

  enum class Classification { abelian, contains_odd, neither_hypothesis_met, no_v0 };
  Classification classification = Classification::no_v0;
  std::optional<SeparationCertificate> parity_certificate;
};

inline const char* to_string(PrimeCaseReport::Classification c) {
  switch (c) {
    case PrimeCaseReport::Classification::abelian: return "abelian";
    case PrimeCaseReport::Classification::contains_odd: return "contains-odd";
    case PrimeCaseReport::Classification::neither_hypothesis_met:
      return "neither-hypothesis-met";
    case PrimeCaseReport::Classification::no_v0: return "no-fixed-point-avoiding-vertex";
  }
  return "?";
}

// Prime-branching analysis at level i: fixed points of phi vs Orb_{i-1}(t),
// a fixed-point-avoiding vertex v0, the group Gamma built along the t-orbit
// of v0 with a direct solvability test (the fixed-point-free => solvable
// citation is tested, not trusted), and the abelian/odd classification of
// the G_{v0} shadow.
inline PrimeCaseReport prime_case_analysis(const WreathRecursion& spec,
                                           const Portrait& t, std::size_t i,
                                           std::size_t cap) {
  if (i < 1) throw PreconditionError("level must be >= 1");
  PrimeCaseReport report;
  report.level = i;
  report.prime = spec.tree().branching_at(i - 1);
  if (!is_prime(report.prime))
    throw PreconditionError("branching index at level " + std::to_string(i - 1) +
                            " is not prime");
  LevelQuotient q = level_quotient(spec, i, cap);
  TwistedSetting setting(q, level_perm(t, i));
  report.quotient_order = q.group().order();

  std::vector<std::size_t> fixed = fixed_points(setting);
  report.fixed_count = fixed.size();
  report.orb_prev = orbit_stats(t, i - 1).orbit_count;
  report.fixed_lt_orb = report.fixed_count < report.orb_prev;
  std::unordered_set<std::size_t> fixed_set(fixed.begin(), fixed.end());

  Perm t_prev = level_perm(t, i - 1);
  std::uint64_t upper = q.tree().level_size(i - 1);
  std::vector<std::optional<PermGroup>> brace_cache(
      static_cast<std::size_t>(upper));
  auto brace_at = [&](std::uint64_t u) -> const PermGroup& {
    auto& slot = brace_cache[static_cast<std::size_t>(u)];
    if (!slot) slot = g_brace(q, vertex_at(q.tree(), i - 1, u));
    return *slot;
  };
  auto has_nontrivial_fixed = [&](const PermGroup& f) {
    for (const Perm& x : f.elements()) {
      if (x.is_identity()) continue;
      auto idx = q.index_of(x);
      if (idx && fixed_set.count(*idx)) return true;
    }
    return false;
  };

  std::optional<std::uint64_t> v0_idx;
  for (std::uint64_t u = 0; u < upper && !v0_idx; ++u) {
    bool avoids = true;
    std::uint64_t w = u;
    do {
      if (has_nontrivial_fixed(brace_at(w))) { avoids = false; break; }
      w = t_prev(static_cast<Point>(w));
    } while (w != u);
    if (avoids) v0_idx = u;
  }
  if (!v0_idx) {
    report.classification = PrimeCaseReport::Classification::no_v0;
    return report;  // analysis failure, not a contradiction
  }
  report.v0_found = true;
  report.v0 = vertex_at(q.tree(), i - 1, *v0_idx);
  report.orbit_len = detail::orbit_length_at(t_prev, *v0_idx);

  // Gamma: product of the G_{v} shadows along the t-orbit of v0
  std::vector<const PermGroup*> factors;
  std::uint64_t w = *v0_idx;
  do {
    factors.push_back(&brace_at(w));
    w = t_prev(static_cast<Point>(w));
  } while (w != *v0_idx);
  report.factors_commute = true;
  for (std::size_t a = 0; a < factors.size() && report.factors_commute; ++a)
    for (std::size_t c = a + 1; c < factors.size() && report.factors_commute; ++c)
      for (const Perm& x : factors[a]->elements()) {
        for (const Perm& y : factors[c]->elements())
          if (x * y != y * x) { report.factors_commute = false; break; }
        if (!report.factors_commute) break;
      }
  std::vector<Perm> gamma_gens;
  for (const PermGroup* f : factors)
    for (const Perm& x : f->elements())
      if (!x.is_identity()) gamma_gens.push_back(x);
  PermGroup gamma = PermGroup::closure(q.group().degree(), std::move(gamma_gens), cap);
  report.gamma_order = gamma.order();
  report.gamma_phi_invariant = true;
  for (const Perm& x : gamma.generators())
    if (!gamma.contains(setting.phi(x))) { report.gamma_phi_invariant = false; break; }
  report.gamma_fixed_point_free = true;
  for (const Perm& x : gamma.elements())
    if (!x.is_identity() && setting.phi(x) == x) {
      report.gamma_fixed_point_free = false;
      break;
    }
  report.gamma_solvable = is_solvable(gamma);

  const PermGroup& gv0 = brace_at(*v0_idx);
  std::uint32_t bb = q.tree().branching_at(i - 1);
  std::vector<Point> domain;
  for (std::uint32_t s = 0; s < bb; ++s)
    domain.push_back(static_cast<Point>(*v0_idx * bb + s));
  report.gv0_transitive = is_transitive(gv0, domain);
  report.gv0_abelian = is_abelian(gv0);
  std::optional<std::size_t> odd_member;
  for (std::size_t k = 0; k < gv0.elements().size(); ++k)
    if (sign(gv0.elements()[k]) == -1) { odd_member = k; break; }
  report.gv0_has_odd = odd_member.has_value();

  if (report.gv0_abelian) {
    report.classification = PrimeCaseReport::Classification::abelian;
  } else if (odd_member) {
    report.classification = PrimeCaseReport::Classification::contains_odd;
    const Perm& g = gv0.elements()[*odd_member];
    auto cert = certify_separation(q, t, g, i - 1, i);
    if (cert) {
      // force the parity form: it is what the prime-case argument certifies
      cert->obstruction.kind = ObstructionKind::parity;
      cert->obstruction.gt_sign = sign(g * setting.t_perm());
      cert->obstruction.t_sign = sign(setting.t_perm());
      cert->obstruction.gt_cycle_type.clear();
      cert->obstruction.t_cycle_type.clear();
      cert->context.v0 = report.v0;
      report.parity_certificate = std::move(cert);
    }
  } else {
    report.classification = PrimeCaseReport::Classification::neither_hypothesis_met;
  }
  return report;
}

enum class ChainStrategy { automatic, finite_order, bounded_orbit, parity };

inline const char* to_string(ChainStrategy s) {
  switch (s) {
    case ChainStrategy::automatic: return "auto";
    case ChainStrategy::finite_order: return "finite-order";
    case ChainStrategy::bounded_orbit: return "bounded-orbit";
    case ChainStrategy::parity: return "parity";
  }
  return "?";
}

struct DistinctnessCheck {
  bool attempted = false;
  bool verified = false;
  std::size_t reid_count = 0;   // Reidemeister count of the deepest quotient
  std::vector<std::size_t> representative_classes;
  std::size_t identity_class = 0;
  std::string note;
};

struct ChainReport {
  std::vector<SeparationCertificate> certificates;
  std::size_t requested = 0;
  std::size_t lower_bound = 1;  // achieved + 1 (the identity class is free)
  std::size_t deepest_level = 0;
  ChainStrategy strategy_used = ChainStrategy::automatic;
  DistinctnessCheck distinctness;
  std::string proof;
  std::string note;
};

// Builds certificates c_1..c_N with j_{k+1} = i_k.  Since St_{i_k} contains
// every later representative and the identity while c_k excludes the whole
// class of g_{j_k} from St_{i_k}, the representatives lie in pairwise
// distinct Reidemeister classes, all distinct from the identity class:
// R(phi) >= N+1 as a finite-stage bound.  The distinctness is additionally
// cross-checked against the deepest quotient's Reidemeister partition when
// it fits the cap.
inline ChainReport chain_builder(const WreathRecursion& spec, const Portrait& t,
                                 std::size_t n_certificates, ChainStrategy strategy,
                                 std::size_t depth_budget, std::size_t cap) {
  ChainReport report;
  report.requested = n_certificates;

  ChainStrategy chosen = strategy;
  if (chosen == ChainStrategy::automatic) {
    bool order_stable = false;
    if (depth_budget >= 2 && t.depth() >= depth_budget)
      order_stable = level_order(t, depth_budget) == level_order(t, depth_budget - 1);
    if (order_stable) {
      chosen = ChainStrategy::finite_order;
    } else {
      GrowthReport growth = classify_orbit_growth(t, std::min(depth_budget, t.depth()));
      chosen = growth.verdict == GrowthVerdict::stabilized
                   ? ChainStrategy::bounded_orbit
                   : ChainStrategy::parity;
    }
  }
  report.strategy_used = chosen;

  std::size_t j_next = 1;
  if (chosen == ChainStrategy::finite_order) {
    auto params = detail::finite_order_params(t, depth_budget);
    if (!params) {
      report.note = "no orbit of the full order length within the depth budget";
      return report;
    }
    j_next = params->j0;
  } else if (chosen == ChainStrategy::bounded_orbit) {
    GrowthReport growth = classify_orbit_growth(t, depth_budget);
    if (growth.verdict != GrowthVerdict::stabilized)
      throw PreconditionError("orbit counts of t not stabilized within the depth "
                              "budget");
    j_next = growth.since_level;
  }

  for (std::size_t k = 0; k < n_certificates; ++k) {
    if (j_next >= depth_budget) {
      report.note = "depth budget exhausted after " +
                    std::to_string(report.certificates.size()) + " certificates";
      break;
    }
    std::optional<SeparationCertificate> cert;
    std::string stop_note;
    if (chosen == ChainStrategy::finite_order) {
      WitnessResult r = finite_order_witness(spec, t, j_next, depth_budget, cap);
      if (r.status == WitnessStatus::found) cert = std::move(r.certificate);
      else stop_note = r.note;
    } else if (chosen == ChainStrategy::bounded_orbit) {
      WitnessResult r = bounded_orbit_witness(spec, t, j_next, depth_budget, cap);
      if (r.status == WitnessStatus::found) cert = std::move(r.certificate);
      else stop_note = r.note;
    } else {
      ParitySearchResult r = parity_witness(spec, j_next, depth_budget, cap);
      if (r.status == WitnessStatus::found)
        cert = r.witness->make_certificate(t);
      else stop_note = r.note;
    }
    if (!cert) {
      report.note = stop_note;
      break;
    }
    j_next = cert->i;
    report.certificates.push_back(std::move(*cert));
  }

  report.lower_bound = report.certificates.size() + 1;
  if (!report.certificates.empty())
    report.deepest_level = report.certificates.back().i;

  // distinctness proof text
  {
    std::string p;
    for (std::size_t k = 0; k < report.certificates.size(); ++k) {
      const auto& c = report.certificates[k];
      p += "c" + std::to_string(k + 1) + ": g=" + c.g_word.to_string() +
           " in St_" + std::to_string(c.j) + " shadow, class avoids St_" +
           std::to_string(c.i) + " (" + to_string(c.obstruction.kind) + "); ";
    }
    p += "every later representative and the identity lie in St_{i_k}, which "
         "the class of g_{j_k} avoids, so the representatives occupy " +
         std::to_string(report.certificates.size()) +
         " classes distinct from each other and from the identity class: "
         "R(phi) >= " + std::to_string(report.lower_bound) +
         " at level " + std::to_string(report.deepest_level) +
         " (finite-stage lower bound).";
    report.proof = p;
  }

  // oracle cross-check against the deepest quotient's partition
  if (!report.certificates.empty()) {
    report.distinctness.attempted = true;
    try {
      std::size_t deepest = report.deepest_level;
      LevelQuotient q = level_quotient(spec, deepest, cap);
      TwistedSetting setting(q, level_perm(t, deepest));
      ReidemeisterPartition part = reidemeister_classes(setting);
      report.distinctness.reid_count = part.count;
      report.distinctness.identity_class = part.class_of[0];
      bool ok = true;
      std::unordered_set<std::size_t> seen{report.distinctness.identity_class};
      for (const auto& c : report.certificates) {
        Perm rep = level_perm(portrait_of_word(spec, c.g_word, deepest), deepest);
        std::size_t cls = class_of(setting, part, rep);
        report.distinctness.representative_classes.push_back(cls);
        if (!seen.insert(cls).second) ok = false;
      }
      report.distinctness.verified = ok;
      if (!ok)
        report.distinctness.note = "representatives collide in the deepest "
                                   "partition";
    } catch (const CapExceededError& e) {
      report.distinctness.note = std::string("deepest quotient exceeds the cap: ") +
                                 e.what();
    }
  } else {
    report.distinctness.note = "empty chain";
  }
  return report;
}

}  // namespace treid

#endif  // TREID_WITNESS_HPP
