#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "treid/json_io.hpp"
#include "treid/twisted.hpp"
#include "treid/witness.hpp"

using namespace treid;

namespace {

const std::size_t kCap = 3000000;

WreathRecursion grig() { return builtin_group("grigorchuk"); }
WreathRecursion finitary4() { return builtin_group("full-binary-finitary(4)"); }

Portrait root_swap(const WreathRecursion& spec, std::size_t depth) {
  return vertex_swap(spec.tree(), Vertex{}, depth);
}

}  // namespace

TEST_CASE("certify_separation") {
  WreathRecursion g = grig();
  LevelQuotient q2 = level_quotient(g, 2, kCap);
  Portrait ta = portrait_of_word(g, GroupWord::parse("a"), 2);

  // the identity is conjugate to itself: no separation
  CHECK_FALSE(certify_separation(q2, ta, Perm::identity(4), 1, 2).has_value());

  // b is in the St_1 shadow and (b a) has a 4-cycle while a has type {2,2}
  Perm b = q2.word_image(GroupWord::parse("b"));
  auto cert = certify_separation(q2, ta, b, 1, 2);
  REQUIRE(cert.has_value());
  CHECK(cert->obstruction.kind == ObstructionKind::cycle_type);
  CHECK(cert->obstruction.gt_cycle_type == std::vector<std::size_t>{4});
  CHECK(cert->obstruction.t_cycle_type == std::vector<std::size_t>{2, 2});
  CHECK(check_certificate(*cert).ok);

  // g outside the St_j shadow is rejected
  Perm a = q2.word_image(GroupWord::parse("a"));
  CHECK_THROWS_AS(certify_separation(q2, ta, a, 1, 2), PreconditionError);
}

TEST_CASE("parity soundness sample") {
  WreathRecursion g = grig();
  LevelQuotient q3 = level_quotient(g, 3, kCap);
  std::mt19937 rng(31);
  const auto& elements = q3.group().elements();
  for (int k = 0; k < 200; ++k) {
    const Perm& h = elements[rng() % elements.size()];
    const Perm& t = elements[rng() % elements.size()];
    CHECK(sign(h.inverse() * t * h * t.inverse()) == +1);
  }
}

TEST_CASE("finite_order_witness on the finitary group") {
  WreathRecursion fin = finitary4();
  Portrait t = root_swap(fin, 4);
  WitnessResult r = finite_order_witness(fin, t, 1, 4, 200000);
  REQUIRE(r.status == WitnessStatus::found);
  const SeparationCertificate& c = *r.certificate;
  CHECK(c.j == 1);
  CHECK(c.i == 2);
  CHECK(c.g_word.to_string() == "sw_0");
  CHECK(*c.context.n == 2);

  // re-iterate the displacement equation from scratch
  Perm g2 = level_perm(portrait_of_word(fin, c.g_word, 2), 2);
  Perm t2 = level_perm(t, 2);
  Perm gt = g2 * t2;
  std::uint64_t v = leaf_index(fin.tree(), *c.context.v);
  std::uint64_t x = v;
  for (int k = 0; k < 2; ++k) x = gt(static_cast<Point>(x));
  CHECK(x == g2(static_cast<Point>(v)));
  CHECK(x != v);
  CHECK(check_certificate(c).ok);
}

TEST_CASE("finite_order_witness on an inner automorphism") {
  WreathRecursion g = grig();
  Portrait ta = portrait_of_word(g, GroupWord::parse("a"), 4);
  WitnessResult r = finite_order_witness(g, ta, 1, 4, kCap);
  REQUIRE(r.status == WitnessStatus::found);
  CHECK(r.certificate->i <= 4);
  CHECK(r.certificate->i == 2);
  CHECK(r.certificate->g_word.to_string() == "b");
  CHECK(check_certificate(*r.certificate).ok);

  // j below the first full-length orbit level
  CHECK_THROWS_AS(finite_order_witness(g, ta, 0, 4, kCap), PreconditionError);
}

TEST_CASE("finite_order_witness degenerate identity case") {
  WreathRecursion fin = builtin_group("full-binary-finitary(3)");
  Portrait id = Portrait::identity(fin.tree(), 3);
  WitnessResult r = finite_order_witness(fin, id, 1, 3, 100000);
  REQUIRE(r.status == WitnessStatus::found);
  CHECK(*r.certificate->context.n == 1);
  CHECK(check_certificate(*r.certificate).ok);
}

TEST_CASE("finite_order_witness refuses an unstable order") {
  WreathRecursion fin = finitary4();
  Portrait odo = binary_odometer(4);  // order doubles at every level
  CHECK_THROWS_AS(finite_order_witness(fin, odo, 1, 4, 200000), PreconditionError);
}

TEST_CASE("bounded_orbit_witness on the odometer") {
  WreathRecursion fin = finitary4();
  Portrait odo = binary_odometer(4);
  WitnessResult r = bounded_orbit_witness(fin, odo, 1, 4, 200000);
  REQUIRE(r.status == WitnessStatus::found);
  const SeparationCertificate& c = *r.certificate;
  CHECK(c.j == 1);
  CHECK(c.i == 2);
  CHECK(*c.context.m == 2);
  CHECK(*c.context.b == 2);
  REQUIRE(c.context.orbit_lengths.size() == 2);
  std::uint64_t smallest_gt = c.context.orbit_lengths[0];
  std::uint64_t smallest_t = c.context.orbit_lengths[1];
  CHECK(*c.context.m % smallest_gt == 0);
  CHECK(smallest_gt < *c.context.m * *c.context.b);
  CHECK(smallest_t == *c.context.m * *c.context.b);
  CHECK(check_certificate(c).ok);

  // growing orbit counts violate the precondition
  Portrait id = Portrait::identity(fin.tree(), 4);
  CHECK_THROWS_AS(bounded_orbit_witness(fin, id, 1, 4, 200000), PreconditionError);
}

TEST_CASE("parity_witness") {
  WreathRecursion fin = builtin_group("full-binary-finitary(3)");
  ParitySearchResult r = parity_witness(fin, 1, 3, 100000);
  REQUIRE(r.status == WitnessStatus::found);
  CHECK(r.witness->j0 == 2);

  SeparationCertificate cert = r.witness->make_certificate(root_swap(fin, 3));
  CHECK(cert.obstruction.kind == ObstructionKind::parity);
  CHECK(cert.obstruction.gt_sign != cert.obstruction.t_sign);
  CHECK(check_certificate(cert).ok);
  // the same witness separates against a different isometry
  SeparationCertificate cert2 = r.witness->make_certificate(binary_odometer(3));
  CHECK(check_certificate(cert2).ok);

  ParitySearchResult grig_r = parity_witness(grig(), 1, 4, kCap);
  REQUIRE(grig_r.status == WitnessStatus::found);
  CHECK(grig_r.witness->g_word.to_string() == "b");
  CHECK(grig_r.witness->j0 == 2);

  CHECK(parity_witness(fin, 3, 3, 100000).status == WitnessStatus::not_found);
}

TEST_CASE("prime_case_analysis on the Gupta-Sidki group") {
  WreathRecursion gs = builtin_group("gupta-sidki-3");
  Portrait ta = portrait_of_word(gs, GroupWord::parse("a"), 3);
  PrimeCaseReport r = prime_case_analysis(gs, ta, 2, kCap);
  CHECK(r.prime == 3);
  CHECK(r.quotient_order == 27);
  CHECK(r.fixed_count == 9);
  CHECK(r.orb_prev == 1);
  CHECK_FALSE(r.fixed_lt_orb);
  REQUIRE(r.v0_found);
  CHECK(r.orbit_len == 3);
  // all G_{v} shadows are trivial at this depth: Gamma is trivial
  CHECK(r.gamma_order == 1);
  CHECK(r.factors_commute);
  CHECK(r.gamma_fixed_point_free);
  CHECK(r.gamma_solvable);
  CHECK(r.classification == PrimeCaseReport::Classification::abelian);
}

TEST_CASE("prime_case_analysis emits a parity certificate when G_{v0} is odd") {
  // ternary tree, generators: a 3-cycle at the root plus a full S3 of
  // portraits below the vertex (0); its siblings get S3 shadows by
  // conjugation, so every G_{v} shadow is non-abelian with odd elements
  BranchingSequence t3 = BranchingSequence::constant(3);
  Portrait rot_root(t3, 1);
  rot_root.set_label(Vertex{}, Perm::from_cycles(3, {{0, 1, 2}}));
  Portrait swap0(t3, 2);
  swap0.set_label(Vertex{{0}}, Perm::from_cycles(3, {{0, 1}}));
  Portrait rot0(t3, 2);
  rot0.set_label(Vertex{{0}}, Perm::from_cycles(3, {{0, 1, 2}}));
  WreathRecursion custom(3, {}, {"r", "s0", "c0"},
                         {{"r", rot_root}, {"s0", swap0}, {"c0", rot0}});

  Portrait t = portrait_of_word(custom, GroupWord::parse("r"), 2);
  PrimeCaseReport r = prime_case_analysis(custom, t, 2, 100000);
  REQUIRE(r.v0_found);
  CHECK(r.v0 == Vertex{{0}});
  CHECK(r.orbit_len == 3);
  CHECK(r.factors_commute);
  CHECK(r.gv0_transitive);
  CHECK_FALSE(r.gv0_abelian);
  CHECK(r.gv0_has_odd);
  CHECK(r.classification == PrimeCaseReport::Classification::contains_odd);
  REQUIRE(r.parity_certificate.has_value());
  CHECK(r.parity_certificate->obstruction.kind == ObstructionKind::parity);
  CHECK(check_certificate(*r.parity_certificate).ok);
}

TEST_CASE("prime_case_analysis rejects non-prime branching") {
  WreathRecursion quad(4, {{"s", {Perm::from_cycles(4, {{0, 1, 2, 3}}), {"e", "e", "e", "e"}}}},
                       {"s"});
  Portrait id = Portrait::identity(quad.tree(), 2);
  CHECK_THROWS_AS(prime_case_analysis(quad, id, 1, 1000), PreconditionError);
}

TEST_CASE("chain_builder on the finitary group") {
  WreathRecursion fin = finitary4();
  Portrait t = root_swap(fin, 4);
  ChainReport chain = chain_builder(fin, t, 3, ChainStrategy::automatic, 4, 200000);
  CHECK(chain.strategy_used == ChainStrategy::finite_order);
  REQUIRE(chain.certificates.size() == 3);
  CHECK(chain.lower_bound == 4);
  CHECK(chain.deepest_level == 4);
  for (std::size_t k = 0; k + 1 < chain.certificates.size(); ++k)
    CHECK(chain.certificates[k + 1].j >= chain.certificates[k].i);
  for (const auto& c : chain.certificates) CHECK(check_certificate(c).ok);
  REQUIRE(chain.distinctness.attempted);
  CHECK(chain.distinctness.verified);
  CHECK(chain.distinctness.reid_count >= 4);
}

TEST_CASE("chain_builder edge cases") {
  WreathRecursion fin = finitary4();
  Portrait t = root_swap(fin, 4);

  ChainReport empty = chain_builder(fin, t, 0, ChainStrategy::automatic, 4, 200000);
  CHECK(empty.certificates.empty());
  CHECK(empty.lower_bound == 1);

  // budget exhausted: only 2 certificates fit below depth 3
  ChainReport partial = chain_builder(fin, t, 5, ChainStrategy::finite_order, 3, 200000);
  CHECK(partial.certificates.size() == 2);
  CHECK(partial.lower_bound == 3);
  CHECK_FALSE(partial.note.empty());
}

TEST_CASE("chain_builder picks bounded-orbit for the odometer") {
  WreathRecursion fin = finitary4();
  Portrait odo = binary_odometer(4);
  ChainReport chain = chain_builder(fin, odo, 2, ChainStrategy::automatic, 4, 200000);
  CHECK(chain.strategy_used == ChainStrategy::bounded_orbit);
  REQUIRE(chain.certificates.size() == 2);
  CHECK(chain.distinctness.verified);
  for (const auto& c : chain.certificates) CHECK(check_certificate(c).ok);
}

TEST_CASE("chain_builder on an inner Grigorchuk automorphism") {
  WreathRecursion g = grig();
  Portrait ta = portrait_of_word(g, GroupWord::parse("a"), 5);
  ChainReport chain = chain_builder(g, ta, 2, ChainStrategy::automatic, 5, kCap);
  REQUIRE(chain.certificates.size() == 2);
  CHECK(chain.deepest_level == 3);
  CHECK(chain.distinctness.verified);
  CHECK(chain.distinctness.reid_count == 20);
  CHECK(chain.lower_bound <= chain.distinctness.reid_count);
}

TEST_CASE("tampered certificates are rejected") {
  WreathRecursion fin = finitary4();
  Portrait t = root_swap(fin, 4);
  WitnessResult r = finite_order_witness(fin, t, 1, 4, 200000);
  REQUIRE(r.status == WitnessStatus::found);
  const SeparationCertificate& good = *r.certificate;
  REQUIRE(check_certificate(good).ok);

  SeparationCertificate bad = good;
  bad.j = bad.i;
  CHECK_FALSE(check_certificate(bad).ok);

  bad = good;
  bad.obstruction.gt_cycle_type.push_back(99);
  CHECK_FALSE(check_certificate(bad).ok);

  bad = good;
  bad.context.n = *bad.context.n + 1;
  CHECK_FALSE(check_certificate(bad).ok);

  bad = good;
  bad.g_word = GroupWord::parse("sw");  // not in the St_1 shadow
  CHECK_FALSE(check_certificate(bad).ok);

  bad = good;
  bad.g_word = GroupWord::parse("ghost");
  CHECK_FALSE(check_certificate(bad).ok);
}
