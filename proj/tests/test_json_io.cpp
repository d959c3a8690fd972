#include <catch2/catch_amalgamated.hpp>

#include "treid/json_io.hpp"

using namespace treid;

TEST_CASE("perm round trip") {
  Perm p = Perm::from_cycles(4, {{0, 2, 1}});
  CHECK(perm_from_json(perm_to_json(p), "x") == p);
  CHECK_THROWS_AS(perm_from_json(json::parse("[0,0]"), "x"), ParseError);
  CHECK_THROWS_AS(perm_from_json(json::parse("\"nope\""), "x"), ParseError);
}

TEST_CASE("portrait round trip keeps only non-identity labels") {
  BranchingSequence tree({2, 3}, false);
  Portrait p(tree, 2);
  p.set_label(Vertex{{1}}, Perm::from_cycles(3, {{0, 2}}));
  json j = portrait_to_json(p);
  CHECK(j["labels"].size() == 1);
  CHECK(j["labels"].contains("1"));
  Portrait back = portrait_from_json(j);
  CHECK(back == p);
  // context tree wins when provided
  Portrait back2 = portrait_from_json(j, tree);
  CHECK(back2 == p);
}

TEST_CASE("portrait parse errors") {
  CHECK_THROWS_AS(portrait_from_json(json::parse("{\"labels\":{}}")), ParseError);
  json bad = json::parse(
      "{\"depth\":1,\"labels\":{\"zz\":[0,1]},\"tree\":{\"indices\":[2],\"repeat_tail\":true}}");
  CHECK_THROWS_AS(portrait_from_json(bad), ParseError);
  json bad_perm = json::parse(
      "{\"depth\":1,\"labels\":{\"\":[0,0]},\"tree\":{\"indices\":[2],\"repeat_tail\":true}}");
  CHECK_THROWS_AS(portrait_from_json(bad_perm), ParseError);
}

TEST_CASE("group spec round trip") {
  WreathRecursion g = builtin_group("grigorchuk");
  WreathRecursion back = group_from_json(group_to_json(g));
  CHECK(back == g);

  WreathRecursion fin = builtin_group("full-binary-finitary(2)");
  CHECK(group_from_json(group_to_json(fin)) == fin);
}

TEST_CASE("group spec parse errors") {
  CHECK_THROWS_AS(group_from_json(json::parse("{\"alphabet\":2}")), ParseError);
  // reserved identity state
  json bad = json::parse(
      "{\"alphabet\":2,\"states\":{\"e\":{\"perm\":[0,1],\"sections\":[\"e\",\"e\"]}},"
      "\"generators\":[\"e\"]}");
  CHECK_THROWS_AS(group_from_json(bad), ParseError);
  // dangling section
  json bad2 = json::parse(
      "{\"alphabet\":2,\"states\":{\"x\":{\"perm\":[1,0],\"sections\":[\"y\",\"e\"]}},"
      "\"generators\":[\"x\"]}");
  CHECK_THROWS_AS(group_from_json(bad2), ParseError);
}

TEST_CASE("certificate round trip preserves verification") {
  WreathRecursion fin = builtin_group("full-binary-finitary(3)");
  Portrait t = vertex_swap(fin.tree(), Vertex{}, 3);
  WitnessResult r = finite_order_witness(fin, t, 1, 3, 100000);
  REQUIRE(r.status == WitnessStatus::found);

  json j = certificate_to_json(*r.certificate);
  SeparationCertificate back = certificate_from_json(j);
  CHECK(back.j == r.certificate->j);
  CHECK(back.i == r.certificate->i);
  CHECK(back.g_word == r.certificate->g_word);
  CHECK(back.obstruction.gt_cycle_type == r.certificate->obstruction.gt_cycle_type);
  CHECK(back.context.v0 == r.certificate->context.v0);
  CHECK(check_certificate(back).ok);

  // JSON dumps are deterministic
  CHECK(j.dump() == certificate_to_json(certificate_from_json(j)).dump());
}

TEST_CASE("chain round trip") {
  WreathRecursion fin = builtin_group("full-binary-finitary(3)");
  Portrait t = vertex_swap(fin.tree(), Vertex{}, 3);
  ChainReport chain = chain_builder(fin, t, 2, ChainStrategy::automatic, 3, 100000);
  REQUIRE(chain.certificates.size() == 2);

  json j = chain_to_json(chain);
  ChainFile back = chain_from_json(j);
  CHECK(back.certificates.size() == 2);
  CHECK(back.lower_bound == 3);
  CHECK(back.deepest_level == chain.deepest_level);
  for (const auto& c : back.certificates) CHECK(check_certificate(c).ok);
}

TEST_CASE("reid series serialization uses the documented field names") {
  WreathRecursion g = builtin_group("grigorchuk");
  Portrait ta = portrait_of_word(g, GroupWord::parse("a"), 2);
  json j = reid_series_to_json(reid_series(g, ta, 2, 1000000));
  REQUIRE(j["rows"].size() == 2);
  for (const char* key :
       {"level", "group_order", "reid_count", "fixed_count", "orb_count",
        "representatives"})
    CHECK(j["rows"][0].contains(key));
}

TEST_CASE("obstruction kinds round trip") {
  Obstruction parity;
  parity.kind = ObstructionKind::parity;
  parity.gt_sign = -1;
  parity.t_sign = +1;
  Obstruction back = obstruction_from_json(obstruction_to_json(parity));
  CHECK(back.kind == ObstructionKind::parity);
  CHECK(back.gt_sign == -1);

  Obstruction ex;
  ex.kind = ObstructionKind::exhaustive;
  ex.searched_order = 128;
  ex.search_completed = true;
  Obstruction ex_back = obstruction_from_json(obstruction_to_json(ex));
  CHECK(ex_back.searched_order == 128);
  CHECK(ex_back.search_completed);

  CHECK_THROWS_AS(obstruction_from_json(json::parse("{\"kind\":\"???\",\"data\":{}}")),
                  ParseError);
}
