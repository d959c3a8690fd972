#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "treid/wreath.hpp"

using namespace treid;

TEST_CASE("word parsing and rendering") {
  GroupWord w = GroupWord::parse("a*b^-1*c");
  REQUIRE(w.size() == 3);
  CHECK(w.letters()[1].name == "b");
  CHECK(w.letters()[1].exponent == -1);
  CHECK(w.to_string() == "a*b^-1*c");

  CHECK(GroupWord::parse("a^3").size() == 3);
  CHECK(GroupWord::parse("a^-2").letters()[0].exponent == -1);
  CHECK(GroupWord::parse("").empty());
  CHECK(GroupWord::parse("e").empty());
  CHECK(GroupWord{}.to_string() == "e");
  CHECK_THROWS_AS(GroupWord::parse("a^x"), ParseError);

  CHECK(GroupWord::parse("a*a^-1*b").freely_reduced().to_string() == "b");
  CHECK(GroupWord::parse("a*b").inverse().to_string() == "b^-1*a^-1");
}

TEST_CASE("builtin names") {
  CHECK_THROWS_AS(builtin_group("unknown"), UnknownGroupError);
  CHECK_THROWS_AS(builtin_group("full-binary-finitary(x)"), UnknownGroupError);
  CHECK(builtin_group("grigorchuk").generators().size() == 4);
  CHECK(builtin_group("gupta-sidki-3").generators().size() == 2);
  CHECK(builtin_group("gupta-sidki-3").alphabet_size() == 3);
  // 1 + 2 + 4 = 7 vertex swaps above depth 3
  CHECK(builtin_group("full-binary-finitary(3)").generators().size() == 7);
}

TEST_CASE("spec validation") {
  Perm id2 = Perm::identity(2);
  CHECK_THROWS_AS(WreathRecursion(2, {{"x", {id2, {"y", "e"}}}}, {"x"}), Error);
  CHECK_THROWS_AS(WreathRecursion(2, {{"e", {id2, {"e", "e"}}}}, {"e"}), Error);
  CHECK_THROWS_AS(WreathRecursion(2, {{"x", {Perm::identity(3), {"e", "e"}}}}, {"x"}),
                  Error);
  CHECK_THROWS_AS(WreathRecursion(2, {{"x", {id2, {"e", "e"}}}}, {"z"}), Error);
}

TEST_CASE("generator relations validated against the recursion oracle") {
  WreathRecursion g = builtin_group("grigorchuk");
  for (const char* gen : {"a", "b", "c", "d"}) {
    GroupWord square = GroupWord::parse(std::string(gen) + "^2");
    CHECK(equal_at_depth(g, square, GroupWord{}, 8));
    // cross-check through the independent recursion oracle
    oracles::Line line = oracles::word_leaf_perm(g, square, 8);
    oracles::Line id(line.size());
    std::iota(id.begin(), id.end(), 0);
    CHECK(line == id);
  }
  CHECK(equal_at_depth(g, GroupWord::parse("b*c*d"), GroupWord{}, 8));
  oracles::Line bcd = oracles::word_leaf_perm(g, GroupWord::parse("b*c*d"), 8);
  oracles::Line id(bcd.size());
  std::iota(id.begin(), id.end(), 0);
  CHECK(bcd == id);

  WreathRecursion gs = builtin_group("gupta-sidki-3");
  CHECK(equal_at_depth(gs, GroupWord::parse("a^3"), GroupWord{}, 6));
  CHECK(equal_at_depth(gs, GroupWord::parse("t^3"), GroupWord{}, 6));
  oracles::Line t3 = oracles::word_leaf_perm(gs, GroupWord::parse("t^3"), 6);
  oracles::Line id3(t3.size());
  std::iota(id3.begin(), id3.end(), 0);
  CHECK(t3 == id3);
}

TEST_CASE("portraits of words match the recursion oracle") {
  WreathRecursion g = builtin_group("grigorchuk");
  // b stabilizes level 1; the recursion sends (0,0,0) through the a-section
  Portrait pb = portrait_of_word(g, GroupWord::parse("b"), 3);
  CHECK(level_perm(pb, 1).is_identity());
  Vertex image = pb.apply(Vertex{{0, 0, 0}});
  auto oracle_image = oracles::state_image(g, "b", {0, 0, 0});
  CHECK(image.path == oracle_image);
  CHECK(image == Vertex{{0, 1, 0}});

  // a at level 1 is the transposition
  Portrait pa = portrait_of_word(g, GroupWord::parse("a"), 1);
  CHECK(level_perm(pa, 1) == Perm::from_cycles(2, {{0, 1}}));

  CHECK(portrait_of_word(g, GroupWord{}, 4).is_identity());
  CHECK_THROWS_AS(portrait_of_word(g, GroupWord::parse("nope"), 2), WordError);

  std::mt19937 rng(23);
  std::vector<std::string> names{"a", "b", "c", "d"};
  for (int k = 0; k < 20; ++k) {
    GroupWord w;
    for (int l = 0; l < 5; ++l)
      w.append(names[rng() % 4], (rng() & 1) ? 1 : -1);
    Perm via_portrait = level_perm(portrait_of_word(g, w, 4), 4);
    oracles::Line via_oracle = oracles::word_leaf_perm(g, w, 4);
    CHECK(via_portrait.images() == via_oracle);
  }
}

TEST_CASE("word evaluation is a homomorphism") {
  WreathRecursion g = builtin_group("gupta-sidki-3");
  std::mt19937 rng(29);
  std::vector<std::string> names{"a", "t"};
  for (int k = 0; k < 15; ++k) {
    GroupWord w1, w2;
    for (int l = 0; l < 4; ++l) {
      w1.append(names[rng() % 2], (rng() & 1) ? 1 : -1);
      w2.append(names[rng() % 2], (rng() & 1) ? 1 : -1);
    }
    Portrait lhs = portrait_of_word(g, w1.concat(w2), 3);
    Portrait rhs = compose(portrait_of_word(g, w1, 3), portrait_of_word(g, w2, 3));
    CHECK(lhs == rhs);
    CHECK(portrait_of_word(g, w1.inverse(), 3) == invert(portrait_of_word(g, w1, 3)));
  }
}

TEST_CASE("equal_at_depth") {
  WreathRecursion g = builtin_group("grigorchuk");
  GroupWord w = GroupWord::parse("a*b");
  CHECK(equal_at_depth(g, w, w, 5));
  CHECK_FALSE(equal_at_depth(g, GroupWord::parse("a"), GroupWord{}, 1));
}

TEST_CASE("finitary portrait generators") {
  WreathRecursion fin = builtin_group("full-binary-finitary(2)");
  CHECK(fin.generators().size() == 3);  // sw, sw_0, sw_1
  CHECK(fin.extra_portraits().count("sw_1") == 1);
  // a portrait generator extends by the identity below its depth
  Portrait deep = fin.generator_portrait("sw", 5);
  CHECK(deep.depth() == 5);
  CHECK(deep.apply(Vertex{{0, 1, 1, 0, 1}}) == Vertex{{1, 1, 1, 0, 1}});
}
