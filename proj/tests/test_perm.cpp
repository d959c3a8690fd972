#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "treid/perm.hpp"

using namespace treid;

TEST_CASE("identity and one-line construction") {
  Perm id = Perm::identity(4);
  CHECK(id.is_identity());
  CHECK(id.degree() == 4);
  CHECK(id(2) == 2);

  Perm p(std::vector<Point>{1, 0, 2});
  CHECK(p(0) == 1);
  CHECK(p(2) == 2);
  CHECK_FALSE(p.is_identity());

  CHECK_THROWS_AS(Perm(std::vector<Point>{0, 0, 1}), Error);
  CHECK_THROWS_AS(Perm(std::vector<Point>{0, 3}), Error);
}

TEST_CASE("from_cycles") {
  Perm p = Perm::from_cycles(5, {{1, 2}, {3, 4}});
  CHECK(p(1) == 2);
  CHECK(p(2) == 1);
  CHECK(p(3) == 4);
  CHECK(p(0) == 0);
  Perm c = Perm::from_cycles(3, {{0, 1, 2}});
  CHECK(c(0) == 1);
  CHECK(c(2) == 0);
}

TEST_CASE("product applies the right factor first") {
  Perm a = Perm::from_cycles(3, {{0, 1}});
  Perm b = Perm::from_cycles(3, {{1, 2}});
  // (a*b)(1) = a(b(1)) = a(2) = 2
  CHECK((a * b)(1) == 2);
  CHECK((b * a)(1) == 0);
  CHECK(a * a == Perm::identity(3));
  CHECK_THROWS_AS(a * Perm::identity(4), Error);
}

TEST_CASE("inverse") {
  std::mt19937 rng(11);
  for (int k = 0; k < 20; ++k) {
    std::vector<Point> line(8);
    std::iota(line.begin(), line.end(), 0);
    std::shuffle(line.begin(), line.end(), rng);
    Perm p{line};
    CHECK(p * p.inverse() == Perm::identity(8));
    CHECK(p.inverse() * p == Perm::identity(8));
  }
}

TEST_CASE("cycle type includes fixed points") {
  CHECK(cycle_type(Perm::identity(4)) == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(cycle_type(Perm::from_cycles(2, {{0, 1}})) == std::vector<std::size_t>{2});
  CHECK(cycle_type(Perm::from_cycles(5, {{0, 1, 2}})) ==
        std::vector<std::size_t>{1, 1, 3});
}

TEST_CASE("sign") {
  CHECK(sign(Perm::identity(4)) == +1);
  CHECK(sign(Perm::from_cycles(2, {{0, 1}})) == -1);
  CHECK(sign(Perm::from_cycles(5, {{0, 1, 2, 3}})) == -1);
  CHECK(sign(Perm::from_cycles(5, {{0, 1}, {2, 3}})) == +1);
}

TEST_CASE("sign is a homomorphism and conjugation-invariant") {
  std::mt19937 rng(17);
  auto random_perm = [&rng](std::size_t degree) {
    std::vector<Point> line(degree);
    std::iota(line.begin(), line.end(), 0);
    std::shuffle(line.begin(), line.end(), rng);
    return Perm{line};
  };
  for (int k = 0; k < 50; ++k) {
    Perm x = random_perm(7), h = random_perm(7);
    CHECK(sign(x * h) == sign(x) * sign(h));
    CHECK(sign(h.inverse() * x * h) == sign(x));
    CHECK(cycle_type(h.inverse() * x * h) == cycle_type(x));
    CHECK(sign(h.inverse() * x * h * x.inverse()) == +1);
  }
}

TEST_CASE("hash agrees with equality") {
  PermHash hash;
  Perm a = Perm::from_cycles(4, {{0, 1}});
  Perm b = Perm::from_cycles(4, {{0, 1}});
  CHECK(a == b);
  CHECK(hash(a) == hash(b));
}
