#include <doctest.h>

#include "support.hpp"

using namespace arboreal;

TEST_CASE("truncation matches the plain model") {
  auto sys   = testing::system(testing::kAdding);
  auto plain = testing::plain_parse(testing::kAdding);
  for (auto const* w : {"a", "b*c", "g^-1", "bb*a"}) {
    auto t = truncate(testing::word(sys, w), 7);
    REQUIRE(t.levels.size() == 8);
    for (std::size_t k = 0; k <= 7; ++k) {
      CHECK(t.levels[k] == testing::plain_level(plain, testing::plain_word(w), k));
    }
    CHECK(orbit_tree_code(testing::word(sys, w), 6)
          == testing::plain_orbit_tree(plain, testing::plain_word(w), 6));
  }
}

TEST_CASE("orbit tree codes") {
  auto sys = testing::system(testing::kAdding);
  CHECK(orbit_tree_code(sys.element("a"), 3) == "(1(2(4(8))))");
  CHECK(orbit_tree_code(Element::identity(sys.store()), 1) == "(1(1)(1))");
}

TEST_CASE("verification and orders") {
  auto sys = testing::system(testing::kAdding);
  auto a   = sys.element("a");
  auto e   = Element::identity(sys.store());
  CHECK_FALSE(verify_conjugator(e, a, inverse(a), 5));
  CHECK(verify_conjugator(e, a, a, 5));
  CHECK(truncated_order(a, 5) == 32);
  CHECK(truncated_order(sys.element("c"), 8) == 2);
  auto t = truncate(a, 3);
  CHECK(cycle_type(t, 3) == std::vector<std::size_t>{8});
  CHECK(cycle_type(truncate(sys.element("s"), 2), 2) == std::vector<std::size_t>{2, 2});
}

TEST_CASE("depth limits") {
  auto sys = testing::system(testing::kAdding);
  CHECK_THROWS_AS(truncate(sys.element("a"), 40), DepthTooLarge);
  CHECK_NOTHROW(check_depth(2, 14));
  CHECK_THROWS_AS(check_depth(2, 15), DepthTooLarge);
}

TEST_CASE("random bounded systems") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto s1 = random_bounded(seed, 4, 2);
    auto s2 = random_bounded(seed, 4, 2);
    CHECK(print_system(s1) == print_system(s2));
    CHECK(s1.size() <= 4);
    CHECK(polynomial_degree(s1.element(std::size_t{0})).bounded());
  }
}
