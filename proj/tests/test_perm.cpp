#include <doctest.h>

#include "arboreal/perm.hpp"

using arboreal::Perm;

TEST_CASE("product acts on the right") {
  Perm p({1, 2, 0});
  Perm q({0, 2, 1});
  auto pq = p * q;
  for (arboreal::Letter x = 0; x < 3; ++x) {
    CHECK(pq[x] == q[p[x]]);
  }
}

TEST_CASE("inverse, order, identity") {
  Perm p({1, 2, 0, 3});
  CHECK((p * p.inverse()).is_identity());
  CHECK(p.order() == 3);
  CHECK(Perm::identity(4).order() == 1);
  CHECK(Perm({1, 0, 3, 4, 2}).order() == 6);
}

TEST_CASE("cycles start at their least letter") {
  Perm p({2, 3, 0, 1, 4});
  auto c = p.cycles();
  REQUIRE(c.size() == 3);
  CHECK(c[0] == std::vector<arboreal::Letter>{0, 2});
  CHECK(c[1] == std::vector<arboreal::Letter>{1, 3});
  CHECK(c[2] == std::vector<arboreal::Letter>{4});
  CHECK(p.str() == "[2 3 0 1 4]");
}

TEST_CASE("enumeration and cycle construction") {
  auto all = arboreal::all_perms(3);
  CHECK(all.size() == 6);
  CHECK(all.front().is_identity());
  CHECK(std::is_sorted(all.begin(), all.end()));
  auto c = arboreal::cycle_perm(4, {3, 1});
  CHECK(c == Perm({0, 3, 2, 1}));
}
