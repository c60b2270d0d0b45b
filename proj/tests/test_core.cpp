#include <doctest.h>

#include "support.hpp"

using namespace arboreal;

TEST_CASE("identity node and hash-consing") {
  auto st = Store::make(2);
  CHECK(st->node_perm(kIdentity).is_identity());
  auto s1 = st->make_node(Perm({1, 0}), {kIdentity, kIdentity});
  auto s2 = st->make_node(Perm({1, 0}), {kIdentity, kIdentity});
  CHECK(s1 == s2);
  CHECK(st->make_node(Perm({0, 1}), {kIdentity, kIdentity}) == kIdentity);
  CHECK(st->multiply(s1, s1) == kIdentity);
}

TEST_CASE("adding machine sections and action") {
  auto sys   = testing::system(testing::kAdding);
  auto plain = testing::plain_parse(testing::kAdding);
  auto a     = sys.element("a");
  CHECK(root_perm(a) == Perm({1, 0}));
  CHECK(testing::same(section(a, 0), Element::identity(sys.store())));
  CHECK(testing::same(section(a, 1), a));
  for (std::uint32_t code = 0; code < 64; ++code) {
    std::vector<Letter> v;
    for (int i = 0; i < 6; ++i) {
      v.push_back((code >> i) & 1u);
    }
    for (auto const* w : {"a", "b", "c", "g", "a*b^-1", "bb*g"}) {
      CHECK(act(testing::word(sys, w), v)
            == testing::plain_act(plain, testing::plain_word(w), v));
    }
  }
}

TEST_CASE("section rules") {
  auto sys = testing::system(testing::kAdding);
  auto g   = sys.element("a");
  auto h   = sys.element("g");
  for (Letter x = 0; x < 2; ++x) {
    auto lhs = section(g * h, x);
    auto rhs = section(g, x) * section(h, root_perm(g)[x]);
    CHECK(testing::same(lhs, rhs));
    auto p3 = power_section(g, 3, x);
    CHECK(testing::same(p3, section(power(g, 3), x)));
  }
}

TEST_CASE("equality and resolution") {
  auto sys = testing::system(testing::kAdding);
  auto a   = sys.element("a");
  CHECK(equal(a * inverse(a), Element::identity(sys.store())) == Truth::True);
  CHECK(equal(power(sys.element("bb"), 2), Element::identity(sys.store())) == Truth::True);
  CHECK(equal(power(a, 2), a) == Truth::False);
  auto r = resolved(a * a * a);
  REQUIRE(r.has_value());
  CHECK(r->node().has_value());
  auto m = minimize(a);
  REQUIRE(m.has_value());
  CHECK(m->size() == 2);
}

TEST_CASE("orbits") {
  auto sys = testing::system(testing::kAdding);
  CHECK(orbit(sys.element("a"), 0).size() == 2);
  CHECK(orbit(sys.element("b"), 0).size() == 1);
}
