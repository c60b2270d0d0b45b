#include <doctest.h>

#include <set>
#include <tuple>

#include "support.hpp"

using namespace arboreal;

TEST_CASE("order goldens") {
  auto sys = testing::system(testing::kAdding);

  auto oa = order(sys.element("a"));
  CHECK(oa.kind == OrderResult::Kind::Infinite);

  auto ob = order(sys.element("b"));
  REQUIRE(ob.kind == OrderResult::Kind::Infinite);
  REQUIRE(ob.cycle.size() >= 2);
  CHECK(ob.cycle.front() == ob.cycle.back());
  CHECK(std::find_if(ob.labels.begin(), ob.labels.end(), [](auto l) { return l >= 2; })
        != ob.labels.end());

  auto oc = order(sys.element("c"));
  REQUIRE(oc.kind == OrderResult::Kind::Finite);
  CHECK(oc.value == 2);

  auto oe = order(Element::identity(sys.store()));
  REQUIRE(oe.kind == OrderResult::Kind::Finite);
  CHECK(oe.value == 1);

  auto obb = order(sys.element("bb"));
  REQUIRE(obb.kind == OrderResult::Kind::Finite);
  CHECK(obb.value == 2);
}

TEST_CASE("order graph of c") {
  auto sys = testing::system(testing::kAdding);
  auto g   = order_graph(sys.element("c"));
  REQUIRE(g.has_value());
  CHECK(g->elements.size() == 3);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> distinct;
  for (auto const& e : g->edges) {
    distinct.emplace(e.source, e.label, e.target);
  }
  CHECK(distinct.size() == 4);
}

TEST_CASE("finite orders agree with the plain level orders") {
  auto plain = testing::plain_parse(testing::kAdding);
  for (auto const* w : {"c", "s", "bb", "s*bb"}) {
    auto sys = testing::system(testing::kAdding);
    auto r   = order(testing::word(sys, w));
    REQUIRE(r.kind == OrderResult::Kind::Finite);
    CHECK(testing::plain_level_order(testing::plain_level(plain, testing::plain_word(w), 8))
          == r.value);
  }
}
