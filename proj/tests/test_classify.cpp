#include <doctest.h>

#include "support.hpp"

using namespace arboreal;

namespace {
  bool same_set(std::vector<Element> const& got, std::vector<Element> const& want) {
    if (got.size() != want.size()) {
      return false;
    }
    for (auto const& w : want) {
      bool hit = false;
      for (auto const& g : got) {
        hit = hit || equal(g, w) == Truth::True;
      }
      if (!hit) {
        return false;
      }
    }
    return true;
  }

  Element e_of(FRSystem const& s) {
    return Element::identity(s.store());
  }
}  // namespace

TEST_CASE("orbit-signalizer goldens") {
  auto sys = testing::system(testing::kAdding);
  auto a   = sys.element("a");
  auto b   = sys.element("b");
  auto bb  = sys.element("bb");

  auto os_a = orbit_signalizer(a);
  CHECK(os_a.complete());
  CHECK(same_set(os_a.elements, {a}));

  auto os_b = orbit_signalizer(b);
  CHECK(os_b.complete());
  CHECK(same_set(os_b.elements, {a, b}));

  auto os_bb = orbit_signalizer(bb);
  CHECK(os_bb.complete());
  CHECK(same_set(os_bb.elements, {e_of(sys), bb}));

  auto wild = testing::system("alphabet 2\nb = (a, c) [1 0]\nc = (a, b)\na = (e, a) [1 0]\n");
  auto os_w = orbit_signalizer(wild.element("b"), 200);
  CHECK_FALSE(os_w.complete());
}

TEST_CASE("activity classification goldens") {
  auto sys = testing::system(testing::kAdding);
  CHECK(polynomial_degree(sys.element("a")).bounded());

  auto pb = polynomial_degree(sys.element("b"));
  CHECK(pb.kind == ActivityClass::Kind::Polynomial);
  CHECK(pb.value == 1);

  CHECK(polynomial_degree(sys.element("bb")).kind == ActivityClass::Kind::Exponential);

  auto ps = polynomial_degree(sys.element("s"));
  CHECK(ps.kind == ActivityClass::Kind::Finitary);
  CHECK(ps.value == 1);
  CHECK(finitary_depth(sys.element("s")) == std::optional<std::size_t>(1));
  CHECK_FALSE(finitary_depth(sys.element("a")).has_value());
}

TEST_CASE("activity counts against the plain model") {
  auto sys   = testing::system(testing::kAdding);
  auto plain = testing::plain_parse(testing::kAdding);
  for (auto const* name : {"a", "b", "bb", "s", "c"}) {
    auto th = activity(sys.element(name), 5);
    for (std::size_t k = 0; k <= 5; ++k) {
      // States at level k with nontrivial root action, counted plainly.
      auto lv   = testing::plain_level(plain, testing::plain_word(name), k + 1);
      auto prev = testing::plain_level(plain, testing::plain_word(name), k);
      std::size_t active = 0;
      for (std::size_t v = 0; v < prev.size(); ++v) {
        active += (lv[2 * v] % 2) != 0 ? 1 : 0;
      }
      CHECK(th[k] == active);
    }
  }
}

TEST_CASE("circuit words") {
  auto sys = testing::system(testing::kAdding);
  CHECK(circuit_word(sys.element("a")) == std::optional<std::vector<Letter>>(std::vector<Letter>{1}));
  CHECK(circuit_word(sys.element("c")) == std::optional<std::vector<Letter>>(std::vector<Letter>{0}));
  CHECK_FALSE(circuit_word(sys.element("s")).has_value());
}

TEST_CASE("nucleus goldens") {
  auto sys = testing::system("alphabet 2\nb = (b, b^-1*b^-1) [1 0]\n");
  auto b   = sys.element("b");
  auto rep = nucleus(b);
  REQUIRE(rep.kind == NucleusReport::Kind::Contracting);
  std::vector<Element> want{e_of(sys)};
  for (int i = 1; i <= 3; ++i) {
    want.push_back(power(b, i));
    want.push_back(power(b, -i));
  }
  CHECK(rep.nucleus.size() == 7);
  CHECK(same_set(rep.nucleus, want));

  auto add = testing::system(testing::kAdding);
  auto na  = nucleus(add.element("a"));
  REQUIRE(na.kind == NucleusReport::Kind::Contracting);
  CHECK(na.nucleus.size() == 3);
  CHECK(nucleus(add.element("bb")).nucleus.size() == 2);
  CHECK(nucleus(add.element("b")).kind == NucleusReport::Kind::Unknown);
}
