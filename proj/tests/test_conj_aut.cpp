#include <doctest.h>

#include <set>

#include "support.hpp"

using namespace arboreal;

namespace {
  // Level-10 tables of every basic conjugator, read through the plain model.
  std::set<std::vector<std::uint32_t>> conjugator_tables(std::vector<ConjugatorFR> const& hs) {
    std::set<std::vector<std::uint32_t>> out;
    for (auto const& h : hs) {
      auto plain = testing::plain_of(h.system, testing::kAdding);
      auto root  = h.system.store()->symbol(h.root).name;
      out.insert(testing::plain_level(plain, testing::plain_word(root), 10));
    }
    return out;
  }

  std::set<std::vector<std::uint32_t>> reference_tables(std::string const& defs,
                                                        std::vector<std::string> const& roots) {
    auto plain = testing::plain_parse(std::string(testing::kAdding) + defs);
    std::set<std::vector<std::uint32_t>> out;
    for (auto const& r : roots) {
      out.insert(testing::plain_level(plain, testing::plain_word(r), 10));
    }
    return out;
  }

  void check_verified(std::vector<ConjugatorFR> const& hs, Element const& a, Element const& b) {
    for (auto const& h : hs) {
      CHECK(verify_conjugator(h.element(), a, b, 10));
      if (auto f = expand_to_finite_state(h, 2000)) {
        CHECK(testing::same(inverse(*f) * a * *f, b));
      }
    }
  }
}  // namespace

TEST_CASE("conjugating permutations") {
  auto cs = perm_conjugators(Perm({1, 0, 2}), Perm({0, 2, 1}));
  REQUIRE(cs.size() == 2);
  for (auto const& p : cs) {
    CHECK(Perm({1, 0, 2}) * p == p * Perm({0, 2, 1}));
  }
  CHECK(perm_conjugators(Perm({1, 0, 2}), Perm({1, 2, 0})).empty());
  CHECK_THROWS_AS(perm_conjugators(Perm::identity(9), Perm::identity(9)), DegreeTooLarge);
}

TEST_CASE("conjugator graph of (e, e)") {
  auto sys = testing::system(testing::kAdding);
  auto e   = Element::identity(sys.store());
  auto g   = conj_graph(e, e);
  CHECK(g.vertices.size() == 2);
  CHECK(g.roots.size() == 2);
  auto hs = all_basic_conjugators(g);
  CHECK(hs.size() == 2);
  CHECK(conjugator_tables(hs)
        == reference_tables("r1 = (r1, r1)\nr2 = (r2, r2) [1 0]\n", {"r1", "r2"}));
  check_verified(hs, e, e);
}

TEST_CASE("conjugator graph of (a, a^-1)") {
  auto sys = testing::system(testing::kAdding);
  auto a   = sys.element("a");
  auto ai  = inverse(a);
  auto g   = conj_graph(a, ai);
  CHECK(g.vertices.size() == 2);
  auto hs = all_basic_conjugators(g);
  CHECK(hs.size() == 2);
  CHECK(conjugator_tables(hs)
        == reference_tables("r1 = (r1, r1*a^-1)\nr2 = (r2, r2) [1 0]\n", {"r1", "r2"}));
  check_verified(hs, a, ai);
  CHECK(conjugate_in_aut(a, ai).kind == ConjDecision::Kind::Conjugate);
}

TEST_CASE("conjugator graph of (a, b) with b = (e, b^-1)s") {
  auto sys = testing::system(testing::kAdding);
  auto a   = sys.element("a");
  auto b   = sys.element("g");
  auto g   = conj_graph(a, b);
  REQUIRE(g.vertices.size() == 4);
  std::set<std::size_t> d_sides;
  for (auto const& v : g.vertices) {
    CHECK(testing::same(g.a_side[v.c], a));
    d_sides.insert(v.d);
  }
  REQUIRE(d_sides.size() == 2);
  bool saw_b = false, saw_bi = false;
  for (auto d : d_sides) {
    saw_b  = saw_b || testing::same(g.b_side[d], b);
    saw_bi = saw_bi || testing::same(g.b_side[d], inverse(b));
  }
  CHECK(saw_b);
  CHECK(saw_bi);

  auto hs = all_basic_conjugators(g);
  CHECK(hs.size() == 4);
  std::string const refs =
      "h1 = (g1, g1)\ng1 = (h1, h1*g)\n"
      "h2 = (g2, g2)\ng2 = (h2, h2) [1 0]\n"
      "h3 = (g3, a*g3) [1 0]\ng3 = (h3, h3*g)\n"
      "h4 = (g4, a*g4) [1 0]\ng4 = (h4, h4) [1 0]\n";
  CHECK(conjugator_tables(hs) == reference_tables(refs, {"h1", "h2", "h3", "h4"}));
  check_verified(hs, a, b);
}

TEST_CASE("non-conjugate pairs have an empty graph") {
  auto sys = testing::system(testing::kAdding);
  auto d   = conjugate_in_aut(sys.element("a"), sys.element("s"));
  CHECK(d.kind == ConjDecision::Kind::NotConjugate);
  CHECK(d.graph.vertices.empty());
  CHECK(conjugate_in_aut(sys.element("b"), sys.element("c")).kind
        == ConjDecision::Kind::NotConjugate);

  auto ex = testing::system(testing::kBounded);
  auto d2 = conjugate_in_aut(ex.element("b"), ex.element("c"));
  REQUIRE(d2.kind == ConjDecision::Kind::Conjugate);
  auto h = basic_conjugator(d2.graph, Policy::Greatest);
  CHECK(verify_conjugator(h.element(), ex.element("b"), ex.element("c"), 10));
}

TEST_CASE("simultaneous conjugacy") {
  auto sys = testing::system(testing::kAdding);
  auto a   = sys.element("a");
  auto ai  = inverse(a);
  auto no  = conjugate_in_aut_simultaneous({a, a}, {ai, a});
  CHECK(no.kind == SimultaneousDecision::Kind::NotConjugate);

  auto s   = sys.element("s");
  auto yes = conjugate_in_aut_simultaneous({a, s}, {ai, s});
  REQUIRE(yes.kind == SimultaneousDecision::Kind::Conjugate);
  REQUIRE(yes.conjugator.has_value());
  auto h = yes.conjugator->element();
  CHECK(verify_conjugator(h, a, ai, 10));
  CHECK(verify_conjugator(h, s, s, 10));
}

TEST_CASE("canonical representatives") {
  auto sys = testing::system(testing::kAdding);
  auto a   = sys.element("a");
  auto h   = sys.element("b") * sys.element("s");
  for (std::size_t n : {1u, 3u, 6u}) {
    auto ra = canonical_representative(a, n);
    CHECK(ra == canonical_representative(inverse(a), n));
    CHECK(ra == canonical_representative(inverse(h) * a * h, n));
    CHECK(ra == canonical_representative(sys.element("g"), n));
    CHECK(orbit_tree_code(ra) == orbit_tree_code(a, n));
  }
  CHECK(canonical_representative(a, 4) != canonical_representative(sys.element("c"), 4));
  CHECK(canonical_representative(sys.element("b"), 5)
        == canonical_representative(inverse(h) * sys.element("b") * h, 5));
}
