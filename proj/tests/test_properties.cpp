#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "support.hpp"

using namespace arboreal;

namespace {
  constexpr std::uint64_t kSeeds = 200;

  struct Sample {
    FRSystem             sys;
    testing::PlainSystem plain;
    std::string          text;
  };

  Sample sample(std::uint64_t seed) {
    auto sys  = random_bounded(seed, 4, 2);
    auto text = print_system(sys);
    return {sys, testing::plain_parse(text), text};
  }

  std::string name_of(FRSystem const& s, std::size_t i) {
    return s.names()[i];
  }
}  // namespace

TEST_CASE("group laws and section rules") {
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    CAPTURE(seed);
    auto        s = sample(seed);
    auto const  n = s.sys.size();
    std::string g = name_of(s.sys, 0);
    std::string h = name_of(s.sys, seed % n);
    std::string k = name_of(s.sys, n - 1);
    auto        G = s.sys.element(g), H = s.sys.element(h), K = s.sys.element(k);

    auto gh = testing::plain_concat(testing::plain_word(g), testing::plain_word(h));
    CHECK(truncate(G * H, 8).levels.back() == testing::plain_level(s.plain, gh, 8));
    CHECK(testing::same((G * H) * K, G * (H * K)));
    CHECK(testing::same(G * inverse(G), Element::identity(s.sys.store())));
    CHECK(truncate(inverse(G), 8).levels.back()
          == testing::plain_level(s.plain, testing::plain_inverse(testing::plain_word(g)), 8));
    for (Letter x = 0; x < 2; ++x) {
      CHECK(testing::same(section(G * H, x), section(G, x) * section(H, root_perm(G)[x])));
      CHECK(testing::same(power_section(G, 3, x), section(power(G, 3), x)));
    }
  }
}

TEST_CASE("Aut verdicts against orbit tree codes; conjugators verify") {
  std::size_t conj = 0, neg = 0, neg_same_code = 0;
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    CAPTURE(seed);
    auto s = sample(seed);
    auto a = s.sys.element(std::size_t{0});
    std::vector<Element> others;
    for (std::size_t j = 0; j < s.sys.size(); ++j) {
      others.push_back(s.sys.element(j));
    }
    auto h = s.sys.element(s.sys.size() - 1);
    others.push_back(inverse(h) * a * h);
    others.push_back(inverse(a));
    for (auto const& b : others) {
      auto d = conjugate_in_aut(a, b);
      REQUIRE(d.kind != ConjDecision::Kind::Unknown);
      bool same_code = orbit_tree_code(a, 8) == orbit_tree_code(b, 8);
      if (d.kind == ConjDecision::Kind::Conjugate) {
        ++conj;
        CHECK(same_code);
        CHECK(verify_conjugator(basic_conjugator(d.graph).element(), a, b, 10));
      } else {
        ++neg;
        neg_same_code += same_code ? 1 : 0;
      }

      for (auto const* group : {"pol-1", "pol0"}) {
        CAPTURE(group);
        auto r = std::string(group) == "pol-1" ? conjugate_in_pol_minus1(a, b)
                                               : conjugate_in_pol0_cyclic(a, b);
        if (r.kind == RestrictedDecision::Kind::Conjugate) {
          REQUIRE(r.conjugator.has_value());
          CHECK(testing::same(inverse(*r.conjugator) * a * *r.conjugator, b));
          CHECK(d.kind == ConjDecision::Kind::Conjugate);
        }
      }
    }
  }
  MESSAGE("aut conjugate " << conj << ", not conjugate " << neg << " (orbit codes agree on "
                           << neg_same_code << ")");
}

TEST_CASE("finite orders match truncated orders") {
  std::size_t finite = 0;
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    CAPTURE(seed);
    auto s = sample(seed);
    for (std::size_t j = 0; j < s.sys.size(); ++j) {
      auto g = s.sys.element(j);
      auto r = order(g);
      REQUIRE(r.kind != OrderResult::Kind::Unknown);
      if (r.kind == OrderResult::Kind::Finite) {
        ++finite;
        CHECK(truncated_order(g, 10) == r.value);
        CHECK(testing::plain_level_order(
                  testing::plain_level(s.plain, testing::plain_word(name_of(s.sys, j)), 10))
              == r.value);
      }
    }
  }
  MESSAGE("finite orders checked: " << finite);
}

TEST_CASE("self-conjugacy in every group") {
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    CAPTURE(seed);
    auto s = sample(seed);
    auto a = s.sys.element(std::size_t{0});
    auto d = conjugate_in_aut(a, a);
    REQUIRE(d.kind == ConjDecision::Kind::Conjugate);
    CHECK(verify_conjugator(basic_conjugator(d.graph).element(), a, a, 10));
    for (auto const& r : {conjugate_in_pol_minus1(a, a), conjugate_in_pol0_cyclic(a, a),
                          conjugate_in_pol_inf(a, a)}) {
      REQUIRE(r.kind == RestrictedDecision::Kind::Conjugate);
      CHECK(verify_conjugator(*r.conjugator, a, a, 10));
    }
    auto sim = conjugate_in_aut_simultaneous({a}, {a});
    REQUIRE(sim.kind == SimultaneousDecision::Kind::Conjugate);
    CHECK(verify_conjugator(sim.conjugator->element(), a, a, 10));
  }
}

TEST_CASE("a and a^-1 are conjugate by a finite-state automorphism") {
  auto dir = std::filesystem::temp_directory_path() / "arboreal_props";
  std::filesystem::create_directories(dir);
  std::size_t finite_state = 0;
  for (std::uint64_t seed = 1000; seed < 1050; ++seed) {
    CAPTURE(seed);
    auto s    = sample(seed);
    auto a    = name_of(s.sys, 0);
    auto file = dir / ("s" + std::to_string(seed) + ".txt");
    std::ofstream(file) << s.text;
    std::ostringstream out, err;
    int code = cli::run({"arboreal", "--json", "conjugate", file.string(), a, a + "^-1",
                         "--group", "fsg", "--emit-conjugator"},
                        out, err);
    CAPTURE(err.str());
    REQUIRE(code == 0);
    auto rep = nlohmann::json::parse(out.str());
    CHECK(rep["verdict"] == "conjugate");
    auto plain = testing::plain_parse(s.text + rep["witness"]["system"].get<std::string>());
    auto h     = testing::plain_word(rep["witness"]["root"].get<std::string>());
    CHECK(testing::plain_conjugates(plain, h, testing::plain_word(a),
                                    testing::plain_inverse(testing::plain_word(a)), 10));
    finite_state += rep["witness"]["finite_state"].get<bool>() ? 1 : 0;
  }
  MESSAGE("finite-state conjugators: " << finite_state << "/50");
  CHECK(finite_state == 50);
}
