#include <doctest.h>

#include "support.hpp"

using namespace arboreal;

namespace {
  ParseError parse_error(std::string const& text) {
    try {
      parse_system(text);
    } catch (ParseError const& e) {
      return e;
    }
    FAIL("expected a parse error");
    return ParseError("", 0, 0);
  }
}  // namespace

TEST_CASE("adding machine parses") {
  auto sys = parse_system("alphabet 2\na = (e, a) [1 0]\n");
  REQUIRE(sys.size() == 1);
  CHECK(sys.names() == std::vector<std::string>{"a"});
  CHECK(root_perm(sys.element("a")) == Perm({1, 0}));
}

TEST_CASE("comments, blank lines, identity default") {
  auto sys = parse_system("# header\nalphabet 3\n\nt = (e, t, t^-1*t)  # trailing\n");
  REQUIRE(sys.size() == 1);
  CHECK(root_perm(sys.element("t")).is_identity());
  CHECK(sys.degree() == 3);
}

TEST_CASE("forward references and inverses") {
  auto sys = parse_system("alphabet 2\nb = (a, b)\na = (e, a) [1 0]\n");
  auto w   = sys.parse_word("a^-1*b*a");
  CHECK(root_perm(w).is_identity());
}

TEST_CASE("errors carry line and column") {
  auto e = parse_error("alphabet 2\nb = (a, b) [0 1]\n");
  CHECK(e.line() == 2);
  CHECK(std::string(e.what()).find('a') != std::string::npos);

  e = parse_error("alphabet 2\nb = (b, b) [0 0]\n");
  CHECK(e.line() == 2);

  e = parse_error("alphabet 2\nb = (b) [1 0]\n");
  CHECK(e.line() == 2);

  e = parse_error("alphabet 1\n");
  CHECK(e.line() == 1);

  e = parse_error("alphabet 2\ne = (e, e)\n");
  CHECK(e.line() == 2);

  e = parse_error("alphabet 2\nx = (e, e) [1 0]\nx = (e, e)\n");
  CHECK(e.line() == 3);

  e = parse_error("b = (b, b)\n");
  CHECK(e.line() == 1);

  e = parse_error("alphabet 2\nb = (b, b^2)\n");
  CHECK(e.line() == 2);
  CHECK(e.column() > 1);
}

TEST_CASE("printing round-trips") {
  auto sys     = testing::system(testing::kAdding);
  auto printed = print_system(sys);
  auto again   = parse_system(printed);
  REQUIRE(again.size() == sys.size());
  auto plain_a = testing::plain_parse(testing::kAdding);
  auto plain_b = testing::plain_parse(printed);
  for (auto const& n : sys.names()) {
    auto w = testing::plain_word(n);
    CHECK(testing::plain_level(plain_a, w, 6) == testing::plain_level(plain_b, w, 6));
  }
}
