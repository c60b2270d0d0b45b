#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "support.hpp"

namespace {
  struct Run {
    int         code;
    std::string out;
    std::string err;
  };

  std::string adding_file() {
    auto p = std::filesystem::temp_directory_path() / "arboreal_cli_adding.txt";
    std::ofstream(p) << testing::kAdding;
    return p.string();
  }

  Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "arboreal");
    std::ostringstream out, err;
    int                code = arboreal::cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  std::size_t count(std::string const& s, std::string const& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) {
      ++n;
    }
    return n;
  }
}  // namespace

TEST_CASE("order command") {
  auto f = adding_file();
  auto r = run({"order", f, "a"});
  CHECK(r.code == 0);
  CHECK(r.out == "infinite\n");
  r = run({"order", f, "c"});
  CHECK(r.code == 0);
  CHECK(r.out.find('2') != std::string::npos);
  CHECK(run({"order", f, "a", "--assert-finite"}).code == 1);
}

TEST_CASE("conjugate command") {
  auto f = adding_file();
  auto r = run({"conjugate", f, "a", "a^-1", "--group", "aut", "--emit-conjugator"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.rfind("conjugate\n", 0) == 0);
  auto text  = r.out.substr(std::string("conjugate\n").size());
  auto plain = testing::plain_parse(text);
  CHECK(testing::plain_conjugates(plain, testing::plain_word("h0"), testing::plain_word("a"),
                                  testing::plain_word("a^-1"), 10));

  CHECK(run({"conjugate", f, "a", "a^-1", "--group", "pol0"}).code == 1);
  CHECK(run({"conjugate", f, "a", "a^-1", "--group", "pol-1"}).code == 1);
  CHECK(run({"conjugate", f, "a", "s", "--group", "aut"}).code == 1);
  CHECK(run({"conjugate", f, "b", "b", "--group", "pol0"}).code == 3);
}

TEST_CASE("json reports are deterministic") {
  auto f  = adding_file();
  auto r1 = run({"--json", "classify", f, "b"});
  auto r2 = run({"--json", "classify", f, "b"});
  REQUIRE(r1.code == 0);
  auto j  = nlohmann::json::parse(r1.out);
  auto j2 = nlohmann::json::parse(r2.out);
  j.erase("timings");
  j2.erase("timings");
  CHECK(j == j2);
  CHECK(j["command"] == "classify");
  CHECK(j["inputs"]["digest"] == arboreal::cli::digest(testing::kAdding));
  CHECK(j["exit"] == 0);
}

TEST_CASE("dot output") {
  auto f = adding_file();
  auto r = run({"graph", "order", f, "c"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("digraph", 0) == 0);
  CHECK(count(r.out, "[label=\"") - count(r.out, "->") == 3);
  CHECK(count(r.out, "->") == 4);

  r = run({"graph", "conj", f, "e", "e"});
  REQUIRE(r.code == 0);
  CHECK(count(r.out, "  v") - count(r.out, "->") == 2);

  r = run({"graph", "conj", f, "a", "s"});
  CHECK(r.out.find("  v") == std::string::npos);
}

TEST_CASE("errors") {
  auto bad = std::filesystem::temp_directory_path() / "arboreal_cli_bad.txt";
  std::ofstream(bad) << "alphabet 2\nb = (a, b)\n";
  auto r = run({"order", bad.string(), "b"});
  CHECK(r.code == 3);
  CHECK(r.err.find(":2:") != std::string::npos);
  CHECK(run({"order", "/nonexistent/file", "a"}).code == 3);
  CHECK(run({"bogus"}).code == 3);
}

TEST_CASE("the installed binary behaves like run()") {
  char const* bin = std::getenv("ARBOREAL_BIN");
  if (bin == nullptr) {
    MESSAGE("ARBOREAL_BIN not set; skipping");
    return;
  }
  auto        f   = adding_file();
  std::string cmd = std::string(bin) + " order " + f + " c";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  REQUIRE(pipe);
  std::string            out;
  std::array<char, 256> buf{};
  while (auto n = std::fread(buf.data(), 1, buf.size(), pipe.get())) {
    out.append(buf.data(), n);
  }
  CHECK(out == run({"order", f, "c"}).out);
  std::string vcmd = std::string(bin) + " --version > /dev/null";
  CHECK(std::system(vcmd.c_str()) == 0);
}
