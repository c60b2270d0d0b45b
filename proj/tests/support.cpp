#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace testing {

  char const* const kAdding = R"(alphabet 2
a = (e, a) [1 0]
s = (e, e) [1 0]
b = (a, b)
c = (c, s)
bb = (bb, bb) [1 0]
g = (e, g^-1) [1 0]
)";

  char const* const kBounded = R"(alphabet 2
s = (e, e) [1 0]
b = (s, b)
c = (c, s)
a = (e, a) [1 0]
)";

  namespace {
    std::string trim(std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? "" : s.substr(b, e - b + 1);
    }

    PlainWord reduce(PlainWord const& w) {
      PlainWord out;
      for (auto const& a : w) {
        if (!out.empty() && out.back().first == a.first && out.back().second == -a.second) {
          out.pop_back();
        } else {
          out.push_back(a);
        }
      }
      return out;
    }

    std::string key(PlainWord const& w) {
      std::string k;
      for (auto const& [n, e] : w) {
        k += n + (e < 0 ? "-" : "+") + ",";
      }
      return k;
    }
  }  // namespace

  PlainWord plain_word(std::string const& text) {
    PlainWord   w;
    std::string t = trim(text);
    if (t == "e" || t.empty()) {
      return w;
    }
    std::stringstream ss(t);
    std::string       f;
    while (std::getline(ss, f, '*')) {
      f = trim(f);
      if (f == "e") {
        continue;
      }
      auto hat = f.find("^-1");
      if (hat != std::string::npos) {
        w.emplace_back(trim(f.substr(0, hat)), -1);
      } else {
        w.emplace_back(f, 1);
      }
    }
    return w;
  }

  PlainSystem plain_parse(std::string const& text) {
    PlainSystem       s;
    std::stringstream lines(text);
    std::string       line;
    while (std::getline(lines, line)) {
      if (auto h = line.find('#'); h != std::string::npos) {
        line.erase(h);
      }
      line = trim(line);
      if (line.empty()) {
        continue;
      }
      if (line.rfind("alphabet", 0) == 0) {
        s.degree = std::stoul(line.substr(8));
        continue;
      }
      auto        eq   = line.find('=');
      auto        open = line.find('(');
      auto        close = line.find(')');
      std::string name = trim(line.substr(0, eq));
      PlainDef    d;
      std::stringstream secs(line.substr(open + 1, close - open - 1));
      std::string       w;
      while (std::getline(secs, w, ',')) {
        d.sections.push_back(plain_word(w));
      }
      auto lb = line.find('[', close);
      if (lb == std::string::npos) {
        d.perm.resize(s.degree);
        std::iota(d.perm.begin(), d.perm.end(), 0u);
      } else {
        std::stringstream ps(line.substr(lb + 1, line.find(']', lb) - lb - 1));
        std::uint32_t     x;
        while (ps >> x) {
          d.perm.push_back(x);
        }
      }
      if (d.sections.size() != s.degree || d.perm.size() != s.degree) {
        throw std::runtime_error("plain_parse: bad line: " + line);
      }
      s.defs[name] = std::move(d);
    }
    return s;
  }

  PlainWord plain_inverse(PlainWord const& w) {
    PlainWord out(w.rbegin(), w.rend());
    for (auto& a : out) {
      a.second = -a.second;
    }
    return out;
  }

  PlainWord plain_concat(PlainWord a, PlainWord const& b) {
    a.insert(a.end(), b.begin(), b.end());
    return reduce(a);
  }

  namespace {
    // One letter through the whole word: image letter and section word.
    std::pair<std::uint32_t, PlainWord> step(PlainSystem const& s, PlainWord const& w,
                                             std::uint32_t x) {
      PlainWord sec;
      for (auto const& [name, e] : w) {
        auto const& d = s.defs.at(name);
        if (e > 0) {
          auto const& part = d.sections[x];
          sec.insert(sec.end(), part.begin(), part.end());
          x = d.perm[x];
        } else {
          std::uint32_t y = static_cast<std::uint32_t>(
              std::find(d.perm.begin(), d.perm.end(), x) - d.perm.begin());
          auto part = plain_inverse(d.sections[y]);
          sec.insert(sec.end(), part.begin(), part.end());
          x = y;
        }
      }
      return {x, reduce(sec)};
    }

    struct LevelMemo {
      PlainSystem const&                                                   s;
      std::map<std::pair<std::string, std::size_t>, std::vector<std::uint32_t>> memo;

      std::vector<std::uint32_t> const& level(PlainWord const& w, std::size_t n) {
        auto k = std::make_pair(key(w), n);
        if (auto it = memo.find(k); it != memo.end()) {
          return it->second;
        }
        std::vector<std::uint32_t> out;
        if (n == 0) {
          out = {0};
        } else {
          std::size_t block = 1;
          for (std::size_t i = 1; i < n; ++i) {
            block *= s.degree;
          }
          out.resize(block * s.degree);
          for (std::uint32_t x = 0; x < s.degree; ++x) {
            auto [y, sec] = step(s, w, x);
            auto const& sub = level(sec, n - 1);
            for (std::size_t r = 0; r < block; ++r) {
              out[x * block + r] = static_cast<std::uint32_t>(y * block + sub[r]);
            }
          }
        }
        return memo.emplace(k, std::move(out)).first->second;
      }
    };
  }  // namespace

  Letters plain_act(PlainSystem const& s, PlainWord const& w, Letters const& v) {
    Letters   out;
    PlainWord cur = reduce(w);
    for (auto x : v) {
      auto [y, sec] = step(s, cur, x);
      out.push_back(y);
      cur = std::move(sec);
    }
    return out;
  }

  std::vector<std::uint32_t> plain_level(PlainSystem const& s, PlainWord const& w,
                                         std::size_t n) {
    LevelMemo m{s, {}};
    return m.level(reduce(w), n);
  }

  bool plain_equal_to_depth(PlainSystem const& s, PlainWord const& g, PlainWord const& h,
                            std::size_t n) {
    return plain_level(s, g, n) == plain_level(s, h, n);
  }

  std::uint64_t plain_level_order(std::vector<std::uint32_t> const& level) {
    std::uint64_t     acc = 1;
    std::vector<bool> seen(level.size(), false);
    for (std::size_t i = 0; i < level.size(); ++i) {
      std::uint64_t len = 0;
      for (auto j = i; !seen[j]; j = level[j]) {
        seen[j] = true;
        ++len;
      }
      if (len > 0) {
        acc = std::lcm(acc, len);
      }
    }
    return acc;
  }

  namespace {
    // Code of the orbit containing vertex v at level k.
    std::string orbit_code(std::vector<std::vector<std::uint32_t>> const& lv, std::size_t d,
                           std::size_t k, std::uint32_t v) {
      std::vector<std::uint32_t> orb;
      for (auto x = v;;) {
        orb.push_back(x);
        x = lv[k][x];
        if (x == v) {
          break;
        }
      }
      std::string out = "(" + std::to_string(orb.size());
      if (k + 1 < lv.size()) {
        std::vector<std::string> kids;
        std::vector<bool>        done(lv[k + 1].size(), false);
        for (auto u : orb) {
          for (std::uint32_t x = 0; x < d; ++x) {
            auto c = static_cast<std::uint32_t>(u * d + x);
            if (done[c]) {
              continue;
            }
            for (auto y = c;;) {
              done[y] = true;
              y       = lv[k + 1][y];
              if (y == c) {
                break;
              }
            }
            kids.push_back(orbit_code(lv, d, k + 1, c));
          }
        }
        std::sort(kids.begin(), kids.end());
        for (auto const& c : kids) {
          out += c;
        }
      }
      return out + ")";
    }
  }  // namespace

  std::string plain_orbit_tree(PlainSystem const& s, PlainWord const& w, std::size_t n) {
    std::vector<std::vector<std::uint32_t>> lv;
    LevelMemo                               m{s, {}};
    for (std::size_t k = 0; k <= n; ++k) {
      lv.push_back(m.level(reduce(w), k));
    }
    return orbit_code(lv, s.degree, 0, 0);
  }

  bool plain_conjugates(PlainSystem const& s, PlainWord const& h, PlainWord const& a,
                        PlainWord const& b, std::size_t n) {
    auto lhs = plain_concat(plain_concat(plain_inverse(h), a), h);
    return plain_equal_to_depth(s, lhs, b, n);
  }

  PlainSystem plain_of(arboreal::FRSystem const& sys, std::string const& base_text) {
    std::string text = base_text.empty()
                           ? "alphabet " + std::to_string(sys.degree()) + "\n"
                           : base_text + "\n";
    return plain_parse(text + arboreal::print_definitions(sys, {}, "zz"));
  }

  arboreal::FRSystem system(std::string const& text) {
    return arboreal::parse_system(text);
  }

  arboreal::Element word(arboreal::FRSystem const& sys, std::string const& w) {
    return sys.parse_word(w);
  }

  bool same(arboreal::Element const& g, arboreal::Element const& h) {
    return arboreal::equal(g, h) == arboreal::Truth::True;
  }

}  // namespace testing
