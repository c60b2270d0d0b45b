#include "arboreal/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace arboreal {

  void check_depth(std::size_t degree, std::size_t n, std::size_t max_level) {
    std::size_t size = 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (size > max_level / degree) {
        throw DepthTooLarge("level " + std::to_string(n) + " exceeds "
                            + std::to_string(max_level) + " vertices");
      }
      size *= degree;
    }
  }

  namespace {
    std::string key_of(Element const& g) {
      if (auto n = g.node()) {
        return "n" + std::to_string(*n);
      }
      std::string s = "w";
      for (auto const& a : g.word()) {
        s += (a.symbol ? (a.inverse ? "S-" : "S") : "N") + std::to_string(a.id) + ",";
      }
      return s;
    }

    class Truncator {
     public:
      explicit Truncator(std::size_t d) : d_(d) {}

      std::vector<std::uint32_t> const& level(Element const& g, std::size_t k) {
        auto key = std::make_pair(key_of(g), k);
        if (auto it = memo_.find(key); it != memo_.end()) {
          return it->second;
        }
        std::vector<std::uint32_t> out;
        if (k == 0) {
          out = {0};
        } else {
          std::size_t block = 1;
          for (std::size_t j = 1; j < k; ++j) {
            block *= d_;
          }
          out.resize(block * d_);
          Perm p = root_perm(g);
          for (Letter x = 0; x < d_; ++x) {
            auto const& sub = level(section(g, x), k - 1);
            for (std::size_t w = 0; w < block; ++w) {
              out[x * block + w] = static_cast<std::uint32_t>(p[x] * block + sub[w]);
            }
          }
        }
        return memo_.emplace(key, std::move(out)).first->second;
      }

     private:
      std::size_t                                                          d_;
      std::map<std::pair<std::string, std::size_t>, std::vector<std::uint32_t>> memo_;
    };
  }  // namespace

  TruncatedAut truncate(Element const& g, std::size_t n, std::size_t max_level) {
    std::size_t const d = g.degree();
    check_depth(d, n, max_level);
    Truncator    tr(d);
    TruncatedAut t{d, n, {}};
    auto const&  top = tr.level(g, n);
    std::size_t  div = top.size();
    for (std::size_t k = 0; k <= n; ++k) {
      std::size_t               size = top.size() / div;
      std::vector<std::uint32_t> lvl(size);
      for (std::size_t w = 0; w < size; ++w) {
        lvl[w] = static_cast<std::uint32_t>(top[w * div] / div);
      }
      t.levels.push_back(std::move(lvl));
      div /= std::max<std::size_t>(d, 1);
      if (div == 0) {
        div = 1;
      }
    }
    return t;
  }

  namespace {
    std::vector<std::uint32_t> orbit_ids(std::vector<std::uint32_t> const& perm,
                                         std::size_t&                      count) {
      std::vector<std::uint32_t> id(perm.size(), UINT32_MAX);
      count = 0;
      for (std::size_t w = 0; w < perm.size(); ++w) {
        if (id[w] != UINT32_MAX) {
          continue;
        }
        for (auto v = static_cast<std::uint32_t>(w); id[v] == UINT32_MAX; v = perm[v]) {
          id[v] = static_cast<std::uint32_t>(count);
        }
        ++count;
      }
      return id;
    }
  }  // namespace

  std::string orbit_tree_code(TruncatedAut const& t) {
    std::size_t const                       n = t.depth;
    std::vector<std::vector<std::uint32_t>> ids(n + 1);
    std::vector<std::size_t>                counts(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      ids[k] = orbit_ids(t.levels[k], counts[k]);
    }
    std::vector<std::string> below;
    for (std::size_t k = n + 1; k-- > 0;) {
      std::vector<std::size_t>              size(counts[k], 0);
      std::vector<std::vector<std::string>> kids(counts[k]);
      for (std::size_t w = 0; w < ids[k].size(); ++w) {
        ++size[ids[k][w]];
      }
      if (k < n) {
        std::vector<bool> taken(counts[k + 1], false);
        for (std::size_t w = 0; w < ids[k + 1].size(); ++w) {
          auto child = ids[k + 1][w];
          if (!taken[child]) {
            taken[child] = true;
            kids[ids[k][w / t.degree]].push_back(below[child]);
          }
        }
      }
      std::vector<std::string> codes(counts[k]);
      for (std::size_t o = 0; o < counts[k]; ++o) {
        std::sort(kids[o].begin(), kids[o].end());
        std::string s = "(" + std::to_string(size[o]);
        for (auto const& c : kids[o]) {
          s += c;
        }
        codes[o] = s + ")";
      }
      below = std::move(codes);
    }
    return below.at(0);
  }

  std::string orbit_tree_code(Element const& g, std::size_t n, std::size_t max_level) {
    return orbit_tree_code(truncate(g, n, max_level));
  }

  bool verify_conjugator(Element const& h, Element const& a, Element const& b, std::size_t n) {
    return truncate(inverse(h) * a * h, n) == truncate(b, n);
  }

  std::vector<std::size_t> cycle_type(TruncatedAut const& t, std::size_t level) {
    auto const&              p = t.levels.at(level);
    std::vector<bool>        seen(p.size(), false);
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < p.size(); ++w) {
      if (seen[w]) {
        continue;
      }
      std::size_t len = 0;
      for (auto v = w; !seen[v]; v = p[v]) {
        seen[v] = true;
        ++len;
      }
      out.push_back(len);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::uint64_t truncated_order(TruncatedAut const& t, std::size_t level) {
    std::uint64_t acc = 1;
    for (auto len : cycle_type(t, level)) {
      acc = std::lcm(acc, static_cast<std::uint64_t>(len));
    }
    return acc;
  }

  std::uint64_t truncated_order(Element const& g, std::size_t n) {
    return truncated_order(truncate(g, n), n);
  }

  FRSystem random_bounded(std::uint64_t seed, std::size_t state_budget, std::size_t degree) {
    if (state_budget == 0) {
      throw std::invalid_argument("state budget must be positive");
    }
    std::mt19937_64 rng(seed);
    auto            pick = [&](std::size_t n) {
      return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    };
    auto       store = Store::make(degree);
    std::size_t const n = 1 + pick(state_budget);

    enum class Kind { Finitary, Circuit, Top };
    std::vector<Kind>     kind(n);
    std::vector<SymbolId> ids(n);
    for (std::size_t i = 0; i < n; ++i) {
      ids[i] = store->declare_symbol("s" + std::to_string(i));
    }
    auto random_perm = [&]() {
      auto all = all_perms(degree);
      return all[pick(all.size())];
    };
    // A section pointing at e or at an already generated state of an
    // allowed kind.
    auto lower = [&](std::size_t from, bool any) -> Word {
      std::vector<std::size_t> opts;
      for (std::size_t j = from; j < n; ++j) {
        if (any || kind[j] == Kind::Finitary) {
          opts.push_back(j);
        }
      }
      std::size_t r = pick(opts.size() + 1);
      if (r == opts.size()) {
        return {};
      }
      return {Atom::sym(ids[opts[r]])};
    };

    std::size_t i = n;
    while (i > 0) {
      std::size_t roll = pick(10);
      if (roll < 3 && i >= 1) {
        std::size_t len = 1 + pick(std::min<std::size_t>(i, 2));
        std::size_t lo  = i - len;
        for (std::size_t j = lo; j < i; ++j) {
          kind[j] = Kind::Circuit;
        }
        for (std::size_t j = lo; j < i; ++j) {
          Letter            on = static_cast<Letter>(pick(degree));
          std::vector<Word> sections(degree);
          for (Letter x = 0; x < degree; ++x) {
            sections[x] = x == on ? Word{Atom::sym(ids[j + 1 < i ? j + 1 : lo])} : lower(i, false);
          }
          store->define_symbol(ids[j], random_perm(), std::move(sections));
        }
        i = lo;
        continue;
      }
      --i;
      kind[i] = roll < 7 ? Kind::Finitary : Kind::Top;
      std::vector<Word> sections(degree);
      for (Letter x = 0; x < degree; ++x) {
        sections[x] = lower(i + 1, kind[i] == Kind::Top);
      }
      store->define_symbol(ids[i], random_perm(), std::move(sections));
    }
    FRSystem sys(store, ids);
    sys.resolve_all();
    return sys;
  }

}  // namespace arboreal
