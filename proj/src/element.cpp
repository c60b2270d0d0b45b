#include "arboreal/element.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace arboreal {

  Element::Element(std::shared_ptr<Store> store, Word word)
      : store_(std::move(store)) {
    if (!store_) {
      throw std::invalid_argument("element without store");
    }
    word_ = store_->normalize(word);
  }

  Element Element::identity(std::shared_ptr<Store> store) {
    return Element(std::move(store), {});
  }

  Element Element::from_node(std::shared_ptr<Store> store, NodeId n) {
    return Element(std::move(store), {Atom::node(n)});
  }

  Element Element::from_symbol(std::shared_ptr<Store> store, SymbolId s) {
    return Element(std::move(store), {Atom::sym(s)});
  }

  std::optional<NodeId> Element::node() const {
    if (word_.empty()) {
      return kIdentity;
    }
    if (word_.size() == 1 && !word_[0].symbol) {
      return word_[0].id;
    }
    return std::nullopt;
  }

  namespace {
    void check_same_store(Element const& g, Element const& h) {
      if (g.store() != h.store()) {
        throw std::invalid_argument("elements live in different stores");
      }
    }
  }  // namespace

  Perm root_perm(Element const& g) {
    return g.store()->word_perm(g.word());
  }

  Element section(Element const& g, Letter x) {
    if (x >= g.degree()) {
      throw std::out_of_range("letter out of range");
    }
    return Element(g.store(), g.store()->word_section(g.word(), x));
  }

  Element section_word(Element const& g, std::vector<Letter> const& v) {
    Element h = g;
    for (auto x : v) {
      h = section(h, x);
    }
    return h;
  }

  Element multiply(Element const& g, Element const& h) {
    check_same_store(g, h);
    return Element(g.store(), g.store()->word_product(g.word(), h.word()));
  }

  Element operator*(Element const& g, Element const& h) {
    return multiply(g, h);
  }

  Element inverse(Element const& g) {
    return Element(g.store(), g.store()->word_inverse(g.word()));
  }

  Element power(Element const& g, std::int64_t n) {
    if (auto node = g.node()) {
      return Element::from_node(g.store(), g.store()->power(*node, n));
    }
    Element base = n < 0 ? inverse(g) : g;
    Element out  = Element::identity(g.store());
    for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i) {
      out = out * base;
    }
    return out;
  }

  std::vector<Letter> act(Element const& g, std::vector<Letter> const& v) {
    std::vector<Letter> out;
    out.reserve(v.size());
    Element h = g;
    for (auto x : v) {
      if (x >= g.degree()) {
        throw std::out_of_range("letter out of range");
      }
      out.push_back(root_perm(h)[x]);
      h = section(h, x);
    }
    return out;
  }

  std::optional<Element> resolved(Element const& g, std::size_t cap) {
    if (g.node()) {
      return g;
    }
    auto n = g.store()->resolve(g.word(), cap);
    if (!n) {
      return std::nullopt;
    }
    return Element::from_node(g.store(), *n);
  }

  NodeId require_node(Element const& g, std::size_t cap) {
    auto r = resolved(g, cap);
    if (!r) {
      throw CapExceeded("state closure exceeds the cap of "
                        + std::to_string(cap) + " states");
    }
    return *r->node();
  }

  Truth equal(Element const& g, Element const& h, std::size_t cap) {
    check_same_store(g, h);
    auto rg = resolved(g);
    auto rh = rg ? resolved(h) : std::nullopt;
    if (rg && rh) {
      return *rg->node() == *rh->node() ? Truth::True : Truth::False;
    }
    auto& store = *g.store();
    std::unordered_set<Word, WordHash> seen;
    std::deque<std::pair<Word, Word>>  todo;
    auto key = [](Word const& a, Word const& b) {
      Word k = a;
      k.push_back(Atom{0xffffffffu, true, true});
      k.insert(k.end(), b.begin(), b.end());
      return k;
    };
    todo.emplace_back(g.word(), h.word());
    seen.insert(key(g.word(), h.word()));
    while (!todo.empty()) {
      auto [u, v] = todo.front();
      todo.pop_front();
      if (u == v) {
        continue;
      }
      if (store.word_perm(u) != store.word_perm(v)) {
        return Truth::False;
      }
      bool u_node = u.empty() || (u.size() == 1 && !u[0].symbol);
      bool v_node = v.empty() || (v.size() == 1 && !v[0].symbol);
      if (u_node && v_node) {
        return Truth::False;
      }
      for (Letter x = 0; x < store.degree(); ++x) {
        auto su = store.word_section(u, x);
        auto sv = store.word_section(v, x);
        if (seen.insert(key(su, sv)).second) {
          if (seen.size() > cap) {
            return Truth::ExceededCap;
          }
          todo.emplace_back(std::move(su), std::move(sv));
        }
      }
    }
    return Truth::True;
  }

  bool same(Element const& g, Element const& h) {
    auto t = equal(g, h);
    if (t == Truth::ExceededCap) {
      throw CapExceeded("equality check exceeded its pair budget");
    }
    return t == Truth::True;
  }

  Machine machine_of(Store const& store, NodeId n) {
    Machine m;
    m.degree = store.degree();
    m.states = store.reachable(n);
    std::unordered_map<NodeId, std::uint32_t> index;
    for (std::uint32_t i = 0; i < m.states.size(); ++i) {
      index.emplace(m.states[i], i);
      if (m.states[i] == kIdentity) {
        m.trivial = i;
      }
    }
    for (auto s : m.states) {
      m.output.push_back(store.node_perm(s));
      std::vector<std::uint32_t> row;
      for (Letter x = 0; x < m.degree; ++x) {
        row.push_back(index.at(store.node_child(s, x)));
      }
      m.transition.push_back(std::move(row));
    }
    return m;
  }

  std::optional<Machine> minimize(Element const& g, std::size_t cap) {
    auto r = resolved(g, cap);
    if (!r) {
      return std::nullopt;
    }
    auto m = machine_of(*g.store(), *r->node());
    if (m.size() > cap) {
      return std::nullopt;
    }
    return m;
  }

  std::vector<Letter> orbit(Element const& g, Letter x) {
    auto                p = root_perm(g);
    std::vector<Letter> out{x};
    for (Letter y = p[x]; y != x; y = p[y]) {
      out.push_back(y);
    }
    return out;
  }

  Element power_section(Element const& g, std::size_t i, Letter x) {
    auto    p   = root_perm(g);
    Element out = Element::identity(g.store());
    Letter  y   = x;
    for (std::size_t j = 0; j < i; ++j) {
      out = out * section(g, y);
      y   = p[y];
    }
    return out;
  }

  OrbitSection orbit_power_section(Element const& g, Letter x) {
    auto m = orbit(g, x).size();
    return {m, power_section(g, m, x)};
  }

  NodeId power_section(Store& store, NodeId g, std::size_t i, Letter x) {
    auto   p   = store.node_perm(g);
    NodeId out = kIdentity;
    Letter y   = x;
    for (std::size_t j = 0; j < i; ++j) {
      out = store.multiply(out, store.node_child(g, y));
      y   = p[y];
    }
    return out;
  }

  std::vector<Letter> orbit(Store const& store, NodeId g, Letter x) {
    auto                p = store.node_perm(g);
    std::vector<Letter> out{x};
    for (Letter y = p[x]; y != x; y = p[y]) {
      out.push_back(y);
    }
    return out;
  }

}  // namespace arboreal
