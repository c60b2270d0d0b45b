#include "arboreal/store.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "arboreal/scc.hpp"

namespace arboreal {

  namespace {
    using Lock = std::lock_guard<std::recursive_mutex>;

    std::uint64_t pair_key(NodeId u, NodeId v) {
      return (static_cast<std::uint64_t>(u) << 32) | v;
    }

    // BFS encoding of one strongly connected component starting at `start`.
    // Children inside the component are written as local indices, children
    // outside as global ids.
    template <typename PermOf, typename ChildOf, typename Inside, typename Ext>
    std::vector<std::uint32_t> encode_component(std::uint32_t start,
                                                std::size_t   d,
                                                PermOf&&      perm_of,
                                                ChildOf&&     child_of,
                                                Inside&&      inside,
                                                Ext&&         ext) {
      std::vector<std::uint32_t>                       code;
      std::unordered_map<std::uint32_t, std::uint32_t> local;
      std::vector<std::uint32_t>                       order{start};
      local.emplace(start, 0);
      for (std::size_t i = 0; i < order.size(); ++i) {
        auto v = order[i];
        for (auto y : perm_of(v).images()) {
          code.push_back(y);
        }
        for (Letter x = 0; x < d; ++x) {
          auto c = child_of(v, x);
          if (inside(c)) {
            auto [it, fresh] = local.emplace(c, order.size());
            if (fresh) {
              order.push_back(c);
            }
            code.push_back(0);
            code.push_back(it->second);
          } else {
            code.push_back(1);
            code.push_back(ext(c));
          }
        }
      }
      return code;
    }
  }  // namespace

  std::size_t WordHash::operator()(Word const& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto const& a : w) {
      std::size_t v = (static_cast<std::size_t>(a.id) << 2)
                      | (a.symbol ? 2u : 0u) | (a.inverse ? 1u : 0u);
      h = (h ^ v) * 0x100000001b3ULL;
    }
    return h;
  }

  std::size_t Store::VecHash::operator()(
      std::vector<std::uint32_t> const& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : v) {
      h = (h ^ x) * 0x100000001b3ULL;
    }
    return h;
  }

  Store::Store(std::size_t degree) : degree_(degree) {
    if (degree < 2) {
      throw std::invalid_argument("alphabet degree must be at least 2");
    }
    Pending e{Perm::identity(degree), std::vector<Ref>(degree, Ref{true, 0})};
    merge({e});
  }

  std::size_t Store::node_count() const {
    Lock lock(mutex_);
    return perms_.size();
  }

  Perm Store::node_perm(NodeId n) const {
    Lock lock(mutex_);
    return perms_.at(n);
  }

  NodeId Store::node_child(NodeId n, Letter x) const {
    Lock lock(mutex_);
    return children_.at(static_cast<std::size_t>(n) * degree_ + x);
  }

  std::vector<NodeId> Store::node_children(NodeId n) const {
    Lock lock(mutex_);
    auto it = children_.begin() + static_cast<std::ptrdiff_t>(n * degree_);
    return {it, it + static_cast<std::ptrdiff_t>(degree_)};
  }

  std::vector<NodeId> Store::reachable(NodeId n) const {
    Lock lock(mutex_);
    std::vector<NodeId>                 order{n};
    std::unordered_map<NodeId, bool>    seen{{n, true}};
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (Letter x = 0; x < degree_; ++x) {
        auto c = children_[order[i] * degree_ + x];
        if (seen.emplace(c, true).second) {
          order.push_back(c);
        }
      }
    }
    return order;
  }

  NodeId Store::new_node(Perm const& p) {
    perms_.push_back(p);
    children_.resize(children_.size() + degree_, kIdentity);
    return static_cast<NodeId>(perms_.size() - 1);
  }

  std::vector<std::uint32_t> Store::scc_code(
      NodeId start,
      std::vector<bool> const& in_scc) const {
    return encode_component(
        start,
        degree_,
        [&](std::uint32_t v) -> Perm const& { return perms_[v]; },
        [&](std::uint32_t v, Letter x) { return children_[v * degree_ + x]; },
        [&](std::uint32_t v) { return v < in_scc.size() && in_scc[v]; },
        [](std::uint32_t v) { return v; });
  }

  // Fold a batch of pending states into the universe.  Pending states may
  // refer to each other and to existing nodes.  Moore refinement over the
  // pending states plus the existing nodes they reach merges everything
  // bisimilar inside that closed set; classes that are new are then
  // hash-consed component by component against the rest of the universe.
  std::vector<NodeId> Store::merge(std::vector<Pending> const& pending) {
    std::size_t const d = degree_;
    std::size_t const k = pending.size();

    std::vector<NodeId>                        rlist;
    std::unordered_map<NodeId, std::uint32_t>  rpos;
    auto add_r = [&](NodeId n) {
      if (rpos.emplace(n, static_cast<std::uint32_t>(k + rlist.size())).second) {
        rlist.push_back(n);
      }
    };
    for (auto const& p : pending) {
      for (auto const& r : p.children) {
        if (!r.pending) {
          add_r(r.id);
        }
      }
    }
    for (std::size_t i = 0; i < rlist.size(); ++i) {
      for (Letter x = 0; x < d; ++x) {
        add_r(children_[rlist[i] * d + x]);
      }
    }

    std::size_t const          n = k + rlist.size();
    std::vector<std::uint32_t> succ(n * d);
    std::vector<Perm const*>   pp(n);
    for (std::size_t i = 0; i < k; ++i) {
      pp[i] = &pending[i].perm;
      for (Letter x = 0; x < d; ++x) {
        auto const& r = pending[i].children[x];
        succ[i * d + x] = r.pending ? r.id : rpos.at(r.id);
      }
    }
    for (std::size_t j = 0; j < rlist.size(); ++j) {
      pp[k + j] = &perms_[rlist[j]];
      for (Letter x = 0; x < d; ++x) {
        succ[(k + j) * d + x] = rpos.at(children_[rlist[j] * d + x]);
      }
    }

    std::vector<std::uint32_t> cls(n);
    std::size_t                count;
    {
      std::unordered_map<Perm, std::uint32_t> by_perm;
      for (std::size_t v = 0; v < n; ++v) {
        cls[v] = by_perm.emplace(*pp[v], by_perm.size()).first->second;
      }
      count = by_perm.size();
    }
    while (true) {
      std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> sigs;
      std::vector<std::uint32_t> next(n);
      std::vector<std::uint32_t> sig(d + 1);
      for (std::size_t v = 0; v < n; ++v) {
        sig[0] = cls[v];
        for (Letter x = 0; x < d; ++x) {
          sig[x + 1] = cls[succ[v * d + x]];
        }
        next[v] = sigs.emplace(sig, sigs.size()).first->second;
      }
      bool stable = sigs.size() == count;
      count       = sigs.size();
      cls         = std::move(next);
      if (stable) {
        break;
      }
    }

    constexpr auto none = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> rep(count, none);
    for (std::size_t v = 0; v < n; ++v) {
      if (rep[cls[v]] == none) {
        rep[cls[v]] = static_cast<std::uint32_t>(v);
      }
    }
    auto class_child = [&](std::uint32_t c, Letter x) {
      return cls[succ[rep[c] * d + x]];
    };

    std::vector<std::int64_t> target(count, -1);
    for (std::size_t j = 0; j < rlist.size(); ++j) {
      target[cls[k + j]] = rlist[j];
    }

    // Subgraph of classes without an existing node.
    std::vector<std::uint32_t> fresh_ids;
    std::vector<std::uint32_t> local(count, none);
    for (std::uint32_t c = 0; c < count; ++c) {
      if (target[c] < 0) {
        local[c] = static_cast<std::uint32_t>(fresh_ids.size());
        fresh_ids.push_back(c);
      }
    }
    std::vector<std::vector<std::uint32_t>> adj(fresh_ids.size());
    for (std::size_t i = 0; i < fresh_ids.size(); ++i) {
      for (Letter x = 0; x < d; ++x) {
        auto c = class_child(fresh_ids[i], x);
        if (local[c] != none) {
          adj[i].push_back(local[c]);
        }
      }
    }

    auto key_of = [&](Perm const& p, auto&& child) {
      std::vector<std::uint32_t> key(p.images().begin(), p.images().end());
      for (Letter x = 0; x < d; ++x) {
        key.push_back(child(x));
      }
      return key;
    };

    for (auto const& comp : strongly_connected_components(adj)) {
      bool cyclic = comp.size() > 1;
      if (!cyclic) {
        for (auto w : adj[comp[0]]) {
          cyclic = cyclic || w == comp[0];
        }
      }
      if (!cyclic) {
        auto  c   = fresh_ids[comp[0]];
        auto  key = key_of(*pp[rep[c]], [&](Letter x) {
          return static_cast<std::uint32_t>(target[class_child(c, x)]);
        });
        auto it = unique_.find(key);
        if (it != unique_.end()) {
          target[c] = it->second;
        } else {
          auto id = new_node(*pp[rep[c]]);
          for (Letter x = 0; x < d; ++x) {
            children_[id * d + x] = static_cast<NodeId>(target[class_child(c, x)]);
          }
          unique_.emplace(std::move(key), id);
          target[c] = id;
        }
        continue;
      }

      std::vector<bool> inside(count, false);
      for (auto i : comp) {
        inside[fresh_ids[i]] = true;
      }
      auto code = encode_component(
          fresh_ids[comp[0]],
          d,
          [&](std::uint32_t c) -> Perm const& { return *pp[rep[c]]; },
          class_child,
          [&](std::uint32_t c) { return inside[c]; },
          [&](std::uint32_t c) { return static_cast<std::uint32_t>(target[c]); });
      auto it = cyclic_.find(code);
      if (it != cyclic_.end()) {
        std::vector<std::pair<std::uint32_t, NodeId>> todo{{fresh_ids[comp[0]], it->second}};
        while (!todo.empty()) {
          auto [c, node] = todo.back();
          todo.pop_back();
          if (target[c] >= 0) {
            continue;
          }
          target[c] = node;
          for (Letter x = 0; x < d; ++x) {
            auto cc = class_child(c, x);
            if (inside[cc]) {
              todo.emplace_back(cc, children_[node * d + x]);
            }
          }
        }
        continue;
      }
      std::vector<NodeId> made;
      for (auto i : comp) {
        auto c    = fresh_ids[i];
        target[c] = new_node(*pp[rep[c]]);
        made.push_back(static_cast<NodeId>(target[c]));
      }
      for (auto i : comp) {
        auto c = fresh_ids[i];
        for (Letter x = 0; x < d; ++x) {
          children_[target[c] * d + x] = static_cast<NodeId>(target[class_child(c, x)]);
        }
      }
      std::vector<bool> in_scc(perms_.size(), false);
      for (auto m : made) {
        in_scc[m] = true;
      }
      for (auto m : made) {
        cyclic_.emplace(scc_code(m, in_scc), m);
        unique_.emplace(
            key_of(perms_[m], [&](Letter x) { return children_[m * d + x]; }), m);
      }
    }

    std::vector<NodeId> out(k);
    for (std::size_t i = 0; i < k; ++i) {
      out[i] = static_cast<NodeId>(target[cls[i]]);
    }
    return out;
  }

  NodeId Store::make_node(Perm const& p, std::vector<NodeId> const& children) {
    Lock lock(mutex_);
    if (p.degree() != degree_ || children.size() != degree_) {
      throw std::invalid_argument("make_node: wrong degree");
    }
    Pending st{p, {}};
    for (auto c : children) {
      st.children.push_back(Ref{false, c});
    }
    return merge({st})[0];
  }

  NodeId Store::multiply(NodeId u, NodeId v) {
    Lock lock(mutex_);
    return multiply_locked(u, v);
  }

  NodeId Store::multiply_locked(NodeId u, NodeId v) {
    if (u == kIdentity) {
      return v;
    }
    if (v == kIdentity) {
      return u;
    }
    if (auto it = products_.find(pair_key(u, v)); it != products_.end()) {
      return it->second;
    }
    std::size_t const d = degree_;
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    std::vector<std::pair<NodeId, NodeId>>           pairs;
    auto ref = [&](NodeId p, NodeId q) -> Ref {
      if (q == kIdentity) {
        return {false, p};
      }
      if (p == kIdentity) {
        return {false, q};
      }
      if (auto it = products_.find(pair_key(p, q)); it != products_.end()) {
        return {false, it->second};
      }
      auto [it, fresh] = index.emplace(pair_key(p, q), pairs.size());
      if (fresh) {
        pairs.emplace_back(p, q);
      }
      return {true, it->second};
    };
    ref(u, v);
    std::vector<Pending> pend;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto [p, q]   = pairs[i];
      auto const& pp = perms_[p];
      Pending st{pp * perms_[q], {}};
      for (Letter x = 0; x < d; ++x) {
        st.children.push_back(
            ref(children_[p * d + x], children_[q * d + pp[x]]));
      }
      pend.push_back(std::move(st));
    }
    auto ids = merge(pend);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      products_.emplace(pair_key(pairs[i].first, pairs[i].second), ids[i]);
    }
    return ids[0];
  }

  NodeId Store::invert(NodeId u) {
    Lock lock(mutex_);
    return invert_locked(u);
  }

  NodeId Store::invert_locked(NodeId u) {
    if (u == kIdentity) {
      return u;
    }
    if (auto it = inverses_.find(u); it != inverses_.end()) {
      return it->second;
    }
    std::size_t const d = degree_;
    std::unordered_map<NodeId, std::uint32_t> index;
    std::vector<NodeId>                       todo;
    auto ref = [&](NodeId p) -> Ref {
      if (p == kIdentity) {
        return {false, p};
      }
      if (auto it = inverses_.find(p); it != inverses_.end()) {
        return {false, it->second};
      }
      auto [it, fresh] = index.emplace(p, todo.size());
      if (fresh) {
        todo.push_back(p);
      }
      return {true, it->second};
    };
    ref(u);
    std::vector<Pending> pend;
    for (std::size_t i = 0; i < todo.size(); ++i) {
      auto p   = todo[i];
      auto inv = perms_[p].inverse();
      Pending st{inv, {}};
      for (Letter x = 0; x < d; ++x) {
        st.children.push_back(ref(children_[p * d + inv[x]]));
      }
      pend.push_back(std::move(st));
    }
    auto ids = merge(pend);
    for (std::size_t i = 0; i < todo.size(); ++i) {
      inverses_.emplace(todo[i], ids[i]);
      inverses_.emplace(ids[i], todo[i]);
    }
    return ids[0];
  }

  NodeId Store::power(NodeId u, std::int64_t n) {
    Lock lock(mutex_);
    if (n < 0) {
      u = invert_locked(u);
      n = -n;
    }
    NodeId result = kIdentity;
    NodeId base   = u;
    while (n > 0) {
      if (n & 1) {
        result = multiply_locked(result, base);
      }
      n >>= 1;
      if (n > 0) {
        base = multiply_locked(base, base);
      }
    }
    return result;
  }

  SymbolId Store::declare_symbol(std::string name) {
    Lock lock(mutex_);
    symbols_.push_back(
        Symbol{std::move(name), Perm::identity(degree_), std::vector<Word>(degree_), {}});
    return static_cast<SymbolId>(symbols_.size() - 1);
  }

  void Store::define_symbol(SymbolId s, Perm p, std::vector<Word> sections) {
    Lock lock(mutex_);
    if (p.degree() != degree_ || sections.size() != degree_) {
      throw std::invalid_argument("define_symbol: wrong degree");
    }
    symbols_.at(s).perm     = std::move(p);
    symbols_.at(s).sections = std::move(sections);
    symbols_.at(s).node.reset();
  }

  Symbol Store::symbol(SymbolId s) const {
    Lock lock(mutex_);
    return symbols_.at(s);
  }

  std::size_t Store::symbol_count() const {
    Lock lock(mutex_);
    return symbols_.size();
  }

  void Store::push_atom(Word& out, Atom a) {
    if (a.symbol && symbols_[a.id].node) {
      NodeId n = *symbols_[a.id].node;
      a        = Atom::node(a.inverse ? invert_locked(n) : n);
    }
    if (!a.symbol) {
      if (a.id == kIdentity) {
        return;
      }
      if (!out.empty() && !out.back().symbol) {
        NodeId m = multiply_locked(out.back().id, a.id);
        out.pop_back();
        if (m != kIdentity) {
          out.push_back(Atom::node(m));
        }
        return;
      }
      out.push_back(a);
      return;
    }
    if (!out.empty() && out.back().symbol && out.back().id == a.id
        && out.back().inverse != a.inverse) {
      out.pop_back();
      return;
    }
    out.push_back(a);
  }

  Word Store::normalize(Word const& w) {
    Lock lock(mutex_);
    Word out;
    for (auto const& a : w) {
      push_atom(out, a);
    }
    return out;
  }

  Perm Store::atom_perm(Atom const& a) {
    if (!a.symbol) {
      return perms_[a.id];
    }
    auto const& p = symbols_[a.id].perm;
    return a.inverse ? p.inverse() : p;
  }

  Word Store::atom_section(Atom const& a, Letter x) {
    if (!a.symbol) {
      return {Atom::node(children_[a.id * degree_ + x])};
    }
    auto const& s = symbols_[a.id];
    if (!a.inverse) {
      return s.sections[x];
    }
    return word_inverse(s.sections[s.perm.inverse()[x]]);
  }

  Perm Store::word_perm(Word const& w) {
    Lock lock(mutex_);
    Perm p = Perm::identity(degree_);
    for (auto const& a : w) {
      p = p * atom_perm(a);
    }
    return p;
  }

  Word Store::word_section(Word const& w, Letter x) {
    Lock lock(mutex_);
    Word   out;
    Letter y = x;
    for (auto const& a : w) {
      for (auto const& b : atom_section(a, y)) {
        push_atom(out, b);
      }
      y = atom_perm(a)[y];
    }
    return out;
  }

  Word Store::word_inverse(Word const& w) {
    Lock lock(mutex_);
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      Atom a = *it;
      if (a.symbol) {
        a.inverse = !a.inverse;
      } else {
        a.id = invert_locked(a.id);
      }
      push_atom(out, a);
    }
    return out;
  }

  Word Store::word_product(Word const& u, Word const& v) {
    Lock lock(mutex_);
    Word out;
    for (auto const& a : u) {
      push_atom(out, a);
    }
    for (auto const& a : v) {
      push_atom(out, a);
    }
    return out;
  }

  std::optional<NodeId> Store::resolve(Word const& word, std::size_t state_cap) {
    Lock lock(mutex_);
    Word w = normalize(word);
    if (w.empty()) {
      return kIdentity;
    }
    if (w.size() == 1 && !w[0].symbol) {
      return w[0].id;
    }
    if (auto it = failed_.find(w); it != failed_.end() && it->second >= state_cap) {
      return std::nullopt;
    }
    std::size_t const d = degree_;
    std::unordered_map<Word, std::uint32_t, WordHash> index;
    std::vector<Word>                                 states;
    bool                                              overflow = false;
    auto ref = [&](Word const& s) -> Ref {
      if (s.empty()) {
        return {false, kIdentity};
      }
      if (s.size() == 1 && !s[0].symbol) {
        return {false, s[0].id};
      }
      auto it = index.find(s);
      if (it != index.end()) {
        return {true, it->second};
      }
      if (states.size() >= state_cap || s.size() > kMaxWordLength) {
        overflow = true;
        return {false, kIdentity};
      }
      index.emplace(s, states.size());
      states.push_back(s);
      return {true, static_cast<std::uint32_t>(states.size() - 1)};
    };
    ref(w);
    std::vector<Pending> pend;
    for (std::size_t i = 0; i < states.size() && !overflow; ++i) {
      Word    s = states[i];
      Pending st{word_perm(s), {}};
      for (Letter x = 0; x < d && !overflow; ++x) {
        st.children.push_back(ref(word_section(s, x)));
      }
      pend.push_back(std::move(st));
    }
    if (overflow) {
      auto& f = failed_[w];
      f       = std::max(f, state_cap);
      return std::nullopt;
    }
    auto ids = merge(pend);
    for (std::size_t i = 0; i < states.size(); ++i) {
      auto const& s = states[i];
      if (s.size() == 1 && s[0].symbol && !symbols_[s[0].id].node) {
        symbols_[s[0].id].node = s[0].inverse ? invert_locked(ids[i]) : ids[i];
      }
    }
    return ids[0];
  }

}  // namespace arboreal
