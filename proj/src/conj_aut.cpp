#include "arboreal/conj_aut.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace arboreal {

  namespace {
    constexpr auto npos = std::numeric_limits<std::size_t>::max();
  }

  std::vector<Perm> perm_conjugators(Perm const& p, Perm const& q, std::size_t degree_cap) {
    if (p.degree() != q.degree()) {
      throw std::invalid_argument("degree mismatch");
    }
    if (p.degree() > degree_cap) {
      throw DegreeTooLarge("permutation enumeration is capped at degree "
                           + std::to_string(degree_cap));
    }
    std::vector<Perm> out;
    for (auto const& pi : all_perms(p.degree())) {
      if (p * pi == pi * q) {
        out.push_back(pi);
      }
    }
    return out;
  }

  std::pair<std::size_t, std::size_t> ConjGraph::successor(std::size_t v, Letter x) const {
    auto const& vx = vertices.at(v);
    return {a_succ[vx.c * degree + x], b_succ[vx.d * degree + vx.pi[x]]};
  }

  ConjGraph conj_graph(Element const& a, Element const& b, ConjOptions const& opt) {
    ConjGraph g;
    std::size_t const d = a.degree();
    g.degree            = d;
    auto unknown = [&](std::string why) {
      g.status = ConjGraph::Status::Unknown;
      g.reason = std::move(why);
      return g;
    };

    auto osa = orbit_signalizer(a, opt.os_cap);
    if (!osa.complete()) {
      return unknown("orbit-signalizer of the first element exceeds the cap");
    }
    g.a_side = osa.elements;
    g.a_succ.assign(g.a_side.size() * d, npos);
    for (auto const& e : osa.edges) {
      g.a_succ[e.source * d + e.letter] = e.target;
    }

    ElementIndex bi;
    bi.insert(b);
    for (std::size_t i = 0; i < bi.size(); ++i) {
      Element el = bi.elements()[i];
      for (Letter y = 0; y < d; ++y) {
        auto m = orbit(el, y).size();
        auto j = bi.insert(power_section(el, m, y));
        if (!j || bi.size() > opt.os_cap) {
          return unknown("orbit closure of the second element exceeds the cap");
        }
        g.b_succ.push_back(*j);
      }
    }
    g.b_side = bi.elements();

    std::vector<Perm> a_perm, b_perm;
    for (auto const& e : g.a_side) {
      a_perm.push_back(root_perm(e));
    }
    for (auto const& e : g.b_side) {
      b_perm.push_back(root_perm(e));
    }

    // Candidate vertices.
    std::vector<ConjVertex>                                            cand;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_pair;
    std::deque<std::pair<std::size_t, std::size_t>>                    todo;
    auto add_pair = [&](std::size_t c, std::size_t dd) {
      if (by_pair.count({c, dd}) != 0) {
        return;
      }
      auto& list = by_pair[{c, dd}];
      for (auto const& pi : perm_conjugators(a_perm[c], b_perm[dd])) {
        list.push_back(cand.size());
        cand.push_back({c, dd, pi});
      }
      todo.emplace_back(c, dd);
    };
    if (opt.reachable_only) {
      add_pair(0, 0);
      while (!todo.empty()) {
        auto [c, dd] = todo.front();
        todo.pop_front();
        for (auto v : std::vector<std::size_t>(by_pair[{c, dd}])) {
          auto pi = cand[v].pi;
          for (auto const& cyc : a_perm[c].cycles()) {
            add_pair(g.a_succ[c * d + cyc[0]], g.b_succ[dd * d + pi[cyc[0]]]);
          }
        }
      }
    } else {
      for (std::size_t c = 0; c < g.a_side.size(); ++c) {
        for (std::size_t dd = 0; dd < g.b_side.size(); ++dd) {
          add_pair(c, dd);
        }
      }
    }
    g.candidates = cand.size();

    // Out-edges grouped by representative letter.
    struct Group {
      Letter                   letter;
      std::vector<std::size_t> targets;
    };
    std::vector<std::vector<Group>> out(cand.size());
    for (std::size_t v = 0; v < cand.size(); ++v) {
      auto const& cv = cand[v];
      for (auto const& cyc : a_perm[cv.c].cycles()) {
        Letter x  = cyc[0];
        auto   c2 = g.a_succ[cv.c * d + x];
        auto   d2 = g.b_succ[cv.d * d + cv.pi[x]];
        auto   it = by_pair.find({c2, d2});
        out[v].push_back({x, it == by_pair.end() ? std::vector<std::size_t>{} : it->second});
      }
    }

    std::vector<bool> alive(cand.size(), true);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t v = 0; v < cand.size(); ++v) {
        if (!alive[v]) {
          continue;
        }
        for (auto const& grp : out[v]) {
          bool any = std::any_of(grp.targets.begin(), grp.targets.end(),
                                 [&](std::size_t w) { return alive[w]; });
          if (!any) {
            alive[v] = false;
            changed  = true;
            break;
          }
        }
      }
    }

    std::vector<std::size_t> renum(cand.size(), npos);
    for (std::size_t v = 0; v < cand.size(); ++v) {
      if (alive[v]) {
        renum[v] = g.vertices.size();
        g.vertices.push_back(cand[v]);
        if (cand[v].c == 0 && cand[v].d == 0) {
          g.roots.push_back(renum[v]);
        }
      }
    }
    for (std::size_t v = 0; v < cand.size(); ++v) {
      if (!alive[v]) {
        continue;
      }
      for (auto const& grp : out[v]) {
        for (auto w : grp.targets) {
          if (alive[w]) {
            g.edges.push_back({renum[v], grp.letter, renum[w]});
          }
        }
      }
    }
    return g;
  }

  ConjDecision conjugate_in_aut(Element const& a, Element const& b, ConjOptions const& opt) {
    ConjDecision dec;
    dec.graph = conj_graph(a, b, opt);
    if (dec.graph.status == ConjGraph::Status::Unknown) {
      dec.kind   = ConjDecision::Kind::Unknown;
      dec.reason = dec.graph.reason;
      return dec;
    }
    if (!dec.graph.roots.empty()) {
      dec.kind = ConjDecision::Kind::Conjugate;
      dec.root = dec.graph.roots.front();
      return dec;
    }
    dec.kind = ConjDecision::Kind::NotConjugate;
    if (!dec.graph.vertices.empty()) {
      dec.criteria_disagree = true;
      dec.reason = "pruned graph is nonempty but has no vertex over the input pair";
    } else {
      dec.reason = "pruned conjugator graph is empty";
    }
    return dec;
  }

  namespace {
    using PairKey = std::pair<std::size_t, std::size_t>;

    std::map<PairKey, std::vector<std::size_t>> survivors_by_pair(ConjGraph const& g) {
      std::map<PairKey, std::vector<std::size_t>> m;
      for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        m[{g.vertices[v].c, g.vertices[v].d}].push_back(v);
      }
      return m;
    }

    // Pairs reachable from the root under the chosen vertices, in BFS order.
    template <typename Choose>
    std::vector<std::pair<PairKey, std::size_t>> select_gamma(ConjGraph const& g,
                                                              Choose&&         choose) {
      auto                                         surv = survivors_by_pair(g);
      std::vector<std::pair<PairKey, std::size_t>> out;
      std::map<PairKey, std::size_t>               seen;
      if (surv.count({0, 0}) == 0) {
        throw NoRoot("conjugator graph has no surviving root vertex");
      }
      std::deque<PairKey> todo{{0, 0}};
      seen[{0, 0}] = 0;
      while (!todo.empty()) {
        auto key = todo.front();
        todo.pop_front();
        auto v = choose(key, surv.at(key));
        out.emplace_back(key, v);
        auto p = root_perm(g.a_side[key.first]);
        for (auto const& cyc : p.cycles()) {
          auto next = g.successor(v, cyc[0]);
          if (seen.emplace(next, seen.size()).second) {
            todo.push_back(next);
          }
        }
      }
      return out;
    }

    ConjugatorFR emit(ConjGraph const&                                     g,
                      std::vector<std::pair<PairKey, std::size_t>> const& gamma,
                      std::string const&                                  prefix) {
      auto store = g.a_side[0].store();
      std::map<PairKey, SymbolId> sym;
      ConjugatorFR                h;
      std::vector<SymbolId>       ids;
      for (std::size_t i = 0; i < gamma.size(); ++i) {
        auto s = store->declare_symbol(prefix + std::to_string(i));
        sym[gamma[i].first] = s;
        ids.push_back(s);
        h.pairs.push_back(gamma[i].first);
        h.choices.push_back(g.vertices[gamma[i].second].pi);
      }
      for (std::size_t i = 0; i < gamma.size(); ++i) {
        auto [key, v]     = gamma[i];
        auto const& c     = g.a_side[key.first];
        auto const& dd    = g.b_side[key.second];
        auto const& pi    = g.vertices[v].pi;
        std::vector<Word> sections(g.degree);
        for (auto const& cyc : root_perm(c).cycles()) {
          Letter x    = cyc[0];
          auto   next = sym.at(g.successor(v, x));
          for (std::size_t j = 0; j < cyc.size(); ++j) {
            Word w = inverse(power_section(c, j, x)).word();
            w.push_back(Atom::sym(next));
            auto tail = power_section(dd, j, pi[x]).word();
            w.insert(w.end(), tail.begin(), tail.end());
            sections[cyc[j]] = std::move(w);
          }
        }
        store->define_symbol(ids[i], pi, std::move(sections));
      }
      h.system = FRSystem(store, ids);
      h.root   = ids[0];
      return h;
    }
  }  // namespace

  ConjugatorFR basic_conjugator(ConjGraph const& g, Policy policy, std::string const& prefix) {
    auto gamma = select_gamma(g, [&](PairKey const&, std::vector<std::size_t> const& vs) {
      return policy == Policy::Least ? vs.front() : vs.back();
    });
    return emit(g, gamma, prefix);
  }

  ConjugatorFR basic_conjugator(ConjGraph const& g, PairChoice const& choice,
                                std::string const& prefix) {
    auto gamma = select_gamma(g, [&](PairKey const& key, std::vector<std::size_t> const& vs) {
      auto it = choice.find(key);
      if (it != choice.end()) {
        for (auto v : vs) {
          if (g.vertices[v].pi == it->second) {
            return v;
          }
        }
        throw std::invalid_argument("chosen permutation does not survive for pair ("
                                    + std::to_string(key.first) + ","
                                    + std::to_string(key.second) + ")");
      }
      return vs.front();
    });
    return emit(g, gamma, prefix);
  }

  std::vector<ConjugatorFR> all_basic_conjugators(ConjGraph const& g, std::size_t limit,
                                                  std::string const& prefix) {
    auto surv = survivors_by_pair(g);
    if (surv.count({0, 0}) == 0) {
      throw NoRoot("conjugator graph has no surviving root vertex");
    }
    std::vector<ConjugatorFR> out;
    PairChoice                choice;
    // Depth-first over choice functions restricted to the reachable pairs.
    std::function<void()> go = [&]() {
      if (out.size() >= limit) {
        return;
      }
      std::optional<PairKey> open;
      select_gamma(g, [&](PairKey const& key, std::vector<std::size_t> const& vs) {
        auto it = choice.find(key);
        if (it == choice.end() && !open) {
          open = key;
        }
        if (it != choice.end()) {
          for (auto v : vs) {
            if (g.vertices[v].pi == it->second) {
              return v;
            }
          }
        }
        return vs.front();
      });
      if (!open) {
        out.push_back(basic_conjugator(g, choice, prefix));
        return;
      }
      for (auto v : surv.at(*open)) {
        choice[*open] = g.vertices[v].pi;
        go();
      }
      choice.erase(*open);
    };
    go();
    return out;
  }

  std::optional<Element> expand_to_finite_state(ConjugatorFR const& h, std::size_t cap) {
    return resolved(h.element(), cap);
  }

  namespace {
    using Tuple = std::vector<std::pair<NodeId, NodeId>>;

    struct Orbit {
      std::vector<Letter>                  points;  // points[0] is the least
      std::vector<std::vector<std::size_t>> path;   // generator indices x -> y
    };

    std::vector<Orbit> group_orbits(std::vector<Perm> const& gens, std::size_t d) {
      std::vector<Orbit> out;
      std::vector<bool>  seen(d, false);
      for (Letter x = 0; x < d; ++x) {
        if (seen[x]) {
          continue;
        }
        Orbit o;
        o.points.push_back(x);
        o.path.emplace_back();
        seen[x] = true;
        for (std::size_t k = 0; k < o.points.size(); ++k) {
          for (std::size_t i = 0; i < gens.size(); ++i) {
            Letter y = gens[i][o.points[k]];
            if (!seen[y]) {
              seen[y] = true;
              o.points.push_back(y);
              auto p = o.path[k];
              p.push_back(i);
              o.path.push_back(std::move(p));
            }
          }
        }
        out.push_back(std::move(o));
      }
      return out;
    }
  }  // namespace

  SimultaneousDecision conjugate_in_aut_simultaneous(std::vector<Element> const& as,
                                                     std::vector<Element> const& bs,
                                                     std::size_t                 cap,
                                                     std::string const&          prefix) {
    if (as.size() != bs.size() || as.empty()) {
      throw std::invalid_argument("simultaneous conjugacy needs two tuples of equal positive length");
    }
    SimultaneousDecision dec;
    auto                 store = as[0].store();
    std::size_t const    d     = store->degree();
    Tuple                root;
    for (std::size_t i = 0; i < as.size(); ++i) {
      auto ra = resolved(as[i]);
      auto rb = resolved(bs[i]);
      if (!ra || !rb) {
        dec.reason = "inputs must be finite-state";
        return dec;
      }
      root.emplace_back(*ra->node(), *rb->node());
    }
    auto canon = [](Tuple t) {
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
      return t;
    };

    struct Choice {
      Perm                     pi;
      std::vector<std::size_t> succ;  // per orbit
    };
    struct State {
      Tuple               tuple;
      std::vector<Orbit>  orbits;
      std::vector<Choice> choices;
    };
    std::vector<State>           states;
    std::map<Tuple, std::size_t> index;
    auto intern = [&](Tuple t) {
      auto [it, fresh] = index.emplace(t, states.size());
      if (fresh) {
        states.push_back({std::move(t), {}, {}});
      }
      return it->second;
    };
    intern(canon(root));
    for (std::size_t s = 0; s < states.size(); ++s) {
      if (states.size() > cap) {
        dec.reason = "tuple states exceed the cap";
        return dec;
      }
      Tuple             t = states[s].tuple;
      std::vector<Perm> cg, dg;
      for (auto [c, dd] : t) {
        cg.push_back(store->node_perm(c));
        dg.push_back(store->node_perm(dd));
      }
      auto orbits = group_orbits(cg, d);
      std::vector<Perm> pis;
      for (auto const& pi : all_perms(d)) {
        bool ok = true;
        for (std::size_t i = 0; i < t.size() && ok; ++i) {
          ok = cg[i] * pi == pi * dg[i];
        }
        if (ok) {
          pis.push_back(pi);
        }
      }
      std::vector<Choice> choices;
      for (auto const& pi : pis) {
        Choice ch{pi, {}};
        for (auto const& o : orbits) {
          Letter x = o.points[0];
          // Transversal elements t_y for y in the orbit, both sides.
          std::map<Letter, std::pair<NodeId, NodeId>> tv;
          for (std::size_t k = 0; k < o.points.size(); ++k) {
            NodeId tc = kIdentity, td = kIdentity;
            for (auto i : o.path[k]) {
              tc = store->multiply(tc, t[i].first);
              td = store->multiply(td, t[i].second);
            }
            tv[o.points[k]] = {tc, td};
          }
          Tuple next;
          for (auto y : o.points) {
            for (std::size_t i = 0; i < t.size(); ++i) {
              Letter z  = cg[i][y];
              NodeId sc = store->multiply(store->multiply(tv[y].first, t[i].first),
                                          store->invert(tv[z].first));
              NodeId sd = store->multiply(store->multiply(tv[y].second, t[i].second),
                                          store->invert(tv[z].second));
              next.emplace_back(store->node_child(sc, x), store->node_child(sd, pi[x]));
            }
          }
          ch.succ.push_back(intern(canon(next)));
        }
        choices.push_back(std::move(ch));
      }
      states[s].orbits  = std::move(orbits);
      states[s].choices = std::move(choices);
    }
    dec.states = states.size();

    std::vector<std::vector<bool>> alive(states.size());
    std::vector<bool>              state_alive(states.size());
    for (std::size_t s = 0; s < states.size(); ++s) {
      alive[s].assign(states[s].choices.size(), true);
      state_alive[s] = !states[s].choices.empty();
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t s = 0; s < states.size(); ++s) {
        bool any = false;
        for (std::size_t c = 0; c < states[s].choices.size(); ++c) {
          if (!alive[s][c]) {
            continue;
          }
          for (auto n : states[s].choices[c].succ) {
            if (!state_alive[n]) {
              alive[s][c] = false;
              changed     = true;
              break;
            }
          }
          any = any || alive[s][c];
        }
        if (state_alive[s] && !any) {
          state_alive[s] = false;
          changed        = true;
        }
      }
    }
    for (std::size_t s = 0; s < states.size(); ++s) {
      dec.vertices += static_cast<std::size_t>(std::count(alive[s].begin(), alive[s].end(), true));
    }
    if (!state_alive[0]) {
      dec.kind   = SimultaneousDecision::Kind::NotConjugate;
      dec.reason = "no surviving vertex over the input tuple";
      return dec;
    }

    // Least surviving choice per reachable state.
    std::map<std::size_t, std::size_t> chosen;  // state -> choice
    std::vector<std::size_t>           order{0};
    chosen[0] = 0;
    std::map<std::size_t, SymbolId> sym;
    for (std::size_t k = 0; k < order.size(); ++k) {
      auto s = order[k];
      std::size_t c = 0;
      while (!alive[s][c]) {
        ++c;
      }
      chosen[s] = c;
      sym[s]    = store->declare_symbol(prefix + std::to_string(k));
      for (auto n : states[s].choices[c].succ) {
        if (sym.count(n) == 0 && std::find(order.begin(), order.end(), n) == order.end()) {
          order.push_back(n);
        }
      }
    }
    ConjugatorFR          h;
    std::vector<SymbolId> ids;
    for (auto s : order) {
      auto const& st = states[s];
      auto const& ch = st.choices[chosen[s]];
      std::vector<Word> sections(d);
      for (std::size_t oi = 0; oi < st.orbits.size(); ++oi) {
        auto const& o = st.orbits[oi];
        Letter      x = o.points[0];
        for (std::size_t k = 0; k < o.points.size(); ++k) {
          NodeId tc = kIdentity, td = kIdentity;
          for (auto i : o.path[k]) {
            tc = store->multiply(tc, st.tuple[i].first);
            td = store->multiply(td, st.tuple[i].second);
          }
          sections[o.points[k]] = {
              Atom::node(store->invert(store->node_child(tc, x))),
              Atom::sym(sym.at(ch.succ[oi])),
              Atom::node(store->node_child(td, ch.pi[x]))};
        }
      }
      store->define_symbol(sym.at(s), ch.pi, std::move(sections));
      ids.push_back(sym.at(s));
      h.choices.push_back(ch.pi);
      h.pairs.emplace_back(s, 0);
    }
    h.system       = FRSystem(store, ids);
    h.root         = ids[0];
    dec.kind       = SimultaneousDecision::Kind::Conjugate;
    dec.conjugator = std::move(h);
    return dec;
  }

  namespace {
    struct RepBuilder {
      std::size_t                                          d;
      std::map<std::pair<std::string, std::size_t>, TruncatedAut> memo;

      static std::string key_of(Element const& g) {
        if (auto n = g.node()) {
          return "n" + std::to_string(*n);
        }
        std::string s = "w";
        for (auto const& a : g.word()) {
          s += (a.symbol ? (a.inverse ? "S-" : "S") : "N") + std::to_string(a.id) + ",";
        }
        return s;
      }

      static std::string code_of(TruncatedAut const& t) {
        std::string s;
        for (auto const& lvl : t.levels) {
          for (auto v : lvl) {
            s += std::to_string(v) + ",";
          }
          s += ";";
        }
        return s;
      }

      TruncatedAut rep(Element const& g, std::size_t k) {
        TruncatedAut out{d, k, {{0}}};
        if (k == 0) {
          return out;
        }
        auto key = std::make_pair(key_of(g), k);
        if (auto it = memo.find(key); it != memo.end()) {
          return it->second;
        }
        struct Item {
          std::size_t  len;
          std::string  code;
          TruncatedAut sub;
        };
        std::vector<Item> items;
        for (auto const& cyc : root_perm(g).cycles()) {
          auto sub = rep(power_section(g, cyc.size(), cyc[0]), k - 1);
          items.push_back({cyc.size(), code_of(sub), std::move(sub)});
        }
        std::sort(items.begin(), items.end(), [](Item const& x, Item const& y) {
          return std::tie(x.len, x.code) < std::tie(y.len, y.code);
        });
        std::vector<Letter>              tau(d);
        std::vector<TruncatedAut const*> sec(d, nullptr);
        Letter                           start = 0;
        for (auto const& it : items) {
          for (std::size_t j = 0; j < it.len; ++j) {
            tau[start + j] = static_cast<Letter>(start + (j + 1) % it.len);
          }
          sec[start + it.len - 1] = &it.sub;
          start += static_cast<Letter>(it.len);
        }
        std::size_t block = 1;
        for (std::size_t j = 1; j <= k; ++j) {
          std::vector<std::uint32_t> lvl(block * d);
          for (std::uint32_t w = 0; w < lvl.size(); ++w) {
            Letter        x    = w / block;
            std::uint32_t rest = w % block;
            if (sec[x] != nullptr) {
              rest = sec[x]->levels[j - 1][rest];
            }
            lvl[w] = static_cast<std::uint32_t>(tau[x] * block + rest);
          }
          out.levels.push_back(std::move(lvl));
          block *= d;
        }
        memo.emplace(key, out);
        return out;
      }
    };
  }  // namespace

  TruncatedAut canonical_representative(Element const& a, std::size_t depth) {
    check_depth(a.degree(), depth);
    RepBuilder b{a.degree(), {}};
    return b.rep(a, depth);
  }

}  // namespace arboreal
