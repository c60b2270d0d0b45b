#include "arboreal/conj_restricted.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <set>

#include "arboreal/scc.hpp"

namespace arboreal {

  namespace {
    constexpr auto npos = std::numeric_limits<std::size_t>::max();

    NodeId mul(Store& s, NodeId u, NodeId v) {
      return s.multiply(u, v);
    }

    // Every configuration reachable from the roots added so far, under all
    // conjugating permutations.
    class Universe {
     public:
      struct Entry {
        std::vector<std::vector<Letter>>  cycles;
        std::vector<Perm>                 pis;
        std::vector<std::vector<std::size_t>> succ;  // [k][cycle]
      };

      Universe(std::shared_ptr<Store> st, std::size_t cap) : st_(std::move(st)), cap_(cap) {}

      std::size_t add_root(NodeId a, NodeId b) {
        return intern({a, b, {{kIdentity, kIdentity}}});
      }

      // False when the closure exceeds the cap.
      bool close() {
        for (; done_ < cfg_.size(); ++done_) {
          if (cfg_.size() > cap_) {
            return false;
          }
          expand(done_);
        }
        return cfg_.size() <= cap_;
      }

      std::size_t size() const {
        return cfg_.size();
      }
      Configuration const& config(std::size_t i) const {
        return cfg_[i];
      }
      Entry const& entry(std::size_t i) const {
        return ent_[i];
      }

      // All configurations, with the permutations that survive pruning.
      ConfigurationSet full() const {
        std::vector<std::vector<bool>> alive(cfg_.size());
        std::vector<bool>              live(cfg_.size());
        for (std::size_t c = 0; c < cfg_.size(); ++c) {
          alive[c].assign(ent_[c].pis.size(), true);
          live[c] = !ent_[c].pis.empty();
        }
        for (bool changed = true; changed;) {
          changed = false;
          for (std::size_t c = 0; c < cfg_.size(); ++c) {
            if (!live[c]) {
              continue;
            }
            bool any = false;
            for (std::size_t k = 0; k < ent_[c].pis.size(); ++k) {
              if (!alive[c][k]) {
                continue;
              }
              for (auto n : ent_[c].succ[k]) {
                if (!live[n]) {
                  alive[c][k] = false;
                  break;
                }
              }
              any = any || alive[c][k];
            }
            if (!any) {
              live[c] = false;
              changed = true;
            }
          }
        }
        ConfigurationSet s;
        s.store   = st_;
        s.configs = cfg_;
        for (std::size_t c = 0; c < cfg_.size(); ++c) {
          std::vector<Perm>                     pis;
          std::vector<std::vector<std::size_t>> succ;
          for (std::size_t k = 0; k < ent_[c].pis.size(); ++k) {
            if (alive[c][k]) {
              pis.push_back(ent_[c].pis[k]);
              succ.push_back(ent_[c].succ[k]);
            }
          }
          std::vector<Letter> reps;
          for (auto const& cyc : ent_[c].cycles) {
            reps.push_back(cyc[0]);
          }
          s.choices.push_back(std::move(pis));
          s.successors.push_back(std::move(succ));
          s.reps.push_back(std::move(reps));
        }
        return s;
      }

     private:
      std::size_t intern(Configuration c) {
        auto [it, fresh] = index_.emplace(c, cfg_.size());
        if (fresh) {
          cfg_.push_back(std::move(c));
          ent_.emplace_back();
        }
        return it->second;
      }

      void expand(std::size_t i) {
        Configuration const C  = cfg_[i];
        Store&              st = *st_;
        Perm                pa = st.node_perm(C.alpha);
        Entry               e;
        e.cycles = pa.cycles();
        e.pis    = perm_conjugators(pa, st.node_perm(C.beta));
        for (auto const& pi : e.pis) {
          std::vector<std::size_t> succ;
          for (auto const& cyc : e.cycles) {
            Letter        x = cyc[0];
            auto          m = cyc.size();
            Configuration n;
            n.alpha = power_section(st, C.alpha, m, x);
            n.beta  = power_section(st, C.beta, m, pi[x]);
            NodeId ai = kIdentity, bi = kIdentity;
            for (std::size_t j = 0; j < m; ++j) {
              for (auto [c, d] : C.dp) {
                n.dp.emplace_back(st.node_child(mul(st, ai, c), x),
                                  st.node_child(mul(st, bi, d), pi[x]));
              }
              ai = mul(st, ai, C.alpha);
              bi = mul(st, bi, C.beta);
            }
            std::sort(n.dp.begin(), n.dp.end());
            n.dp.erase(std::unique(n.dp.begin(), n.dp.end()), n.dp.end());
            succ.push_back(intern(std::move(n)));
          }
          e.succ.push_back(std::move(succ));
        }
        ent_[i] = std::move(e);
      }

      std::shared_ptr<Store>               st_;
      std::size_t                          cap_;
      std::vector<Configuration>           cfg_;
      std::vector<Entry>                   ent_;
      std::map<Configuration, std::size_t> index_;
      std::size_t                          done_ = 0;
    };

    NodeId conjugate_node(Store& st, NodeId h, NodeId a) {
      return mul(st, mul(st, st.invert(h), a), h);
    }

    // Sections of a conjugator with permutation pi for main pair (alpha,
    // beta), given the section at each orbit representative.
    std::vector<NodeId> orbit_children(Store& st, NodeId alpha, NodeId beta, Perm const& pi,
                                       std::vector<NodeId> const& at_rep) {
      std::vector<NodeId> ch(st.degree(), kIdentity);
      auto                cycles = st.node_perm(alpha).cycles();
      for (std::size_t r = 0; r < cycles.size(); ++r) {
        Letter x = cycles[r][0];
        for (std::size_t j = 0; j < cycles[r].size(); ++j) {
          ch[cycles[r][j]] = mul(st, mul(st, st.invert(power_section(st, alpha, j, x)), at_rep[r]),
                                 power_section(st, beta, j, pi[x]));
        }
      }
      return ch;
    }

    std::pair<NodeId, NodeId> input_nodes(Element const& a, Element const& b) {
      if (a.store() != b.store()) {
        throw std::invalid_argument("elements belong to different stores");
      }
      return {require_node(a), require_node(b)};
    }

    void require_bounded(Element const& g, char const* which) {
      if (!polynomial_degree(g).bounded()) {
        throw NotBounded(std::string(which) + " input is not bounded");
      }
    }

    RestrictedDecision finish(Element const& a, Element const& b, NodeId h,
                              std::string rule) {
      auto&              st = *a.store();
      RestrictedDecision dec;
      dec.rule = std::move(rule);
      if (conjugate_node(st, h, *a.node()) != *b.node()) {
        dec.kind   = RestrictedDecision::Kind::Unknown;
        dec.reason = "synthesized conjugator failed verification";
        return dec;
      }
      Element he = Element::from_node(a.store(), h);
      if (auto depth = finitary_depth(he)) {
        dec.cls   = RestrictedDecision::Class::Finitary;
        dec.depth = *depth;
      } else if (polynomial_degree(he).bounded()) {
        dec.cls = RestrictedDecision::Class::Bounded;
      } else {
        dec.kind   = RestrictedDecision::Kind::Unknown;
        dec.reason = "synthesized conjugator is not bounded";
        return dec;
      }
      dec.kind       = RestrictedDecision::Kind::Conjugate;
      dec.conjugator = he;
      return dec;
    }
  }  // namespace

  ConfigurationSet configurations(Element const& a, Element const& b, std::size_t cap) {
    auto [an, bn] = input_nodes(a, b);
    Universe u(a.store(), cap);
    auto     root = u.add_root(an, bn);
    if (!u.close()) {
      ConfigurationSet s;
      s.status = ConfigurationSet::Status::ExceededCap;
      s.store  = a.store();
      return s;
    }
    auto             all = u.full();
    ConfigurationSet s;
    s.store = a.store();
    if (all.choices[root].empty()) {
      return s;
    }
    std::vector<std::size_t> order{root};
    std::map<std::size_t, std::size_t> renum{{root, 0}};
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (auto const& succ : all.successors[order[i]]) {
        for (auto n : succ) {
          if (renum.emplace(n, order.size()).second) {
            order.push_back(n);
          }
        }
      }
    }
    for (auto c : order) {
      s.configs.push_back(all.configs[c]);
      s.choices.push_back(all.choices[c]);
      s.reps.push_back(all.reps[c]);
      auto succ = all.successors[c];
      for (auto& row : succ) {
        for (auto& n : row) {
          n = renum.at(n);
        }
      }
      s.successors.push_back(std::move(succ));
    }
    return s;
  }

  FinitarySatisfaction finitary_satisfiable(ConfigurationSet const& set) {
    FinitarySatisfaction out;
    std::size_t const    n = set.size();
    out.depth.assign(n, std::nullopt);
    out.witness.assign(n, std::nullopt);
    std::vector<std::size_t> pick(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
      auto const& C  = set.configs[c];
      bool        ok = C.alpha == C.beta;
      for (auto [x, y] : C.dp) {
        ok = ok && x == y;
      }
      if (ok) {
        out.depth[c] = 0;
      }
    }
    for (std::size_t r = 1;; ++r) {
      std::vector<std::pair<std::size_t, std::size_t>> added;
      for (std::size_t c = 0; c < n; ++c) {
        if (out.depth[c]) {
          continue;
        }
        for (std::size_t k = 0; k < set.choices[c].size(); ++k) {
          auto const& succ = set.successors[c][k];
          if (std::all_of(succ.begin(), succ.end(),
                          [&](std::size_t s) { return out.depth[s] && *out.depth[s] < r; })) {
            added.emplace_back(c, k);
            break;
          }
        }
      }
      if (added.empty()) {
        break;
      }
      for (auto [c, k] : added) {
        out.depth[c] = r;
        pick[c]      = k;
      }
      out.rounds = r;
    }

    std::vector<std::size_t> by_depth;
    for (std::size_t c = 0; c < n; ++c) {
      if (out.depth[c]) {
        by_depth.push_back(c);
      }
    }
    std::stable_sort(by_depth.begin(), by_depth.end(), [&](std::size_t x, std::size_t y) {
      return *out.depth[x] < *out.depth[y];
    });
    Store& st = *set.store;
    for (auto c : by_depth) {
      if (*out.depth[c] == 0) {
        out.witness[c] = kIdentity;
        continue;
      }
      auto const&         C  = set.configs[c];
      auto const&         pi = set.choices[c][pick[c]];
      std::vector<NodeId> at_rep;
      for (auto s : set.successors[c][pick[c]]) {
        at_rep.push_back(*out.witness[s]);
      }
      out.witness[c] = st.make_node(pi, orbit_children(st, C.alpha, C.beta, pi, at_rep));
    }
    return out;
  }

  RestrictedDecision conjugate_in_pol_minus1(Element const& a, Element const& b,
                                             std::size_t cap) {
    auto [an, bn] = input_nodes(a, b);
    Universe u(a.store(), cap);
    auto     root = u.add_root(an, bn);
    if (!u.close()) {
      RestrictedDecision dec;
      dec.reason = "configurations exceed the cap of " + std::to_string(cap);
      return dec;
    }
    auto sat = finitary_satisfiable(u.full());
    if (!sat.depth[root]) {
      RestrictedDecision dec;
      dec.kind   = RestrictedDecision::Kind::NotConjugate;
      dec.reason = "root configuration is not satisfied by a finitary automorphism";
      return dec;
    }
    return finish(Element::from_node(a.store(), an), Element::from_node(a.store(), bn),
                  *sat.witness[root], "finitary");
  }

  RestrictedDecision conjugate_in_pol0_cyclic(Element const& a, Element const& b,
                                              std::size_t cap) {
    auto [an, bn] = input_nodes(a, b);
    require_bounded(a, "first");
    require_bounded(b, "second");
    auto    store = a.store();
    Store&  st    = *store;
    Element ae    = Element::from_node(store, an);
    Element be    = Element::from_node(store, bn);

    RestrictedDecision dec;
    auto               g = conj_graph(ae, be, {cap, true});
    if (g.status == ConjGraph::Status::Unknown) {
      dec.reason = g.reason;
      return dec;
    }
    if (g.roots.empty()) {
      dec.kind   = RestrictedDecision::Kind::NotConjugate;
      dec.reason = "not conjugate in the full automorphism group";
      return dec;
    }
    std::vector<NodeId> an_side, bn_side;
    for (auto const& e : g.a_side) {
      an_side.push_back(require_node(e));
    }
    for (auto const& e : g.b_side) {
      bn_side.push_back(require_node(e));
    }

    using Pair = std::pair<std::size_t, std::size_t>;
    std::vector<Pair> pairs;
    for (auto const& v : g.vertices) {
      pairs.emplace_back(v.c, v.d);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    Universe                    u(store, cap);
    std::map<Pair, std::size_t> root_of;
    struct Shift {
      NodeId      gamma, delta;
      std::size_t config;
    };
    std::map<Pair, std::vector<Shift>> shifts;
    for (auto const& p : pairs) {
      NodeId c = an_side[p.first], d = bn_side[p.second];
      root_of[p] = u.add_root(c, d);
      for (auto gamma : st.reachable(c)) {
        for (auto delta : st.reachable(d)) {
          NodeId c2 = conjugate_node(st, gamma, c);
          NodeId d2 = conjugate_node(st, delta, d);
          if (perm_conjugators(st.node_perm(c2), st.node_perm(d2)).empty()) {
            continue;
          }
          shifts[p].push_back({gamma, delta, u.add_root(c2, d2)});
        }
      }
      if (u.size() > cap) {
        break;
      }
    }
    if (!u.close()) {
      dec.reason = "configurations exceed the cap of " + std::to_string(cap);
      return dec;
    }
    auto full = u.full();
    auto sat  = finitary_satisfiable(full);

    std::map<Pair, std::pair<NodeId, std::string>> known;
    // Finitary conjugators.
    for (auto const& p : pairs) {
      if (auto w = sat.witness[root_of[p]]) {
        known[p] = {*w, "finitary"};
      }
    }
    // Moving circuit: h = gamma f delta^-1 with f finitary.
    for (auto const& p : pairs) {
      if (known.count(p) != 0) {
        continue;
      }
      for (auto const& s : shifts[p]) {
        if (auto w = sat.witness[s.config]) {
          known[p] = {mul(st, mul(st, s.gamma, *w), st.invert(s.delta)), "moving-circuit"};
          break;
        }
      }
    }

    // Fixed circuit: vertex v steps to w through a fixed point x of c when
    // every other orbit leads to a finitarily satisfiable configuration.
    std::size_t const nv = g.vertices.size();
    std::map<Pair, std::vector<std::size_t>> vert_of;
    for (std::size_t v = 0; v < nv; ++v) {
      vert_of[{g.vertices[v].c, g.vertices[v].d}].push_back(v);
    }
    auto off_circuit = [&](std::size_t v, std::size_t skip) -> std::optional<std::vector<NodeId>> {
      auto const& vx = g.vertices[v];
      auto        rc = root_of.at({vx.c, vx.d});
      auto const& e  = u.entry(rc);
      auto        k  = static_cast<std::size_t>(
          std::find(e.pis.begin(), e.pis.end(), vx.pi) - e.pis.begin());
      std::vector<NodeId> at(e.cycles.size(), kIdentity);
      for (std::size_t r = 0; r < e.cycles.size(); ++r) {
        if (r == skip) {
          continue;
        }
        auto w = sat.witness[e.succ[k][r]];
        if (!w) {
          return std::nullopt;
        }
        at[r] = *w;
      }
      return at;
    };
    struct Step {
      std::size_t target;
      std::size_t cycle;
    };
    std::vector<std::vector<Step>>          step(nv);
    std::vector<std::vector<std::uint32_t>> adj(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      auto cycles = root_perm(g.a_side[g.vertices[v].c]).cycles();
      for (std::size_t r = 0; r < cycles.size(); ++r) {
        if (cycles[r].size() != 1 || !off_circuit(v, r)) {
          continue;
        }
        auto next = g.successor(v, cycles[r][0]);
        auto it   = vert_of.find(next);
        if (it == vert_of.end()) {
          continue;
        }
        for (auto w : it->second) {
          step[v].push_back({w, r});
          adj[v].push_back(static_cast<std::uint32_t>(w));
        }
      }
    }
    auto comps = strongly_connected_components(adj);
    auto cidx  = component_index(comps, nv);
    std::size_t circuit_id = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      Pair p{g.vertices[v].c, g.vertices[v].d};
      if (known.count(p) != 0) {
        continue;
      }
      // Shortest closed walk from v inside its component.
      std::vector<std::size_t> prev(nv, npos), prev_cycle(nv, 0);
      std::deque<std::size_t>  todo;
      bool                     closed = false;
      std::size_t              last   = npos, last_cycle = 0;
      todo.push_back(v);
      std::vector<bool> seen(nv, false);
      seen[v] = true;
      while (!todo.empty() && !closed) {
        auto x = todo.front();
        todo.pop_front();
        for (auto const& s : step[x]) {
          if (cidx[s.target] != cidx[v]) {
            continue;
          }
          if (s.target == v) {
            closed     = true;
            last       = x;
            last_cycle = s.cycle;
            break;
          }
          if (!seen[s.target]) {
            seen[s.target]       = true;
            prev[s.target]       = x;
            prev_cycle[s.target] = s.cycle;
            todo.push_back(s.target);
          }
        }
      }
      if (!closed) {
        continue;
      }
      std::vector<std::size_t> walk;       // walk[0] = v
      std::vector<std::size_t> walk_cycle;  // cycle taken out of walk[j]
      for (auto x = last; x != v; x = prev[x]) {
        walk.push_back(x);
      }
      walk.push_back(v);
      std::reverse(walk.begin(), walk.end());
      for (std::size_t j = 0; j + 1 < walk.size(); ++j) {
        walk_cycle.push_back(prev_cycle[walk[j + 1]]);
      }
      walk_cycle.push_back(last_cycle);

      std::vector<SymbolId> syms;
      for (std::size_t j = 0; j < walk.size(); ++j) {
        syms.push_back(st.declare_symbol("circuit" + std::to_string(circuit_id) + "_"
                                         + std::to_string(j)));
      }
      ++circuit_id;
      for (std::size_t j = 0; j < walk.size(); ++j) {
        auto const& vx     = g.vertices[walk[j]];
        NodeId      c      = an_side[vx.c];
        NodeId      d      = bn_side[vx.d];
        auto        at     = *off_circuit(walk[j], walk_cycle[j]);
        auto        cycles = st.node_perm(c).cycles();
        std::vector<Word> sections(st.degree());
        for (std::size_t r = 0; r < cycles.size(); ++r) {
          Letter x = cycles[r][0];
          if (r == walk_cycle[j]) {
            sections[x] = {Atom::sym(syms[(j + 1) % walk.size()])};
            continue;
          }
          for (std::size_t i = 0; i < cycles[r].size(); ++i) {
            sections[cycles[r][i]] = {
                Atom::node(st.invert(power_section(st, c, i, x))), Atom::node(at[r]),
                Atom::node(power_section(st, d, i, vx.pi[x]))};
          }
        }
        st.define_symbol(syms[j], vx.pi, std::move(sections));
      }
      for (std::size_t j = 0; j < walk.size(); ++j) {
        auto n = st.resolve({Atom::sym(syms[j])});
        Pair q{g.vertices[walk[j]].c, g.vertices[walk[j]].d};
        if (n && known.count(q) == 0) {
          known[q] = {*n, "fixed-circuit"};
        }
      }
    }

    // Closure: every orbit representative leads to a settled pair.
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t v = 0; v < nv; ++v) {
        auto const& vx = g.vertices[v];
        Pair        p{vx.c, vx.d};
        if (known.count(p) != 0) {
          continue;
        }
        NodeId              c = an_side[vx.c], d = bn_side[vx.d];
        std::vector<NodeId> at;
        bool                ok = true;
        for (auto const& cyc : st.node_perm(c).cycles()) {
          auto it = known.find(g.successor(v, cyc[0]));
          if (it == known.end()) {
            ok = false;
            break;
          }
          at.push_back(it->second.first);
        }
        if (ok) {
          known[p] = {st.make_node(vx.pi, orbit_children(st, c, d, vx.pi, at)), "reduction"};
          changed  = true;
        }
      }
    }

    auto it = known.find({0, 0});
    if (it == known.end()) {
      dec.kind   = RestrictedDecision::Kind::NotConjugate;
      dec.reason = "no bounded conjugator: the input pair is not settled by any rule";
      return dec;
    }
    return finish(ae, be, it->second.first, it->second.second);
  }

  RestrictedDecision conjugate_in_pol_inf(Element const& a, Element const& b,
                                          std::size_t cap) {
    return conjugate_in_pol0_cyclic(a, b, cap);
  }

  // ---------------------------------------------------------------- matrices

  std::size_t ChoiceSystem::choice_count() const {
    std::size_t n = 1;
    for (auto const& ch : lambda.choices) {
      if (ch.empty()) {
        return 0;
      }
      if (n > std::numeric_limits<std::size_t>::max() / ch.size()) {
        return std::numeric_limits<std::size_t>::max();
      }
      n *= ch.size();
    }
    return n;
  }

  std::vector<std::size_t> ChoiceSystem::choice_at(std::size_t i) const {
    std::vector<std::size_t> out(lambda.size());
    for (std::size_t c = lambda.size(); c-- > 0;) {
      auto k = lambda.choices[c].size();
      out[c] = i % k;
      i /= k;
    }
    return out;
  }

  std::optional<std::size_t> ChoiceSystem::coordinate(std::size_t config,
                                                      NodePair const& p) const {
    auto it = std::lower_bound(coords.begin(), coords.end(), std::make_pair(config, p));
    if (it == coords.end() || *it != std::make_pair(config, p)) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - coords.begin());
  }

  Matrix ChoiceSystem::matrix(std::vector<std::size_t> const& choice) const {
    Store& st = *lambda.store;
    Matrix m(dimension(), std::vector<std::uint64_t>(dimension(), 0));
    for (std::size_t c = 0; c < lambda.size(); ++c) {
      auto const& C      = lambda.configs[c];
      auto const& pi     = lambda.choices[c][choice[c]];
      auto        cycles = st.node_perm(C.alpha).cycles();
      for (std::size_t r = 0; r < cycles.size(); ++r) {
        Letter x      = cycles[r][0];
        auto   target = lambda.successors[c][choice[c]][r];
        for (auto const& p : C.dp) {
          auto   src = *coordinate(c, p);
          NodeId ai = kIdentity, bi = kIdentity;
          for (std::size_t i = 0; i < cycles[r].size(); ++i) {
            NodePair q{st.node_child(mul(st, ai, p.first), x),
                       st.node_child(mul(st, bi, p.second), pi[x])};
            m[*coordinate(target, q)][src] += 1;
            ai = mul(st, ai, C.alpha);
            bi = mul(st, bi, C.beta);
          }
        }
      }
    }
    return m;
  }

  std::vector<std::uint8_t> ChoiceSystem::theta(std::vector<std::size_t> const& choice) const {
    Store&                    st = *lambda.store;
    std::vector<std::uint8_t> t(dimension(), 0);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      auto const& [c, p] = coords[i];
      auto const& pi     = lambda.choices[c][choice[c]];
      Perm        q      = st.node_perm(p.first).inverse() * pi * st.node_perm(p.second);
      t[i]               = q.is_identity() ? 0 : 1;
    }
    return t;
  }

  ChoiceSystem choice_system(Element const& a, Element const& b, std::size_t cap) {
    require_bounded(a, "first");
    require_bounded(b, "second");
    ChoiceSystem sys;
    sys.lambda = configurations(a, b, cap);
    for (std::size_t c = 0; c < sys.lambda.size(); ++c) {
      for (auto const& p : sys.lambda.configs[c].dp) {
        sys.coords.emplace_back(c, p);
      }
    }
    sys.u0.assign(sys.coords.size(), 0);
    if (!sys.coords.empty()) {
      sys.u0[*sys.coordinate(0, {kIdentity, kIdentity})] = 1;
    }
    return sys;
  }

  std::vector<std::uint64_t> apply(Matrix const& m, std::vector<std::uint64_t> const& u,
                                   std::uint64_t threshold) {
    std::vector<std::uint64_t> v(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < u.size(); ++j) {
        if (m[i][j] == 0 || u[j] == 0) {
          continue;
        }
        std::uint64_t add = u[j] > threshold / m[i][j] ? threshold : m[i][j] * u[j];
        v[i]              = v[i] > threshold - std::min(add, threshold) ? threshold : v[i] + add;
      }
    }
    return v;
  }

  std::uint64_t dot(std::vector<std::uint8_t> const& theta, std::vector<std::uint64_t> const& u,
                    std::uint64_t threshold) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (theta[i] != 0) {
        s = s > threshold - std::min(u[i], threshold) ? threshold : s + u[i];
      }
    }
    return s;
  }

  namespace {
    // Walk-count boundedness on the phase-expanded coordinate graph: the
    // number of walks from the start to active nodes stays bounded iff every
    // such walk meets at most one nontrivial component and that component is
    // a simple cycle of weight one.
    struct PhaseGraph {
      std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> out;
      std::vector<bool>                                                 active;

      bool bounded(std::size_t start) const {
        std::size_t const                       n = out.size();
        std::vector<std::vector<std::uint32_t>> adj(n);
        for (std::size_t v = 0; v < n; ++v) {
          for (auto [w, wt] : out[v]) {
            adj[v].push_back(w);
          }
        }
        auto comps = strongly_connected_components(adj);
        auto cidx  = component_index(comps, n);
        // 0: trivial, 1: simple weight-one cycle, 2: anything larger.
        std::vector<int> kind(comps.size(), 0);
        for (std::size_t c = 0; c < comps.size(); ++c) {
          std::uint64_t inner = 0;
          bool          loop  = false;
          for (auto v : comps[c]) {
            std::uint64_t here = 0;
            for (auto [w, wt] : out[v]) {
              if (cidx[w] == c) {
                here += wt;
                loop = true;
              }
            }
            if (here > 1) {
              kind[c] = 2;
            }
            inner += here;
          }
          if (kind[c] == 0 && loop) {
            kind[c] = inner == comps[c].size() ? 1 : 2;
          }
        }
        // Components come sinks first; sweep sources first.
        std::vector<int>  level(comps.size(), -1);
        level[cidx[start]] = kind[cidx[start]];
        for (std::size_t c = comps.size(); c-- > 0;) {
          if (level[c] < 0) {
            continue;
          }
          for (auto v : comps[c]) {
            if (active[v] && level[c] > 1) {
              return false;
            }
            for (auto [w, wt] : out[v]) {
              auto cw = cidx[w];
              if (cw == c) {
                continue;
              }
              level[cw] = std::max(level[cw], std::min(level[c] + kind[cw], 2));
            }
          }
        }
        return true;
      }
    };
  }  // namespace

  ChoiceSearchResult bounded_choice_search(ChoiceSystem const& sys, SearchBounds const& bounds) {
    ChoiceSearchResult res;
    if (sys.lambda.size() == 0) {
      return res;
    }
    Store&            st  = *sys.lambda.store;
    auto const&       lam = sys.lambda;
    std::size_t const dim = sys.dimension();

    // Per configuration and choice: edges (source coord, target coord).
    std::vector<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>> moves(lam.size());
    std::vector<std::vector<std::vector<std::size_t>>>                         act(lam.size());
    for (std::size_t c = 0; c < lam.size(); ++c) {
      for (std::size_t k = 0; k < lam.choices[c].size(); ++k) {
        std::vector<std::size_t> ch(lam.size(), 0);
        ch[c]  = k;
        auto m = sys.matrix(ch);
        auto t = sys.theta(ch);
        std::vector<std::pair<std::size_t, std::size_t>> mv;
        std::vector<std::size_t>                         on;
        for (std::size_t j = 0; j < dim; ++j) {
          if (sys.coords[j].first != c) {
            continue;
          }
          for (std::size_t i = 0; i < dim; ++i) {
            for (std::uint64_t r = 0; r < m[i][j]; ++r) {
              mv.emplace_back(j, i);
            }
          }
          if (t[j] != 0) {
            on.push_back(j);
          }
        }
        moves[c].push_back(std::move(mv));
        act[c].push_back(std::move(on));
      }
    }
    std::size_t const start_coord = *sys.coordinate(0, {kIdentity, kIdentity});

    for (std::size_t total = 1; total <= bounds.preperiod + bounds.period; ++total) {
      for (std::size_t p = 0; p <= bounds.preperiod && p < total; ++p) {
        std::size_t q = total - p;
        if (q > bounds.period) {
          continue;
        }
        std::size_t const L    = p + q;
        auto              next = [&](std::size_t t) { return t + 1 < L ? t + 1 : p; };
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> assigned;
        std::vector<std::pair<std::size_t, std::size_t>>           order{{0, 0}};
        std::set<std::pair<std::size_t, std::size_t>>              queued{{0, 0}};

        auto check = [&]() {
          PhaseGraph pg;
          pg.out.assign(L * dim, {});
          pg.active.assign(L * dim, false);
          for (auto const& [tc, k] : assigned) {
            auto [t, c] = tc;
            for (auto [j, i] : moves[c][k]) {
              auto& o = pg.out[t * dim + j];
              auto  w = static_cast<std::uint32_t>(next(t) * dim + i);
              auto  f = std::find_if(o.begin(), o.end(), [&](auto const& e) { return e.first == w; });
              if (f == o.end()) {
                o.emplace_back(w, 1);
              } else {
                ++f->second;
              }
            }
            for (auto j : act[c][k]) {
              pg.active[t * dim + j] = true;
            }
          }
          return pg.bounded(start_coord);
        };

        std::function<bool(std::size_t)> dfs = [&](std::size_t idx) -> bool {
          if (res.explored >= bounds.budget) {
            res.budget_hit = true;
            return false;
          }
          ++res.explored;
          if (idx == order.size()) {
            return true;
          }
          auto [t, c] = order[idx];
          for (std::size_t k = 0; k < lam.choices[c].size(); ++k) {
            assigned[{t, c}] = k;
            std::vector<std::pair<std::size_t, std::size_t>> pushed;
            for (auto n : lam.successors[c][k]) {
              std::pair<std::size_t, std::size_t> key{next(t), n};
              if (queued.insert(key).second) {
                order.push_back(key);
                pushed.push_back(key);
              }
            }
            if (check() && dfs(idx + 1)) {
              return true;
            }
            for (auto const& key : pushed) {
              queued.erase(key);
              order.pop_back();
            }
            assigned.erase({t, c});
            if (res.budget_hit) {
              return false;
            }
          }
          return false;
        };
        if (!dfs(0)) {
          if (res.budget_hit) {
            return res;
          }
          continue;
        }

        // Synthesize and verify the conjugator following the choice.
        std::map<std::pair<std::size_t, std::size_t>, SymbolId> sym;
        for (auto const& [tc, k] : assigned) {
          sym[tc] = st.declare_symbol("H" + std::to_string(tc.first) + "_"
                                      + std::to_string(tc.second));
        }
        for (auto const& [tc, k] : assigned) {
          auto [t, c]        = tc;
          auto const& C      = lam.configs[c];
          auto const& pi     = lam.choices[c][k];
          auto        cycles = st.node_perm(C.alpha).cycles();
          std::vector<Word> sections(st.degree());
          for (std::size_t r = 0; r < cycles.size(); ++r) {
            Letter x = cycles[r][0];
            auto   s = sym.at({next(t), lam.successors[c][k][r]});
            for (std::size_t i = 0; i < cycles[r].size(); ++i) {
              sections[cycles[r][i]] = {
                  Atom::node(st.invert(power_section(st, C.alpha, i, x))), Atom::sym(s),
                  Atom::node(power_section(st, C.beta, i, pi[x]))};
            }
          }
          st.define_symbol(sym.at(tc), pi, std::move(sections));
        }
        auto h = st.resolve({Atom::sym(sym.at({0, 0}))});
        if (!h) {
          continue;
        }
        auto const& root = lam.configs[0];
        Element     he   = Element::from_node(lam.store, *h);
        if (conjugate_node(st, *h, root.alpha) != root.beta || !polynomial_degree(he).bounded()) {
          continue;
        }
        res.kind      = ChoiceSearchResult::Kind::Found;
        res.preperiod = p;
        res.period    = q;
        res.choice.assign(L, {});
        for (auto const& [tc, k] : assigned) {
          res.choice[tc.first][tc.second] = k;
        }
        res.conjugator = he;
        return res;
      }
    }
    return res;
  }

}  // namespace arboreal
