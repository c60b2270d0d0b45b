#include "arboreal/classify.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <unordered_set>

#include "arboreal/scc.hpp"

namespace arboreal {

  namespace {
    constexpr auto kSat = std::numeric_limits<std::uint64_t>::max();

    std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
      return a > kSat - b ? kSat : a + b;
    }

    Machine require_machine(Element const& g) {
      auto m = minimize(g);
      if (!m) {
        throw CapExceeded("element is not finite-state within the state cap");
      }
      return *m;
    }

    // Nontrivial part of a machine: adjacency lists with edge multiplicity.
    std::vector<std::vector<std::uint32_t>> nontrivial_graph(Machine const& m) {
      std::vector<std::vector<std::uint32_t>> adj(m.size());
      for (std::uint32_t s = 0; s < m.size(); ++s) {
        if (m.trivial && s == *m.trivial) {
          continue;
        }
        for (auto t : m.transition[s]) {
          if (!(m.trivial && t == *m.trivial)) {
            adj[s].push_back(t);
          }
        }
      }
      return adj;
    }
  }  // namespace

  std::string ActivityClass::str() const {
    switch (kind) {
      case Kind::Finitary:
        return "finitary(" + std::to_string(value) + ")";
      case Kind::Polynomial:
        return "polynomial(" + std::to_string(value) + ")";
      case Kind::Exponential:
        return "exponential";
      default:
        return "unknown";
    }
  }

  std::vector<std::uint64_t> activity(Element const& g, std::size_t k) {
    auto m = require_machine(g);
    std::vector<std::uint64_t> cnt(m.size(), 0), out;
    cnt[0] = 1;
    for (std::size_t j = 0; j <= k; ++j) {
      std::uint64_t theta = 0;
      for (std::size_t s = 0; s < m.size(); ++s) {
        if (!m.output[s].is_identity()) {
          theta = sat_add(theta, cnt[s]);
        }
      }
      out.push_back(theta);
      if (j == k) {
        break;
      }
      std::vector<std::uint64_t> next(m.size(), 0);
      for (std::size_t s = 0; s < m.size(); ++s) {
        if (cnt[s] == 0) {
          continue;
        }
        for (auto t : m.transition[s]) {
          next[t] = sat_add(next[t], cnt[s]);
        }
      }
      cnt = std::move(next);
    }
    return out;
  }

  std::optional<std::size_t> finitary_depth(Element const& g) {
    auto m   = require_machine(g);
    auto adj = nontrivial_graph(m);
    auto comps = strongly_connected_components(adj);
    std::vector<std::size_t> depth(m.size(), 0);
    for (auto const& comp : comps) {
      auto s = comp[0];
      if (m.trivial && s == *m.trivial) {
        continue;
      }
      if (comp.size() > 1
          || std::find(adj[s].begin(), adj[s].end(), s) != adj[s].end()) {
        return std::nullopt;
      }
      std::size_t best = 0;
      for (auto t : adj[s]) {
        best = std::max(best, depth[t]);
      }
      depth[s] = best + 1;
    }
    return depth[0];
  }

  ActivityClass polynomial_degree(Element const& g) {
    auto mm = minimize(g);
    if (!mm) {
      return {ActivityClass::Kind::Unknown, 0, "state cap exceeded"};
    }
    auto const& m     = *mm;
    auto        adj   = nontrivial_graph(m);
    auto        comps = strongly_connected_components(adj);
    auto        cidx  = component_index(comps, m.size());
    // Components come out children-first, so one pass suffices.
    std::vector<std::size_t> cycles(comps.size(), 0);
    std::vector<std::size_t> depth(comps.size(), 0);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      auto const& comp = comps[c];
      if (m.trivial && comp.size() == 1 && comp[0] == *m.trivial) {
        continue;
      }
      std::size_t internal = 0, best_cycles = 0, best_depth = 0;
      for (auto s : comp) {
        for (auto t : adj[s]) {
          if (cidx[t] == c) {
            ++internal;
          } else {
            best_cycles = std::max(best_cycles, cycles[cidx[t]]);
            best_depth  = std::max(best_depth, depth[cidx[t]]);
          }
        }
      }
      if (internal > comp.size()) {
        std::string w = "states";
        for (auto s : comp) {
          w += " " + std::to_string(s);
        }
        return {ActivityClass::Kind::Exponential, 0,
                w + " form a component with more than one cycle"};
      }
      cycles[c] = best_cycles + (internal > 0 ? 1 : 0);
      depth[c]  = best_depth + 1;
    }
    if (m.trivial && *m.trivial == 0) {
      return {ActivityClass::Kind::Finitary, 0, {}};
    }
    auto root = cidx[0];
    if (cycles[root] == 0) {
      return {ActivityClass::Kind::Finitary, depth[root], {}};
    }
    return {ActivityClass::Kind::Polynomial, cycles[root] - 1,
            std::to_string(cycles[root]) + " cycles on a path"};
  }

  std::optional<std::vector<Letter>> circuit_word(Element const& g,
                                                  std::size_t    length_cap) {
    auto m = require_machine(g);
    if (m.trivial && *m.trivial == 0) {
      return std::nullopt;
    }
    std::vector<std::int64_t> parent(m.size(), -1);
    std::vector<Letter>       via(m.size(), 0);
    std::vector<std::size_t>  len(m.size(), 0);
    std::vector<bool>         seen(m.size(), false);
    std::deque<std::uint32_t> todo{0};
    while (!todo.empty()) {
      auto s = todo.front();
      todo.pop_front();
      if (len[s] >= length_cap) {
        continue;
      }
      for (Letter x = 0; x < m.degree; ++x) {
        auto t = m.transition[s][x];
        if (t == 0) {
          std::vector<Letter> w{x};
          for (auto u = s; u != 0; u = static_cast<std::uint32_t>(parent[u])) {
            w.push_back(via[u]);
          }
          std::reverse(w.begin(), w.end());
          return w;
        }
        if (!seen[t]) {
          seen[t]   = true;
          parent[t] = s;
          via[t]    = x;
          len[t]    = len[s] + 1;
          todo.push_back(t);
        }
      }
    }
    return std::nullopt;
  }

  std::optional<std::optional<std::size_t>> ElementIndex::lookup(
      Element const& g,
      Element&       canon) const {
    auto r = resolved(g);
    canon  = r ? *r : g;
    if (r) {
      if (auto it = by_node_.find(*r->node()); it != by_node_.end()) {
        return std::optional<std::size_t>(it->second);
      }
      for (auto i : lazy_) {
        auto t = equal(elements_[i], canon);
        if (t == Truth::ExceededCap) {
          return std::nullopt;
        }
        if (t == Truth::True) {
          return std::optional<std::size_t>(i);
        }
      }
      return std::optional<std::size_t>();
    }
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      auto t = equal(elements_[i], canon);
      if (t == Truth::ExceededCap) {
        return std::nullopt;
      }
      if (t == Truth::True) {
        return std::optional<std::size_t>(i);
      }
    }
    return std::optional<std::size_t>();
  }

  std::optional<std::size_t> ElementIndex::find(Element const& g) const {
    Element canon;
    auto    r = lookup(g, canon);
    return r ? *r : std::nullopt;
  }

  std::optional<std::size_t> ElementIndex::insert(Element const& g) {
    Element canon;
    auto    r = lookup(g, canon);
    if (!r) {
      return std::nullopt;
    }
    if (*r) {
      return **r;
    }
    std::size_t i = elements_.size();
    if (auto n = canon.node()) {
      by_node_.emplace(*n, i);
    } else {
      lazy_.push_back(i);
    }
    elements_.push_back(canon);
    return i;
  }

  std::optional<std::size_t> OrbitSignalizer::index_of(Element const& g) const {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (equal(elements[i], g) == Truth::True) {
        return i;
      }
    }
    return std::nullopt;
  }

  OrbitSignalizer orbit_signalizer(Element const& g, std::size_t cap) {
    OrbitSignalizer os;
    ElementIndex    index;
    index.insert(g);
    for (std::size_t i = 0; i < index.size(); ++i) {
      Element b = index.elements()[i];
      for (auto const& cyc : root_perm(b).cycles()) {
        Letter x = cyc[0];
        auto   s = power_section(b, cyc.size(), x);
        auto   j = index.insert(s);
        if (!j || index.size() > cap) {
          os.elements = index.elements();
          if (os.elements.size() > cap) {
            os.elements.resize(cap);
          }
          os.status = OSStatus::ExceededCap;
          return os;
        }
        os.edges.push_back({i, cyc.size(), *j, x});
      }
    }
    os.elements = index.elements();
    return os;
  }

  namespace {
    // States of the closure of `roots` that lie on or below a cycle.
    std::set<NodeId> cycle_part(Store& store, std::vector<NodeId> const& roots) {
      std::vector<NodeId>                       order;
      std::unordered_map<NodeId, std::uint32_t> index;
      for (auto r : roots) {
        for (auto s : store.reachable(r)) {
          if (index.emplace(s, order.size()).second) {
            order.push_back(s);
          }
        }
      }
      std::vector<std::vector<std::uint32_t>> adj(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        for (auto c : store.node_children(order[i])) {
          adj[i].push_back(index.at(c));
        }
      }
      auto comps = strongly_connected_components(adj);
      std::vector<bool> keep(order.size(), false);
      std::deque<std::uint32_t> todo;
      for (auto const& comp : comps) {
        bool cyclic = comp.size() > 1;
        for (auto t : adj[comp[0]]) {
          cyclic = cyclic || t == comp[0];
        }
        if (cyclic) {
          for (auto v : comp) {
            keep[v] = true;
            todo.push_back(v);
          }
        }
      }
      while (!todo.empty()) {
        auto v = todo.front();
        todo.pop_front();
        for (auto t : adj[v]) {
          if (!keep[t]) {
            keep[t] = true;
            todo.push_back(t);
          }
        }
      }
      std::set<NodeId> out;
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (keep[i]) {
          out.insert(order[i]);
        }
      }
      return out;
    }
  }  // namespace

  NucleusReport nucleus(Element const& g, std::size_t size_cap, std::size_t depth_cap) {
    return nucleus(std::vector<Element>{g}, size_cap, depth_cap);
  }

  NucleusReport nucleus(std::vector<Element> const& generators,
                        std::size_t                 size_cap,
                        std::size_t                 depth_cap) {
    NucleusReport rep;
    if (generators.empty()) {
      rep.reason = "no generators";
      return rep;
    }
    auto                store = generators[0].store();
    std::vector<NodeId> roots{kIdentity};
    for (auto const& g : generators) {
      auto r = resolved(g);
      if (!r) {
        rep.reason = "generator is not finite-state within the state cap";
        return rep;
      }
      roots.push_back(*r->node());
      roots.push_back(store->invert(*r->node()));
    }
    auto                nuc = cycle_part(*store, roots);
    std::vector<NodeId> list(nuc.begin(), nuc.end());
    // Products of pairs (i, j) with max(i, j) >= done are still to be formed.
    std::size_t done = 0;
    while (done < list.size()) {
      std::size_t const n = list.size();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = (i < done ? done : 0); j < n; ++j) {
          auto p = store->multiply(list[i], list[j]);
          if (nuc.count(p) != 0) {
            continue;
          }
          for (auto s : cycle_part(*store, {p})) {
            if (nuc.insert(s).second) {
              list.push_back(s);
            }
          }
          if (list.size() > size_cap) {
            rep.reason = "nucleus candidate exceeds " + std::to_string(size_cap)
                         + " elements";
            return rep;
          }
        }
      }
      done = n;
    }
    // Absorption: deep states of every product lie in the candidate set.
    for (auto s : list) {
      for (auto t : list) {
        std::set<NodeId> level{store->multiply(s, t)};
        for (std::size_t k = 0; k < depth_cap; ++k) {
          std::set<NodeId> next;
          for (auto u : level) {
            for (auto c : store->node_children(u)) {
              next.insert(c);
            }
          }
          level = std::move(next);
        }
        for (auto u : level) {
          for (auto r : store->reachable(u)) {
            if (nuc.count(r) == 0) {
              rep.reason = "absorption not verified at depth "
                           + std::to_string(depth_cap);
              return rep;
            }
          }
        }
      }
    }
    rep.kind = NucleusReport::Kind::Contracting;
    for (auto s : list) {
      rep.nucleus.push_back(Element::from_node(store, s));
    }
    return rep;
  }

}  // namespace arboreal
