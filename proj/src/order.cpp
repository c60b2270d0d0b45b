#include "arboreal/order.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "arboreal/scc.hpp"

namespace arboreal {

  std::string OrderResult::str() const {
    switch (kind) {
      case Kind::Finite:
        return std::to_string(value);
      case Kind::Infinite:
        return "infinite";
      default:
        return "unknown";
    }
  }

  std::optional<OrderGraph> order_graph(Element const& a, std::size_t cap) {
    auto os = orbit_signalizer(a, cap);
    if (!os.complete()) {
      return std::nullopt;
    }
    return os;
  }

  OrderResult order(Element const& a, std::size_t cap) {
    auto g = order_graph(a, cap);
    if (!g) {
      OrderResult r;
      r.reason = "orbit-signalizer exceeds " + std::to_string(cap) + " elements";
      return r;
    }
    return order_from_graph(*g);
  }

  OrderResult order_from_graph(OrderGraph const& graph) {
    std::size_t const n = graph.elements.size();
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (auto const& e : graph.edges) {
      adj[e.source].push_back(static_cast<std::uint32_t>(e.target));
    }
    auto comps = strongly_connected_components(adj);
    auto cidx  = component_index(comps, n);

    OrderResult res;
    for (auto const& e : graph.edges) {
      if (e.label >= 2 && cidx[e.source] == cidx[e.target]) {
        // Close the walk: shortest path from target back to source inside the
        // component.
        std::vector<std::int64_t> prev(n, -1);
        std::vector<std::size_t>  prev_label(n, 0);
        std::deque<std::size_t>   todo{e.target};
        prev[e.target] = static_cast<std::int64_t>(e.target);
        while (!todo.empty() && prev[e.source] < 0) {
          auto v = todo.front();
          todo.pop_front();
          for (auto const& f : graph.edges) {
            if (f.source == v && cidx[f.target] == cidx[v] && prev[f.target] < 0) {
              prev[f.target]       = static_cast<std::int64_t>(v);
              prev_label[f.target] = f.label;
              todo.push_back(f.target);
            }
          }
        }
        std::vector<std::size_t> back, labels;
        for (auto v = e.source; v != e.target; v = static_cast<std::size_t>(prev[v])) {
          back.push_back(v);
          labels.push_back(prev_label[v]);
        }
        res.kind  = OrderResult::Kind::Infinite;
        res.cycle = {e.source, e.target};
        res.labels = {e.label};
        for (auto it = back.rbegin(), lt = labels.rbegin(); it != back.rend(); ++it, ++lt) {
          res.cycle.push_back(*it);
          res.labels.push_back(*lt);
        }
        return res;
      }
    }

    std::vector<std::uint64_t> ord(comps.size(), 1);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      std::uint64_t acc = 1;
      for (auto v : comps[c]) {
        for (auto const& e : graph.edges) {
          if (e.source != v || cidx[e.target] == c) {
            continue;
          }
          std::uint64_t t = ord[cidx[e.target]];
          if (t > UINT64_MAX / e.label) {
            res.reason = "order exceeds the 64-bit range";
            return res;
          }
          t = t * e.label;
          std::uint64_t g = std::gcd(acc, t);
          if (acc / g > UINT64_MAX / t) {
            res.reason = "order exceeds the 64-bit range";
            return res;
          }
          acc = acc / g * t;
        }
      }
      ord[c] = acc;
    }
    res.kind  = OrderResult::Kind::Finite;
    res.value = n == 0 ? 1 : ord[cidx[0]];
    return res;
  }

}  // namespace arboreal
