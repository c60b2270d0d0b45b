#include "arboreal/scc.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace arboreal {

  std::vector<std::vector<std::uint32_t>> strongly_connected_components(
      std::vector<std::vector<std::uint32_t>> const& adj) {
    constexpr auto none = std::numeric_limits<std::uint32_t>::max();
    std::size_t const n = adj.size();
    std::vector<std::uint32_t> index(n, none), low(n, 0);
    std::vector<bool>          on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::vector<std::vector<std::uint32_t>> out;
    std::uint32_t counter = 0;

    std::vector<std::pair<std::uint32_t, std::size_t>> call;
    for (std::uint32_t root = 0; root < n; ++root) {
      if (index[root] != none) {
        continue;
      }
      call.emplace_back(root, 0);
      index[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!call.empty()) {
        auto& [v, i] = call.back();
        if (i < adj[v].size()) {
          std::uint32_t w = adj[v][i++];
          if (index[w] == none) {
            index[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = true;
            call.emplace_back(w, 0);
          } else if (on_stack[w]) {
            low[v] = std::min(low[v], index[w]);
          }
          continue;
        }
        std::uint32_t vv = v;
        if (low[vv] == index[vv]) {
          std::vector<std::uint32_t> comp;
          std::uint32_t              w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
          } while (w != vv);
          std::sort(comp.begin(), comp.end());
          out.push_back(std::move(comp));
        }
        call.pop_back();
        if (!call.empty()) {
          auto u = call.back().first;
          low[u] = std::min(low[u], low[vv]);
        }
      }
    }
    return out;
  }

  std::vector<std::uint32_t> component_index(
      std::vector<std::vector<std::uint32_t>> const& components,
      std::size_t                                    n) {
    std::vector<std::uint32_t> idx(n, 0);
    for (std::uint32_t c = 0; c < components.size(); ++c) {
      for (auto v : components[c]) {
        idx[v] = c;
      }
    }
    return idx;
  }

}  // namespace arboreal
