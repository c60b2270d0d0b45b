#ifndef ARBOREAL_SCC_HPP
#define ARBOREAL_SCC_HPP

#include <cstdint>
#include <vector>

namespace arboreal {

  // Tarjan's algorithm, iterative.  Components come out in reverse
  // topological order: every edge leaving a component points to a component
  // listed earlier.
  std::vector<std::vector<std::uint32_t>> strongly_connected_components(
      std::vector<std::vector<std::uint32_t>> const& adjacency);

  // Component index per vertex, numbered as in the list above.
  std::vector<std::uint32_t> component_index(
      std::vector<std::vector<std::uint32_t>> const& components,
      std::size_t                                    n);

}  // namespace arboreal

#endif
