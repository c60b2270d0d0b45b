#ifndef ARBOREAL_ORDER_HPP
#define ARBOREAL_ORDER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arboreal/classify.hpp"

namespace arboreal {

  // Vertices are the orbit-signalizer elements, edges b --m--> b^m|_x.
  using OrderGraph = OrbitSignalizer;

  struct OrderResult {
    enum class Kind { Finite, Infinite, Unknown };

    Kind          kind  = Kind::Unknown;
    std::uint64_t value = 0;
    // For Infinite: a closed walk through an edge labeled >= 2, as vertex
    // indices (first == last) and the labels of its edges.
    std::vector<std::size_t> cycle;
    std::vector<std::size_t> labels;
    std::string              reason;

    std::string str() const;
  };

  // nullopt when the orbit-signalizer exceeds the cap.
  std::optional<OrderGraph> order_graph(Element const& a, std::size_t cap = kDefaultOSCap);

  OrderResult order(Element const& a, std::size_t cap = kDefaultOSCap);
  OrderResult order_from_graph(OrderGraph const& graph);

}  // namespace arboreal

#endif
