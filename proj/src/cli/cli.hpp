#ifndef ARBOREAL_CLI_HPP
#define ARBOREAL_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "arboreal/conj_aut.hpp"
#include "arboreal/order.hpp"
#include "arboreal/system.hpp"

namespace arboreal::cli {

  // args[0] is the program name.  Returns the process exit code:
  // 0 affirmative or value, 1 negative verdict, 2 unknown or cap, 3 error.
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

  // Vertices in discovery order; parallel edges with equal labels are merged.
  std::string emit_dot(OrderGraph const& graph, NodeNames const& names);
  std::string emit_dot(ConjGraph const& graph, NodeNames const& names);

  std::string element_label(Element const& g, NodeNames const& names);

  // FNV-1a, 64 bit, as 16 hex digits.
  std::string digest(std::string_view bytes);

}  // namespace arboreal::cli

#endif
