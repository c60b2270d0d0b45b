#include <cstdio>
#include <set>
#include <sstream>
#include <tuple>

#include "cli.hpp"

namespace arboreal::cli {

  std::string element_label(Element const& g, NodeNames const& names) {
    return word_string(*g.store(), g.word(), names);
  }

  namespace {
    std::string quote(std::string const& s) {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\') {
          out += '\\';
        }
        out += c;
      }
      return out + "\"";
    }
  }  // namespace

  std::string emit_dot(OrderGraph const& graph, NodeNames const& names) {
    std::ostringstream os;
    os << "digraph order {\n";
    for (std::size_t i = 0; i < graph.elements.size(); ++i) {
      os << "  n" << i << " [label=" << quote(element_label(graph.elements[i], names)) << "];\n";
    }
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
    for (auto const& e : graph.edges) {
      if (seen.emplace(e.source, e.label, e.target).second) {
        os << "  n" << e.source << " -> n" << e.target << " [label=\"" << e.label << "\"];\n";
      }
    }
    os << "}\n";
    return os.str();
  }

  std::string emit_dot(ConjGraph const& graph, NodeNames const& names) {
    std::ostringstream os;
    os << "digraph conj {\n";
    for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
      auto const& v = graph.vertices[i];
      std::string label = "(" + element_label(graph.a_side[v.c], names) + ","
                          + element_label(graph.b_side[v.d], names) + "," + v.pi.str() + ")";
      os << "  v" << i << " [label=" << quote(label) << "];\n";
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto const& e : graph.edges) {
      if (seen.emplace(e.source, e.target).second) {
        os << "  v" << e.source << " -> v" << e.target << ";\n";
      }
    }
    os << "}\n";
    return os.str();
  }

  std::string digest(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

}  // namespace arboreal::cli
