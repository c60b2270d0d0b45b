#ifndef ARBOREAL_CLASSIFY_HPP
#define ARBOREAL_CLASSIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arboreal/element.hpp"

namespace arboreal {

  struct ActivityClass {
    enum class Kind { Finitary, Polynomial, Exponential, Unknown };

    Kind        kind  = Kind::Unknown;
    std::size_t value = 0;  // depth for Finitary, degree for Polynomial
    std::string witness;

    bool bounded() const noexcept {
      return kind == Kind::Finitary || (kind == Kind::Polynomial && value == 0);
    }
    std::string str() const;
  };

  // theta_0 .. theta_k: number of level-j states with nontrivial root
  // permutation.  Saturates at UINT64_MAX.  Throws CapExceeded.
  std::vector<std::uint64_t> activity(Element const& g, std::size_t k);

  // Length of the longest chain of nontrivial states; nullopt when the
  // machine has a nontrivial cycle.  Throws CapExceeded.
  std::optional<std::size_t> finitary_depth(Element const& g);

  ActivityClass polynomial_degree(Element const& g);

  // Least (by length, then lexicographically) nonempty v with g|_v = g.
  std::optional<std::vector<Letter>> circuit_word(Element const& g,
                                                  std::size_t length_cap = 1u << 20);

  // Element lookup by equality: node ids for resolved elements, pairwise
  // equal() otherwise.
  class ElementIndex {
   public:
    // Index of an element equal to g, inserting it if absent.  Returns
    // nullopt if an equality check ran out of budget.
    std::optional<std::size_t> insert(Element const& g);
    std::optional<std::size_t> find(Element const& g) const;

    std::vector<Element> const& elements() const noexcept {
      return elements_;
    }
    std::size_t size() const noexcept {
      return elements_.size();
    }

   private:
    std::optional<std::optional<std::size_t>> lookup(Element const& g,
                                                     Element&       canon) const;

    std::vector<Element>                      elements_;
    std::unordered_map<NodeId, std::size_t>   by_node_;
    std::vector<std::size_t>                  lazy_;
  };

  struct OSEdge {
    std::size_t source;
    std::size_t label;
    std::size_t target;
    Letter      letter;
  };

  enum class OSStatus { Complete, ExceededCap };

  struct OrbitSignalizer {
    std::vector<Element> elements;
    std::vector<OSEdge>  edges;
    OSStatus             status = OSStatus::Complete;

    bool complete() const noexcept {
      return status == OSStatus::Complete;
    }
    std::optional<std::size_t> index_of(Element const& g) const;
  };

  inline constexpr std::size_t kDefaultOSCap = 10000;

  OrbitSignalizer orbit_signalizer(Element const& g, std::size_t cap = kDefaultOSCap);

  struct NucleusReport {
    enum class Kind { Contracting, Unknown };

    Kind                 kind = Kind::Unknown;
    std::vector<Element> nucleus;
    std::string          reason;
  };

  NucleusReport nucleus(Element const& g,
                        std::size_t    size_cap  = 512,
                        std::size_t    depth_cap = 12);
  NucleusReport nucleus(std::vector<Element> const& generators,
                        std::size_t                 size_cap  = 512,
                        std::size_t                 depth_cap = 12);

}  // namespace arboreal

#endif
