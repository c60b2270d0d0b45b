#ifndef ARBOREAL_ELEMENT_HPP
#define ARBOREAL_ELEMENT_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "arboreal/perm.hpp"
#include "arboreal/store.hpp"

namespace arboreal {

  // A tree automorphism: a normalized word over nodes and symbols of a store.
  // Elements are immutable values.
  class Element {
   public:
    Element() = default;
    Element(std::shared_ptr<Store> store, Word word);

    static Element identity(std::shared_ptr<Store> store);
    static Element from_node(std::shared_ptr<Store> store, NodeId n);
    static Element from_symbol(std::shared_ptr<Store> store, SymbolId s);

    std::shared_ptr<Store> const& store() const noexcept {
      return store_;
    }
    Word const& word() const noexcept {
      return word_;
    }
    std::size_t degree() const {
      return store_->degree();
    }

    // The node of this element if its word is already a single node.
    std::optional<NodeId> node() const;

   private:
    std::shared_ptr<Store> store_;
    Word                   word_;
  };

  enum class Truth { False, True, ExceededCap };

  struct Machine {
    std::size_t                             degree = 0;
    std::vector<NodeId>                     states;  // initial state first
    std::vector<Perm>                       output;
    std::vector<std::vector<std::uint32_t>> transition;
    std::optional<std::uint32_t>            trivial;

    std::size_t size() const noexcept {
      return states.size();
    }
  };

  struct OrbitSection {
    std::size_t size;
    Element     section;
  };

  Perm    root_perm(Element const& g);
  Element section(Element const& g, Letter x);
  Element section_word(Element const& g, std::vector<Letter> const& v);
  Element multiply(Element const& g, Element const& h);
  Element inverse(Element const& g);
  Element power(Element const& g, std::int64_t n);
  Element operator*(Element const& g, Element const& h);

  std::vector<Letter> act(Element const& g, std::vector<Letter> const& v);

  Truth equal(Element const& g, Element const& h,
              std::size_t cap = kDefaultEqualityCap);
  // equal() that throws CapExceeded instead of returning ExceededCap.
  bool same(Element const& g, Element const& h);

  // The element folded into a single node, if its state closure fits the cap.
  std::optional<Element> resolved(Element const& g,
                                  std::size_t cap = kDefaultStateCap);
  // resolved() that throws CapExceeded.
  NodeId require_node(Element const& g, std::size_t cap = kDefaultStateCap);

  Machine                machine_of(Store const& store, NodeId n);
  std::optional<Machine> minimize(Element const& g,
                                  std::size_t cap = kDefaultStateCap);

  std::vector<Letter> orbit(Element const& g, Letter x);
  // (g^i)|_x as g|_x g|_{(x)g} ... g|_{(x)g^{i-1}}.
  Element      power_section(Element const& g, std::size_t i, Letter x);
  OrbitSection orbit_power_section(Element const& g, Letter x);

  // Node-level versions used by the decision procedures.
  NodeId power_section(Store& store, NodeId g, std::size_t i, Letter x);
  std::vector<Letter> orbit(Store const& store, NodeId g, Letter x);

}  // namespace arboreal

#endif
