#ifndef ARBOREAL_SYSTEM_HPP
#define ARBOREAL_SYSTEM_HPP

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arboreal/element.hpp"
#include "arboreal/store.hpp"

namespace arboreal {

  class ParseError : public std::runtime_error {
   public:
    ParseError(std::string const& msg, std::size_t line, std::size_t column);

    std::size_t line() const noexcept {
      return line_;
    }
    std::size_t column() const noexcept {
      return column_;
    }

   private:
    std::size_t line_;
    std::size_t column_;
  };

  // A functionally recursive system: an ordered list of symbols of a store.
  class FRSystem {
   public:
    FRSystem() = default;
    FRSystem(std::shared_ptr<Store> store, std::vector<SymbolId> symbols);

    std::shared_ptr<Store> const& store() const noexcept {
      return store_;
    }
    std::size_t degree() const {
      return store_->degree();
    }
    std::vector<SymbolId> const& symbols() const noexcept {
      return symbols_;
    }
    std::size_t size() const noexcept {
      return symbols_.size();
    }

    std::vector<std::string> names() const;
    std::optional<SymbolId>  find(std::string_view name) const;
    Element                  element(std::string_view name) const;
    Element                  element(std::size_t i) const;

    // A word in the section-word grammar over this system's symbols.
    Element parse_word(std::string_view text) const;

    // Try to fold every symbol into the node universe.
    void resolve_all(std::size_t cap = kDefaultStateCap) const;

   private:
    std::shared_ptr<Store> store_;
    std::vector<SymbolId>  symbols_;
  };

  FRSystem parse_system(std::string_view              text,
                        std::shared_ptr<Store> const& store = nullptr);

  using NodeNames = std::map<NodeId, std::string>;

  // Names for the nodes of the system's resolved symbols, their inverses
  // and their squares and cubes.
  NodeNames node_names(FRSystem const& sys);

  // Definition lines of the system.  Node atoms are written by name when
  // `names` knows them; other nodes get auxiliary definitions named
  // aux_prefix0, aux_prefix1, ... appended after the system's own lines.
  std::string print_definitions(FRSystem const&    sys,
                                NodeNames const&   names      = {},
                                std::string const& aux_prefix = "q");

  // A one-symbol system whose symbol is defined by the sections of node n.
  FRSystem node_system(std::shared_ptr<Store> const& store, NodeId n,
                       std::string const& name);

  // "alphabet d" followed by the definitions.
  std::string print_system(FRSystem const& sys);

  std::string word_string(Store const& store, Word const& w,
                          NodeNames const& names = {});

}  // namespace arboreal

#endif
