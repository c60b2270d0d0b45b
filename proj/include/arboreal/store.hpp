#ifndef ARBOREAL_STORE_HPP
#define ARBOREAL_STORE_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "arboreal/perm.hpp"

namespace arboreal {

  using NodeId   = std::uint32_t;
  using SymbolId = std::uint32_t;

  // Node 0 of every store is the trivial automorphism.
  inline constexpr NodeId kIdentity = 0;

  inline constexpr std::size_t kDefaultStateCap    = 100000;
  inline constexpr std::size_t kDefaultEqualityCap = 1000000;
  inline constexpr std::size_t kMaxWordLength      = 4096;

  class CapExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A letter of a word: either a node of the store, or a (possibly inverted)
  // functionally recursive symbol that has not been folded into a node.
  struct Atom {
    std::uint32_t id      = 0;
    bool          symbol  = false;
    bool          inverse = false;

    static Atom node(NodeId n) {
      return Atom{n, false, false};
    }
    static Atom sym(SymbolId s, bool inv = false) {
      return Atom{s, true, inv};
    }

    friend bool operator==(Atom const&, Atom const&) = default;
  };

  using Word = std::vector<Atom>;

  struct WordHash {
    std::size_t operator()(Word const& w) const noexcept;
  };

  struct Symbol {
    std::string           name;
    Perm                  perm;
    std::vector<Word>     sections;
    std::optional<NodeId> node;
  };

  // The store owns a universe of pairwise non-bisimilar states (nodes); two
  // finite-state automorphisms are equal iff they are the same node.  It also
  // owns the symbols of functionally recursive systems built on top of it.
  // All member functions are internally synchronized.
  class Store {
   public:
    explicit Store(std::size_t degree);

    static std::shared_ptr<Store> make(std::size_t degree) {
      return std::make_shared<Store>(degree);
    }

    std::size_t degree() const noexcept {
      return degree_;
    }

    std::size_t         node_count() const;
    Perm                node_perm(NodeId n) const;
    NodeId              node_child(NodeId n, Letter x) const;
    std::vector<NodeId> node_children(NodeId n) const;

    // Nodes reachable from n, breadth first, letters in ascending order.
    std::vector<NodeId> reachable(NodeId n) const;

    NodeId make_node(Perm const& p, std::vector<NodeId> const& children);
    NodeId multiply(NodeId u, NodeId v);
    NodeId invert(NodeId u);
    NodeId power(NodeId u, std::int64_t n);

    SymbolId declare_symbol(std::string name);
    void     define_symbol(SymbolId s, Perm p, std::vector<Word> sections);
    Symbol   symbol(SymbolId s) const;
    std::size_t symbol_count() const;

    // Word algebra.  Words are kept in a normal form where adjacent nodes are
    // multiplied, resolved symbols are replaced by nodes and s*s^-1 cancels.
    Word normalize(Word const& w);
    Perm word_perm(Word const& w);
    Word word_section(Word const& w, Letter x);
    Word word_inverse(Word const& w);
    Word word_product(Word const& u, Word const& v);

    // Fold the section closure of w into the node universe.  Returns nullopt
    // when the closure exceeds state_cap states (or words grow too long).
    std::optional<NodeId> resolve(Word const& w,
                                  std::size_t state_cap = kDefaultStateCap);

   private:
    struct Ref {
      bool          pending;
      std::uint32_t id;
    };
    struct Pending {
      Perm             perm;
      std::vector<Ref> children;
    };

    std::vector<NodeId> merge(std::vector<Pending> const& pending);
    NodeId new_node(Perm const& p);
    std::vector<std::uint32_t> scc_code(NodeId start,
                                        std::vector<bool> const& in_scc) const;

    Perm atom_perm(Atom const& a);
    Word atom_section(Atom const& a, Letter x);
    void push_atom(Word& out, Atom a);

    NodeId multiply_locked(NodeId u, NodeId v);
    NodeId invert_locked(NodeId u);

    std::size_t                  degree_;
    std::vector<Perm>            perms_;
    std::vector<NodeId>          children_;
    std::unordered_map<std::uint64_t, NodeId> products_;
    std::unordered_map<NodeId, NodeId>        inverses_;

    struct VecHash {
      std::size_t operator()(std::vector<std::uint32_t> const& v) const noexcept;
    };
    std::unordered_map<std::vector<std::uint32_t>, NodeId, VecHash> unique_;
    std::unordered_map<std::vector<std::uint32_t>, NodeId, VecHash> cyclic_;

    std::vector<Symbol>                             symbols_;
    std::unordered_map<Word, std::size_t, WordHash> failed_;

    mutable std::recursive_mutex mutex_;
  };

}  // namespace arboreal

#endif
