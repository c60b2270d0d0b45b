#ifndef ARBOREAL_CONJ_AUT_HPP
#define ARBOREAL_CONJ_AUT_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/classify.hpp"
#include "arboreal/oracle.hpp"
#include "arboreal/system.hpp"

namespace arboreal {

  class DegreeTooLarge : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class NoRoot : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  inline constexpr std::size_t kPermEnumerationCap = 8;

  // All pi with pi^-1 p pi = q, in lexicographic image order.
  std::vector<Perm> perm_conjugators(Perm const& p, Perm const& q,
                                     std::size_t degree_cap = kPermEnumerationCap);

  struct ConjVertex {
    std::size_t c;  // index into a_side
    std::size_t d;  // index into b_side
    Perm        pi;
  };

  struct ConjEdge {
    std::size_t source;
    Letter      letter;
    std::size_t target;
  };

  struct ConjOptions {
    std::size_t os_cap         = kDefaultOSCap;
    bool        reachable_only = false;
  };

  struct ConjGraph {
    enum class Status { Complete, Unknown };

    Status      status = Status::Complete;
    std::string reason;
    // a_side is the orbit-signalizer of a; b_side is the closure of b under
    // d -> d^m|_y for every letter y, since the b-side letter x^pi need not
    // be the least point of its orbit.
    std::vector<Element>     a_side;
    std::vector<Element>     b_side;
    std::vector<ConjVertex>  vertices;  // survivors, in construction order
    std::vector<ConjEdge>    edges;     // between survivors
    std::vector<std::size_t> roots;     // survivors of the form (a, b, pi)
    std::size_t              candidates = 0;  // vertices before pruning

    // Successor pair of vertex v through representative x.
    std::pair<std::size_t, std::size_t> successor(std::size_t v, Letter x) const;

    std::vector<std::size_t> a_succ;  // a_succ[c * degree + x] for least x
    std::vector<std::size_t> b_succ;  // b_succ[d * degree + y]
    std::size_t              degree = 0;
  };

  ConjGraph conj_graph(Element const& a, Element const& b, ConjOptions const& opt = {});

  struct ConjDecision {
    enum class Kind { Conjugate, NotConjugate, Unknown };

    Kind                       kind = Kind::Unknown;
    ConjGraph                  graph;
    std::optional<std::size_t> root;
    std::string                reason;
    // Surviving vertices exist but none is a root.
    bool criteria_disagree = false;
  };

  ConjDecision conjugate_in_aut(Element const& a, Element const& b,
                                ConjOptions const& opt = {});

  // A functionally recursive conjugator; `root` conjugates a to b.
  struct ConjugatorFR {
    FRSystem                                          system;
    SymbolId                                          root = 0;
    std::vector<std::pair<std::size_t, std::size_t>>  pairs;    // per symbol
    std::vector<Perm>                                 choices;  // per symbol

    Element element() const {
      return Element::from_symbol(system.store(), root);
    }
  };

  enum class Policy { Least, Greatest };

  using PairChoice = std::map<std::pair<std::size_t, std::size_t>, Perm>;

  ConjugatorFR basic_conjugator(ConjGraph const& graph, Policy policy = Policy::Least,
                                std::string const& prefix = "h");
  // Explicit choice of pi per pair; pairs not listed fall back to the least.
  ConjugatorFR basic_conjugator(ConjGraph const& graph, PairChoice const& choice,
                                std::string const& prefix = "h");
  // Every basic conjugator (one per choice function on the reachable pairs),
  // at most `limit` of them.
  std::vector<ConjugatorFR> all_basic_conjugators(ConjGraph const& graph,
                                                  std::size_t      limit = 64,
                                                  std::string const& prefix = "h");

  std::optional<Element> expand_to_finite_state(ConjugatorFR const& h,
                                                std::size_t cap = kDefaultStateCap);

  struct SimultaneousDecision {
    enum class Kind { Conjugate, NotConjugate, Unknown };

    Kind                        kind = Kind::Unknown;
    std::optional<ConjugatorFR> conjugator;
    std::size_t                 states   = 0;  // tuple states explored
    std::size_t                 vertices = 0;  // surviving vertices
    std::string                 reason;
  };

  SimultaneousDecision conjugate_in_aut_simultaneous(std::vector<Element> const& as,
                                                     std::vector<Element> const& bs,
                                                     std::size_t cap = kDefaultOSCap,
                                                     std::string const& prefix = "h");

  TruncatedAut canonical_representative(Element const& a, std::size_t depth);

}  // namespace arboreal

#endif
