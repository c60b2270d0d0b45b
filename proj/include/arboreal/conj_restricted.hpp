#ifndef ARBOREAL_CONJ_RESTRICTED_HPP
#define ARBOREAL_CONJ_RESTRICTED_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/conj_aut.hpp"

namespace arboreal {

  class NotBounded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  using NodePair = std::pair<NodeId, NodeId>;

  // Main pair plus the dependency pairs, kept sorted and without repeats.
  struct Configuration {
    NodeId                alpha = kIdentity;
    NodeId                beta  = kIdentity;
    std::vector<NodePair> dp;

    friend auto operator<=>(Configuration const&, Configuration const&) = default;
  };

  inline constexpr std::size_t kDefaultConfigCap = 10000;

  struct ConfigurationSet {
    enum class Status { Complete, ExceededCap };

    Status                 status = Status::Complete;
    std::shared_ptr<Store> store;
    // Root first, then discovery order.  Empty when the root admits no
    // conjugator at all.
    std::vector<Configuration>       configs;
    std::vector<std::vector<Perm>>   choices;  // surviving permutations
    std::vector<std::vector<Letter>> reps;     // least point of each orbit
    // successors[C][k][r]: configuration reached through reps[C][r] under
    // choices[C][k].
    std::vector<std::vector<std::vector<std::size_t>>> successors;

    bool complete() const noexcept {
      return status == Status::Complete;
    }
    std::size_t size() const noexcept {
      return configs.size();
    }
  };

  // Throws CapExceeded if a or b is not finite-state within the state cap.
  ConfigurationSet configurations(Element const& a, Element const& b,
                                  std::size_t cap = kDefaultConfigCap);

  struct FinitarySatisfaction {
    std::vector<std::optional<std::size_t>> depth;    // per configuration
    std::vector<std::optional<NodeId>>      witness;  // per configuration
    std::size_t                             rounds = 0;
  };

  FinitarySatisfaction finitary_satisfiable(ConfigurationSet const& set);

  struct RestrictedDecision {
    enum class Kind { Conjugate, NotConjugate, Unknown };
    enum class Class { Finitary, Bounded };

    Kind                   kind = Kind::Unknown;
    std::optional<Element> conjugator;
    Class                  cls   = Class::Finitary;
    std::size_t            depth = 0;  // finitary depth when cls is Finitary
    std::string            rule;       // how the root pair was settled
    std::string            reason;
  };

  RestrictedDecision conjugate_in_pol_minus1(Element const& a, Element const& b,
                                             std::size_t cap = kDefaultConfigCap);
  // Throws NotBounded unless both inputs are bounded.
  RestrictedDecision conjugate_in_pol0_cyclic(Element const& a, Element const& b,
                                              std::size_t cap = kDefaultConfigCap);
  RestrictedDecision conjugate_in_pol_inf(Element const& a, Element const& b,
                                          std::size_t cap = kDefaultConfigCap);

  using Matrix = std::vector<std::vector<std::uint64_t>>;

  // Coordinates are (configuration, dependency pair), configurations in
  // discovery order and pairs in node-id order.
  struct ChoiceSystem {
    ConfigurationSet                            lambda;
    std::vector<std::pair<std::size_t, NodePair>> coords;
    std::vector<std::uint64_t>                  u0;

    std::size_t dimension() const noexcept {
      return coords.size();
    }
    // |Pi|, saturating at SIZE_MAX.
    std::size_t choice_count() const;
    // The i-th element of Pi, as one index into lambda.choices[C] per
    // configuration; the first configuration is the most significant digit.
    std::vector<std::size_t>   choice_at(std::size_t i) const;
    Matrix                     matrix(std::vector<std::size_t> const& choice) const;
    std::vector<std::uint8_t>  theta(std::vector<std::size_t> const& choice) const;
    std::optional<std::size_t> coordinate(std::size_t config, NodePair const& p) const;
  };

  ChoiceSystem choice_system(Element const& a, Element const& b,
                             std::size_t cap = kDefaultConfigCap);

  std::vector<std::uint64_t> apply(Matrix const& m, std::vector<std::uint64_t> const& u,
                                   std::uint64_t threshold = UINT64_MAX);
  std::uint64_t dot(std::vector<std::uint8_t> const& theta,
                    std::vector<std::uint64_t> const& u,
                    std::uint64_t threshold = UINT64_MAX);

  struct SearchBounds {
    std::size_t   preperiod = 4;
    std::size_t   period    = 6;
    std::uint64_t threshold = 1u << 16;
    std::size_t   budget    = 200000;  // partial assignments visited
  };

  struct ChoiceSearchResult {
    enum class Kind { Found, NotFoundWithinBounds };

    Kind        kind      = Kind::NotFoundWithinBounds;
    std::size_t preperiod = 0;
    std::size_t period    = 0;
    // choice[t][C] for the configurations that occur at phase t.
    std::vector<std::map<std::size_t, std::size_t>> choice;
    std::optional<Element>                          conjugator;
    std::size_t                                     explored = 0;
    bool                                            budget_hit = false;
  };

  ChoiceSearchResult bounded_choice_search(ChoiceSystem const& sys,
                                           SearchBounds const& bounds = {});

}  // namespace arboreal

#endif
