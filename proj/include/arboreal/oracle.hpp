#ifndef ARBOREAL_ORACLE_HPP
#define ARBOREAL_ORACLE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "arboreal/element.hpp"
#include "arboreal/system.hpp"

namespace arboreal {

  class DepthTooLarge : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Words of length k are coded in base d, first letter most significant.
  // levels[k][code(v)] = code(image of v); levels[0] = {0}.
  struct TruncatedAut {
    std::size_t                             degree = 0;
    std::size_t                             depth  = 0;
    std::vector<std::vector<std::uint32_t>> levels;

    friend bool operator==(TruncatedAut const&, TruncatedAut const&) = default;
  };

  inline constexpr std::size_t kMaxLevelSize = 1u << 14;

  // Throws DepthTooLarge when d^n exceeds max_level.
  TruncatedAut truncate(Element const& g, std::size_t n,
                        std::size_t max_level = kMaxLevelSize);
  void check_depth(std::size_t degree, std::size_t n,
                   std::size_t max_level = kMaxLevelSize);

  std::string   orbit_tree_code(Element const& g, std::size_t n,
                                std::size_t max_level = kMaxLevelSize);
  std::string   orbit_tree_code(TruncatedAut const& t);
  bool          verify_conjugator(Element const& h, Element const& a,
                                  Element const& b, std::size_t n);
  std::uint64_t truncated_order(Element const& g, std::size_t n);
  std::uint64_t truncated_order(TruncatedAut const& t, std::size_t level);

  // Cycle type of the level-k permutation, sorted.
  std::vector<std::size_t> cycle_type(TruncatedAut const& t, std::size_t level);

  // A random system whose symbols are all bounded: finitary states form a
  // DAG ending in e, circuit states form disjoint cycles whose other
  // sections are finitary, and the remaining states only point downward.
  // The first symbol is the element of interest.
  FRSystem random_bounded(std::uint64_t seed, std::size_t state_budget,
                          std::size_t degree = 2);

}  // namespace arboreal

#endif
