#ifndef ARBOREAL_TEST_SUPPORT_HPP
#define ARBOREAL_TEST_SUPPORT_HPP

// Independent reference model used by the tests: a plain evaluator of
// functionally recursive systems that shares no code with the library.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/conj_aut.hpp"
#include "arboreal/conj_restricted.hpp"
#include "arboreal/oracle.hpp"
#include "arboreal/order.hpp"
#include "arboreal/system.hpp"

namespace testing {

  using Letters   = std::vector<std::uint32_t>;
  using PlainWord = std::vector<std::pair<std::string, int>>;  // (name, +1 | -1)

  struct PlainDef {
    std::vector<std::uint32_t> perm;
    std::vector<PlainWord>     sections;
  };

  struct PlainSystem {
    std::size_t                     degree = 0;
    std::map<std::string, PlainDef> defs;
  };

  // A deliberately small reader for the definition format.
  PlainSystem plain_parse(std::string const& text);
  PlainWord   plain_word(std::string const& text);
  PlainWord   plain_inverse(PlainWord const& w);
  PlainWord   plain_concat(PlainWord a, PlainWord const& b);

  // Right action: letters of the word act left to right.
  Letters plain_act(PlainSystem const& s, PlainWord const& w, Letters const& v);
  // Image table of the level-n action, words coded base d.
  std::vector<std::uint32_t> plain_level(PlainSystem const& s, PlainWord const& w,
                                         std::size_t n);
  bool          plain_equal_to_depth(PlainSystem const& s, PlainWord const& g,
                                     PlainWord const& h, std::size_t n);
  std::uint64_t plain_level_order(std::vector<std::uint32_t> const& level);
  std::string   plain_orbit_tree(PlainSystem const& s, PlainWord const& w, std::size_t n);
  // True iff h^-1 a h and b act alike on level n.
  bool plain_conjugates(PlainSystem const& s, PlainWord const& h, PlainWord const& a,
                        PlainWord const& b, std::size_t n);

  // Plain model of a library system: its printed definitions (with
  // auxiliary nodes spelled out) appended to base_text.
  PlainSystem plain_of(arboreal::FRSystem const& sys, std::string const& base_text);

  // Convenience.
  arboreal::FRSystem system(std::string const& text);
  arboreal::Element  word(arboreal::FRSystem const& sys, std::string const& w);
  bool               same(arboreal::Element const& g, arboreal::Element const& h);

  // Fixture systems.
  extern char const* const kAdding;     // a = (e, a)σ and friends
  extern char const* const kBounded;  // s, b = (s, b), c = (c, s), a

}  // namespace testing

#endif
