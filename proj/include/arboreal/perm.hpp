#ifndef ARBOREAL_PERM_HPP
#define ARBOREAL_PERM_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace arboreal {

  using Letter = std::uint32_t;

  // A permutation of the letters 0..d-1, stored as its image list.
  // Products follow the right-action convention: (x)(p * q) = ((x)p)q.
  class Perm {
   public:
    Perm() = default;
    explicit Perm(std::vector<Letter> images);

    static Perm identity(std::size_t degree);

    std::size_t degree() const noexcept {
      return images_.size();
    }
    Letter operator[](Letter x) const {
      return images_[x];
    }
    std::vector<Letter> const& images() const noexcept {
      return images_;
    }

    bool        is_identity() const noexcept;
    Perm        inverse() const;
    std::size_t order() const;

    // Cycles (including fixed points), each starting at its least letter,
    // listed by ascending least letter.
    std::vector<std::vector<Letter>> cycles() const;

    // "[i0 i1 ... ]"
    std::string str() const;

    friend Perm operator*(Perm const& p, Perm const& q);

    friend bool operator==(Perm const&, Perm const&) = default;
    friend auto operator<=>(Perm const&, Perm const&) = default;

   private:
    std::vector<Letter> images_;
  };

  // All permutations of degree d in lexicographic order of image tuples.
  std::vector<Perm> all_perms(std::size_t degree);

  // Cyclic-shift permutation on the given letters: l0 -> l1 -> ... -> l0.
  Perm cycle_perm(std::size_t degree, std::vector<Letter> const& letters);

}  // namespace arboreal

template <>
struct std::hash<arboreal::Perm> {
  std::size_t operator()(arboreal::Perm const& p) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : p.images()) {
      h = (h ^ x) * 1099511628211ULL;
    }
    return h;
  }
};

#endif
