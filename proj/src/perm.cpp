#include "arboreal/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace arboreal {

  Perm::Perm(std::vector<Letter> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto y : images_) {
      if (y >= images_.size() || seen[y]) {
        throw std::invalid_argument("not a permutation: " + str());
      }
      seen[y] = true;
    }
  }

  Perm Perm::identity(std::size_t degree) {
    std::vector<Letter> im(degree);
    std::iota(im.begin(), im.end(), 0);
    Perm p;
    p.images_ = std::move(im);
    return p;
  }

  bool Perm::is_identity() const noexcept {
    for (std::size_t x = 0; x < images_.size(); ++x) {
      if (images_[x] != x) {
        return false;
      }
    }
    return true;
  }

  Perm Perm::inverse() const {
    Perm p;
    p.images_.resize(images_.size());
    for (std::size_t x = 0; x < images_.size(); ++x) {
      p.images_[images_[x]] = static_cast<Letter>(x);
    }
    return p;
  }

  std::size_t Perm::order() const {
    std::size_t n = 1;
    for (auto const& c : cycles()) {
      n = std::lcm(n, c.size());
    }
    return n;
  }

  std::vector<std::vector<Letter>> Perm::cycles() const {
    std::vector<std::vector<Letter>> out;
    std::vector<bool>                seen(images_.size(), false);
    for (Letter x = 0; x < images_.size(); ++x) {
      if (seen[x]) {
        continue;
      }
      std::vector<Letter> c;
      for (Letter y = x; !seen[y]; y = images_[y]) {
        seen[y] = true;
        c.push_back(y);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  std::string Perm::str() const {
    std::string s = "[";
    for (std::size_t x = 0; x < images_.size(); ++x) {
      if (x != 0) {
        s += ' ';
      }
      s += std::to_string(images_[x]);
    }
    return s + "]";
  }

  Perm operator*(Perm const& p, Perm const& q) {
    if (p.degree() != q.degree()) {
      throw std::invalid_argument("degree mismatch in permutation product");
    }
    Perm r;
    r.images_.resize(p.degree());
    for (std::size_t x = 0; x < p.degree(); ++x) {
      r.images_[x] = q.images_[p.images_[x]];
    }
    return r;
  }

  std::vector<Perm> all_perms(std::size_t degree) {
    std::vector<Letter> im(degree);
    std::iota(im.begin(), im.end(), 0);
    std::vector<Perm> out;
    do {
      out.emplace_back(im);
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
  }

  Perm cycle_perm(std::size_t degree, std::vector<Letter> const& letters) {
    auto im = Perm::identity(degree).images();
    for (std::size_t i = 0; i < letters.size(); ++i) {
      im[letters[i]] = letters[(i + 1) % letters.size()];
    }
    return Perm(std::move(im));
  }

}  // namespace arboreal
