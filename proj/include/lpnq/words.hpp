#pragma once

#include "lpnq/integer.hpp"
#include "lpnq/intlat.hpp"

#include <cstddef>
#include <vector>

namespace lpnq {

// A power g^exp of a generator; generators are numbered from 1.
struct Syllable {
  int     gen;
  Integer exp;

  bool operator==(Syllable const&) const = default;
};

// Freely reduced word stored as a sequence of syllables with non-zero
// exponents and no two adjacent syllables on the same generator.
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(std::vector<Syllable> const& syllables);

  static FreeWord generator(int gen, Integer const& exp = 1);

  std::vector<Syllable> const& syllables() const noexcept {
    return _syl;
  }
  bool is_identity() const noexcept {
    return _syl.empty();
  }
  // Number of letters, that is the sum of absolute exponents.
  Integer letter_length() const;
  int     max_generator() const;

  void append(int gen, Integer const& exp);
  void append(FreeWord const& w);

  bool operator==(FreeWord const&) const = default;

 private:
  std::vector<Syllable> _syl;
};

FreeWord multiply(FreeWord const& u, FreeWord const& v);
FreeWord operator*(FreeWord const& u, FreeWord const& v);
FreeWord inverse(FreeWord const& w);
FreeWord power(FreeWord const& w, Integer const& k);
// y^-1 x y
FreeWord conjugate(FreeWord const& x, FreeWord const& y);
// x^-1 y^-1 x y
FreeWord commutator(FreeWord const& x, FreeWord const& y);

// Endomorphism of the free group given by the images of its generators.
class FreeEndomorphism {
 public:
  FreeEndomorphism() = default;
  explicit FreeEndomorphism(std::vector<FreeWord> images);

  static FreeEndomorphism identity(std::size_t rank);

  std::size_t rank() const noexcept {
    return _images.size();
  }
  FreeWord const& image(int gen) const;
  std::vector<FreeWord> const& images() const noexcept {
    return _images;
  }
  bool is_identity() const;

  bool operator==(FreeEndomorphism const&) const = default;

 private:
  std::vector<FreeWord> _images;
};

FreeWord apply(FreeEndomorphism const& phi, FreeWord const& w);
// w -> phi(psi(w))
FreeEndomorphism compose(FreeEndomorphism const& phi, FreeEndomorphism const& psi);

// Exponent sums; a length m row vector.
Vector abelianized(FreeWord const& w, std::size_t m);
// Row i is the exponent-sum vector of phi(s_i), so that
// abelianized(apply(phi, w)) == abelianized(w) * endo_matrix(phi).
IntegerMatrix endo_matrix(FreeEndomorphism const& phi);

}  // namespace lpnq
