#include "lpnq/words.hpp"

#include "lpnq/errors.hpp"

#include <algorithm>

namespace lpnq {

FreeWord::FreeWord(std::vector<Syllable> const& syllables) {
  for (auto const& s : syllables) {
    append(s.gen, s.exp);
  }
}

FreeWord FreeWord::generator(int gen, Integer const& exp) {
  FreeWord w;
  w.append(gen, exp);
  return w;
}

Integer FreeWord::letter_length() const {
  Integer n = 0;
  for (auto const& s : _syl) {
    n += abs(s.exp);
  }
  return n;
}

int FreeWord::max_generator() const {
  int m = 0;
  for (auto const& s : _syl) {
    m = std::max(m, s.gen);
  }
  return m;
}

void FreeWord::append(int gen, Integer const& exp) {
  if (gen < 1) {
    throw Error("generator numbers start at 1");
  }
  if (exp == 0) {
    return;
  }
  if (!_syl.empty() && _syl.back().gen == gen) {
    _syl.back().exp += exp;
    if (_syl.back().exp == 0) {
      _syl.pop_back();
    }
  } else {
    _syl.push_back({gen, exp});
  }
}

void FreeWord::append(FreeWord const& w) {
  for (auto const& s : w._syl) {
    append(s.gen, s.exp);
  }
}

FreeWord multiply(FreeWord const& u, FreeWord const& v) {
  FreeWord w = u;
  w.append(v);
  return w;
}

FreeWord operator*(FreeWord const& u, FreeWord const& v) {
  return multiply(u, v);
}

FreeWord inverse(FreeWord const& w) {
  FreeWord out;
  auto const& s = w.syllables();
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    out.append(it->gen, -it->exp);
  }
  return out;
}

FreeWord power(FreeWord const& w, Integer const& k) {
  if (k == 0 || w.is_identity()) {
    return FreeWord();
  }
  if (k < 0) {
    return power(inverse(w), -k);
  }
  auto const& s = w.syllables();
  if (s.size() == 1) {
    return FreeWord::generator(s[0].gen, s[0].exp * k);
  }
  // w = a c a^-1 with c cyclically reduced; w^k = a c^k a^-1
  std::size_t i = 0, j = s.size() - 1;
  while (i < j && s[i].gen == s[j].gen && s[i].exp == -s[j].exp) {
    ++i;
    --j;
  }
  FreeWord prefix(std::vector<Syllable>(s.begin(), s.begin() + i));
  FreeWord core(std::vector<Syllable>(s.begin() + i, s.begin() + j + 1));
  FreeWord out = prefix;
  if (core.syllables().size() == 1) {
    out.append(core.syllables()[0].gen, core.syllables()[0].exp * k);
  } else {
    for (Integer n = 0; n < k; ++n) {
      out.append(core);
    }
  }
  out.append(inverse(prefix));
  return out;
}

FreeWord conjugate(FreeWord const& x, FreeWord const& y) {
  return inverse(y) * x * y;
}

FreeWord commutator(FreeWord const& x, FreeWord const& y) {
  return inverse(x) * inverse(y) * x * y;
}

FreeEndomorphism::FreeEndomorphism(std::vector<FreeWord> images)
    : _images(std::move(images)) {
  for (auto const& w : _images) {
    if (w.max_generator() > static_cast<int>(_images.size())) {
      throw Error("endomorphism image uses an undeclared generator");
    }
  }
}

FreeEndomorphism FreeEndomorphism::identity(std::size_t rank) {
  std::vector<FreeWord> im;
  for (std::size_t i = 1; i <= rank; ++i) {
    im.push_back(FreeWord::generator(static_cast<int>(i)));
  }
  return FreeEndomorphism(std::move(im));
}

FreeWord const& FreeEndomorphism::image(int gen) const {
  if (gen < 1 || gen > static_cast<int>(_images.size())) {
    throw Error("generator out of range for endomorphism");
  }
  return _images[gen - 1];
}

bool FreeEndomorphism::is_identity() const {
  for (std::size_t i = 0; i < _images.size(); ++i) {
    if (!(_images[i] == FreeWord::generator(static_cast<int>(i + 1)))) {
      return false;
    }
  }
  return true;
}

FreeWord apply(FreeEndomorphism const& phi, FreeWord const& w) {
  FreeWord out;
  for (auto const& s : w.syllables()) {
    out.append(power(phi.image(s.gen), s.exp));
  }
  return out;
}

FreeEndomorphism compose(FreeEndomorphism const& phi,
                         FreeEndomorphism const& psi) {
  if (phi.rank() != psi.rank()) {
    throw DimensionError("composing endomorphisms of different rank");
  }
  std::vector<FreeWord> im;
  for (auto const& w : psi.images()) {
    im.push_back(apply(phi, w));
  }
  return FreeEndomorphism(std::move(im));
}

Vector abelianized(FreeWord const& w, std::size_t m) {
  Vector v(m);
  for (auto const& s : w.syllables()) {
    if (s.gen > static_cast<int>(m)) {
      throw DimensionError("word uses a generator beyond the rank");
    }
    v[s.gen - 1] += s.exp;
  }
  return v;
}

IntegerMatrix endo_matrix(FreeEndomorphism const& phi) {
  std::size_t   m = phi.rank();
  IntegerMatrix a(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    Vector r = abelianized(phi.images()[i], m);
    for (std::size_t j = 0; j < m; ++j) {
      a(i, j) = r[j];
    }
  }
  return a;
}

}  // namespace lpnq
