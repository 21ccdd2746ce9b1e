#include "lpnq/errors.hpp"
#include "lpnq/intlat.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace lpnq;

namespace {

Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) {
    v.emplace_back(x);
  }
  return v;
}

std::vector<Integer> ints(std::initializer_list<long> xs) {
  return vec(xs);
}

Integer det(IntegerMatrix m) {
  // fraction-free elimination (Bareiss)
  std::size_t n = m.rows();
  Integer     sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) {
        ++r;
      }
      if (r == n) {
        return 0;
      }
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntegerMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntegerMatrix                      m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = d(rng);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("integer helpers") {
  CHECK(floor_div(-7, 2) == -4);
  CHECK(floor_mod(-7, 3) == 2);
  auto e = extended_gcd(12, -18);
  CHECK(e.g == 6);
  CHECK(e.s * 12 + e.t * -18 == 6);
  CHECK(mod_inverse(2, 5) == 3);
  CHECK_THROWS(mod_inverse(2, 4));
}

TEST_CASE("hnf") {
  auto id = hnf(IntegerMatrix::identity(3));
  CHECK(id.h == IntegerMatrix::identity(3));
  CHECK(id.u == IntegerMatrix::identity(3));

  IntegerMatrix a{{2, 0, 0}, {0, 2, 0}, {0, 2, 2}};
  auto          r = hnf(a);
  CHECK(r.h == IntegerMatrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  CHECK(r.u * a == r.h);
  CHECK(hnf(r.h).h == r.h);

  std::mt19937 rng(5);
  for (int k = 0; k < 20; ++k) {
    auto m = random_matrix(rng, 4, 4, 9);
    auto h = hnf(m);
    CHECK(h.u * m == h.h);
    CHECK(abs(det(h.h)) == abs(det(m)));
    CHECK(abs(det(h.u)) == 1);
  }
}

TEST_CASE("snf") {
  std::mt19937 rng(9);
  for (int k = 0; k < 20; ++k) {
    auto m = random_matrix(rng, 3, 5, 6);
    auto s = snf(m);
    CHECK(s.p * m * s.q == s.s);
    for (std::size_t i = 0; i + 1 < std::min(s.s.rows(), s.s.cols()); ++i) {
      CHECK(s.s(i, i) >= 0);
      if (s.s(i, i) != 0) {
        CHECK(s.s(i + 1, i + 1) % s.s(i, i) == 0);
      } else {
        CHECK(s.s(i + 1, i + 1) == 0);
      }
    }
  }
  auto c = smith_columns(IntegerMatrix{{2, 4}, {6, 8}});
  CHECK(c.q * c.q_inverse == IntegerMatrix::identity(2));
  CHECK(c.diagonal == ints({2, 4}));
}

TEST_CASE("membership and add_vector") {
  IntegerLattice l(3);
  CHECK(l.contains(vec({0, 0, 0})));
  CHECK(l.add_vector(vec({2, 0, 0})));
  CHECK(l.add_vector(vec({0, 2, 0})));
  CHECK(l.add_vector(vec({0, 2, 2})));
  CHECK_FALSE(l.add_vector(vec({0, 2, 2})));
  CHECK(l.contains(vec({0, 4, 2})));
  CHECK_FALSE(l.contains(vec({1, 0, 0})));
  CHECK(l.residue(vec({3, 1, -1})) == vec({1, 1, 1}));
  CHECK(l.basis() == IntegerMatrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});

  IntegerLattice m(2);
  m.add_vector(vec({2, 0}));
  m.add_vector(vec({0, 2}));
  m.add_vector(vec({1, 1}));
  CHECK(m.basis() == IntegerMatrix{{1, 1}, {0, 2}});
  CHECK(m.pivots() == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(m.add_vector(vec({1, 2, 3})), DimensionError);
}

TEST_CASE("grigorchuk spin stabilizes at 2Z^3") {
  // a^2 and the images of the spin under sigma
  IntegerLattice l(3);
  IntegerMatrix  sigma{{0, 1, 0}, {0, 1, 1}, {0, 1, 0}};
  Vector         v    = vec({2, 0, 0});
  int            adds = 0;
  for (int k = 0; k < 6; ++k) {
    adds += l.add_vector(v) ? 1 : 0;
    v = v * sigma;
  }
  CHECK(adds == 3);
  CHECK(abelian_invariants(l) == ints({2, 2, 2}));
}

TEST_CASE("abelian invariants") {
  IntegerLattice two(3);
  for (std::size_t i = 0; i < 3; ++i) {
    Vector v(3, 0);
    v[i] = 2;
    two.add_vector(v);
  }
  CHECK(abelian_invariants(two) == ints({2, 2, 2}));
  IntegerLattice five(2);
  five.add_vector(vec({5, 0}));
  five.add_vector(vec({0, 5}));
  CHECK(abelian_invariants(five) == ints({5, 5}));
  CHECK(abelian_invariants(IntegerLattice(2)) == ints({0, 0}));
  CHECK(abelian_invariants(IntegerMatrix{{2, 4}, {6, 8}}) == ints({2, 4}));
  CHECK(abelian_invariants(IntegerMatrix{{1, 0, 0}, {0, 3, 0}}) == ints({3, 0}));
}

TEST_CASE("shuffle invariance") {
  std::mt19937 rng(17);
  for (int k = 0; k < 30; ++k) {
    auto                m = random_matrix(rng, 5, 4, 12);
    std::vector<Vector> rows;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      rows.push_back(m.row(r));
    }
    IntegerLattice a(4);
    for (auto const& r : rows) {
      a.add_vector(r);
    }
    std::shuffle(rows.begin(), rows.end(), rng);
    IntegerLattice b(4);
    for (auto const& r : rows) {
      b.add_vector(r);
    }
    CHECK(a.basis() == b.basis());
    CHECK(abelian_invariants(a) == abelian_invariants(b));
    auto shuffled = IntegerMatrix::from_rows(rows, 4);
    auto h1 = hnf(m).h, h2 = hnf(shuffled).h;
    CHECK(h1 == h2);
    CHECK(snf(m).s == snf(shuffled).s);
  }
}

TEST_CASE("cyclic decomposition coordinates") {
  IntegerLattice l(3);
  l.add_vector(vec({2, 0, 0}));
  l.add_vector(vec({0, 3, 3}));
  auto d = cyclic_decomposition(l);
  CHECK(d.orders == ints({6, 0}));
  CHECK(d.representatives.size() == d.orders.size());
  for (std::size_t k = 0; k < d.representatives.size(); ++k) {
    auto c = d.coordinates(d.representatives[k]);
    for (std::size_t j = 0; j < c.size(); ++j) {
      CHECK(c[j] == (j == k ? 1 : 0));
    }
  }
  auto zero = d.coordinates(to_sparse(vec({2, 3, 3})));
  CHECK(zero == ints({0, 0}));
}
