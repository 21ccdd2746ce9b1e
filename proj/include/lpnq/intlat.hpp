#pragma once

#include "lpnq/integer.hpp"

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace lpnq {

using Vector = std::vector<Integer>;

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(std::vector<Vector> const& rows,
                                 std::size_t                cols);

  std::size_t rows() const noexcept {
    return _rows;
  }
  std::size_t cols() const noexcept {
    return _cols;
  }

  Integer& operator()(std::size_t r, std::size_t c) {
    return _data[r * _cols + c];
  }
  Integer const& operator()(std::size_t r, std::size_t c) const {
    return _data[r * _cols + c];
  }

  Vector row(std::size_t r) const;
  void   swap_rows(std::size_t a, std::size_t b);
  void   swap_cols(std::size_t a, std::size_t b);
  // row[a] += k * row[b]
  void add_row_multiple(std::size_t a, std::size_t b, Integer const& k);
  // col[a] += k * col[b]
  void add_col_multiple(std::size_t a, std::size_t b, Integer const& k);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  IntegerMatrix transpose() const;
  bool          is_zero() const;

  bool operator==(IntegerMatrix const& that) const = default;

 private:
  std::size_t          _rows = 0;
  std::size_t          _cols = 0;
  std::vector<Integer> _data;
};

IntegerMatrix operator*(IntegerMatrix const& a, IntegerMatrix const& b);
Vector        operator*(Vector const& v, IntegerMatrix const& m);

// Sparse vectors are sorted by index with non-zero values.
using SparseEntry  = std::pair<std::size_t, Integer>;
using SparseVector = std::vector<SparseEntry>;

SparseVector to_sparse(Vector const& v);
Vector       to_dense(SparseVector const& v, std::size_t dim);
// v += k * w
void add_multiple(SparseVector& v, SparseVector const& w, Integer const& k);
// u * m where m is given by sparse rows
SparseVector apply_rows(SparseVector const& u, std::vector<SparseVector> const& m);

struct HnfResult {
  IntegerMatrix h;  // row Hermite normal form, zero rows last
  IntegerMatrix u;  // unimodular, u * a == h
};

HnfResult hnf(IntegerMatrix const& a);

struct SnfResult {
  IntegerMatrix s;  // diagonal, d_1 | d_2 | ..., non-negative
  IntegerMatrix p;  // unimodular
  IntegerMatrix q;  // unimodular, p * a * q == s
};

SnfResult snf(IntegerMatrix const& a);

// Column transform of the Smith form together with its inverse; rows of
// q_inverse give a basis adapted to the diagonal.
struct SmithColumns {
  std::vector<Integer> diagonal;  // length == cols, zero beyond the rank
  IntegerMatrix        q;
  IntegerMatrix        q_inverse;
};

SmithColumns smith_columns(IntegerMatrix const& a);

struct Membership {
  bool         member;
  SparseVector residue;  // canonical representative of the coset
};

// Sublattices of Z^n kept in reduced row Hermite normal form.
class IntegerLattice {
 public:
  explicit IntegerLattice(std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept {
    return _dim;
  }
  std::size_t rank() const noexcept {
    return _rows.size();
  }

  bool add_vector(Vector const& v);
  bool add_vector(SparseVector v);

  bool       contains(Vector const& v) const;
  bool       contains(SparseVector const& v) const;
  Membership membership(SparseVector v) const;
  Vector     residue(Vector const& v) const;

  // Reduced row HNF of the lattice basis.
  IntegerMatrix basis() const;
  // Same, as sparse rows ordered by pivot.
  std::vector<SparseVector> const& sparse_basis() const;
  std::vector<std::size_t>         pivots() const;

 private:
  void reduce_column(std::size_t c);

  std::size_t               _dim;
  std::vector<SparseVector> _rows;  // insertion order
  std::vector<long>         _row_of_pivot;

  mutable std::vector<SparseVector> _hnf;
  mutable bool                      _hnf_valid = true;
};

// Abelian invariants of Z^n / L: non-trivial elementary divisors in
// ascending order followed by one 0 per free rank.
std::vector<Integer> abelian_invariants(IntegerLattice const& l);
std::vector<Integer> abelian_invariants(IntegerMatrix const& relations);

// Presentation of Z^n / L on generators adapted to its cyclic
// decomposition.
struct CyclicDecomposition {
  std::size_t          ambient_dim = 0;
  std::vector<Integer> orders;  // 0 for infinite
  // representatives[k] maps to the k-th generator
  std::vector<SparseVector> representatives;

  // Coordinates of the image of v, reduced modulo finite orders.
  std::vector<Integer> coordinates(SparseVector const& v) const;

  std::vector<long>         elimination_of;  // column -> index or -1
  std::vector<SparseVector> eliminations;    // eliminated column as combination
  std::vector<long>         smith_position;  // column -> position or -1
  std::vector<long>         free_generator;  // column -> generator or -1
  IntegerMatrix             q;
  std::vector<long>         smith_generator;  // position -> generator or -1
};

CyclicDecomposition cyclic_decomposition(IntegerLattice const& l);

}  // namespace lpnq
