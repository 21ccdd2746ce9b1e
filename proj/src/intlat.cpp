#include "lpnq/intlat.hpp"

#include "lpnq/errors.hpp"

#include <algorithm>

namespace lpnq {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : _rows(rows), _cols(cols), _data(rows * cols) {}

IntegerMatrix::IntegerMatrix(
    std::initializer_list<std::initializer_list<long>> rows)
    : _rows(rows.size()), _cols(rows.size() == 0 ? 0 : rows.begin()->size()) {
  _data.reserve(_rows * _cols);
  for (auto const& r : rows) {
    if (r.size() != _cols) {
      throw DimensionError("ragged matrix literal");
    }
    for (long x : r) {
      _data.emplace_back(x);
    }
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1;
  }
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(std::vector<Vector> const& rows,
                                       std::size_t                cols) {
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw DimensionError("row length differs from column count");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Vector IntegerMatrix::row(std::size_t r) const {
  return Vector(_data.begin() + r * _cols, _data.begin() + (r + 1) * _cols);
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) {
    return;
  }
  for (std::size_t c = 0; c < _cols; ++c) {
    std::swap((*this)(a, c), (*this)(b, c));
  }
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) {
    return;
  }
  for (std::size_t r = 0; r < _rows; ++r) {
    std::swap((*this)(r, a), (*this)(r, b));
  }
}

void IntegerMatrix::add_row_multiple(std::size_t    a,
                                     std::size_t    b,
                                     Integer const& k) {
  if (k == 0) {
    return;
  }
  for (std::size_t c = 0; c < _cols; ++c) {
    if ((*this)(b, c) != 0) {
      (*this)(a, c) += k * (*this)(b, c);
    }
  }
}

void IntegerMatrix::add_col_multiple(std::size_t    a,
                                     std::size_t    b,
                                     Integer const& k) {
  if (k == 0) {
    return;
  }
  for (std::size_t r = 0; r < _rows; ++r) {
    if ((*this)(r, b) != 0) {
      (*this)(r, a) += k * (*this)(r, b);
    }
  }
}

void IntegerMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < _cols; ++c) {
    (*this)(r, c) = -(*this)(r, c);
  }
}

void IntegerMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < _rows; ++r) {
    (*this)(r, c) = -(*this)(r, c);
  }
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(_cols, _rows);
  for (std::size_t r = 0; r < _rows; ++r) {
    for (std::size_t c = 0; c < _cols; ++c) {
      t(c, r) = (*this)(r, c);
    }
  }
  return t;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(
      _data.begin(), _data.end(), [](Integer const& x) { return x == 0; });
}

IntegerMatrix operator*(IntegerMatrix const& a, IntegerMatrix const& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product dimension mismatch");
  }
  IntegerMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) {
        continue;
      }
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) {
          m(i, j) += a(i, k) * b(k, j);
        }
      }
    }
  }
  return m;
}

Vector operator*(Vector const& v, IntegerMatrix const& m) {
  if (v.size() != m.rows()) {
    throw DimensionError("vector-matrix product dimension mismatch");
  }
  Vector out(m.cols());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) {
      continue;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0) {
        out[j] += v[i] * m(i, j);
      }
    }
  }
  return out;
}

SparseVector to_sparse(Vector const& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) {
      out.emplace_back(i, v[i]);
    }
  }
  return out;
}

Vector to_dense(SparseVector const& v, std::size_t dim) {
  Vector out(dim);
  for (auto const& [i, x] : v) {
    if (i >= dim) {
      throw DimensionError("sparse index out of range");
    }
    out[i] = x;
  }
  return out;
}

void add_multiple(SparseVector& v, SparseVector const& w, Integer const& k) {
  if (k == 0 || w.empty()) {
    return;
  }
  SparseVector out;
  out.reserve(v.size() + w.size());
  auto a = v.begin();
  auto b = w.begin();
  while (a != v.end() || b != w.end()) {
    if (b == w.end() || (a != v.end() && a->first < b->first)) {
      out.push_back(std::move(*a));
      ++a;
    } else if (a == v.end() || b->first < a->first) {
      out.emplace_back(b->first, k * b->second);
      ++b;
    } else {
      Integer x = a->second + k * b->second;
      if (x != 0) {
        out.emplace_back(a->first, std::move(x));
      }
      ++a;
      ++b;
    }
  }
  v = std::move(out);
}

SparseVector apply_rows(SparseVector const&              u,
                        std::vector<SparseVector> const& m) {
  SparseVector out;
  for (auto const& [i, x] : u) {
    add_multiple(out, m.at(i), x);
  }
  return out;
}

namespace {

  struct Tracking {
    IntegerMatrix* p     = nullptr;  // row operations
    IntegerMatrix* q     = nullptr;  // column operations
    IntegerMatrix* q_inv = nullptr;  // inverse of q
  };

  void row_add(IntegerMatrix&  s,
               Tracking const& t,
               std::size_t     a,
               std::size_t     b,
               Integer const&  k) {
    s.add_row_multiple(a, b, k);
    if (t.p) {
      t.p->add_row_multiple(a, b, k);
    }
  }

  void row_swap(IntegerMatrix& s, Tracking const& t, std::size_t a, std::size_t b) {
    s.swap_rows(a, b);
    if (t.p) {
      t.p->swap_rows(a, b);
    }
  }

  void row_negate(IntegerMatrix& s, Tracking const& t, std::size_t a) {
    s.negate_row(a);
    if (t.p) {
      t.p->negate_row(a);
    }
  }

  void col_add(IntegerMatrix&  s,
               Tracking const& t,
               std::size_t     a,
               std::size_t     b,
               Integer const&  k) {
    s.add_col_multiple(a, b, k);
    if (t.q) {
      t.q->add_col_multiple(a, b, k);
    }
    if (t.q_inv) {
      t.q_inv->add_row_multiple(b, a, -k);
    }
  }

  void col_swap(IntegerMatrix& s, Tracking const& t, std::size_t a, std::size_t b) {
    s.swap_cols(a, b);
    if (t.q) {
      t.q->swap_cols(a, b);
    }
    if (t.q_inv) {
      t.q_inv->swap_rows(a, b);
    }
  }

  // Smith normal form in place; deterministic pivoting picks the entry of
  // least absolute value, first in row-major order.
  void smith_in_place(IntegerMatrix& s, Tracking const& tr) {
    std::size_t const m = s.rows();
    std::size_t const n = s.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      while (true) {
        bool        found = false;
        std::size_t pr = t, pc = t;
        Integer     best;
        for (std::size_t i = t; i < m; ++i) {
          for (std::size_t j = t; j < n; ++j) {
            if (s(i, j) != 0 && (!found || abs(s(i, j)) < best)) {
              found = true;
              best  = abs(s(i, j));
              pr    = i;
              pc    = j;
            }
          }
        }
        if (!found) {
          return;
        }
        row_swap(s, tr, t, pr);
        col_swap(s, tr, t, pc);
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (s(i, t) != 0) {
            Integer q = s(i, t) / s(t, t);
            row_add(s, tr, i, t, -q);
            if (s(i, t) != 0) {
              clean = false;
            }
          }
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (s(t, j) != 0) {
            Integer q = s(t, j) / s(t, t);
            col_add(s, tr, j, t, -q);
            if (s(t, j) != 0) {
              clean = false;
            }
          }
        }
        if (!clean) {
          continue;
        }
        bool divides = true;
        for (std::size_t i = t + 1; i < m && divides; ++i) {
          for (std::size_t j = t + 1; j < n; ++j) {
            if (s(i, j) % s(t, t) != 0) {
              row_add(s, tr, t, i, 1);
              divides = false;
              break;
            }
          }
        }
        if (divides) {
          break;
        }
      }
      if (s(t, t) < 0) {
        row_negate(s, tr, t);
      }
    }
  }

}  // namespace

HnfResult hnf(IntegerMatrix const& a) {
  IntegerMatrix h = a;
  IntegerMatrix u = IntegerMatrix::identity(a.rows());
  Tracking      tr{&u, nullptr, nullptr};
  std::size_t   r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    while (true) {
      long    best_row = -1;
      Integer best;
      for (std::size_t i = r; i < h.rows(); ++i) {
        if (h(i, c) != 0 && (best_row < 0 || abs(h(i, c)) < best)) {
          best_row = static_cast<long>(i);
          best     = abs(h(i, c));
        }
      }
      if (best_row < 0) {
        break;
      }
      row_swap(h, tr, r, static_cast<std::size_t>(best_row));
      bool done = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) != 0) {
          row_add(h, tr, i, r, -(h(i, c) / h(r, c)));
          if (h(i, c) != 0) {
            done = false;
          }
        }
      }
      if (done) {
        break;
      }
    }
    if (r < h.rows() && h(r, c) != 0) {
      if (h(r, c) < 0) {
        row_negate(h, tr, r);
      }
      for (std::size_t i = 0; i < r; ++i) {
        row_add(h, tr, i, r, -floor_div(h(i, c), h(r, c)));
      }
      ++r;
    }
  }
  return {std::move(h), std::move(u)};
}

SnfResult snf(IntegerMatrix const& a) {
  IntegerMatrix s = a;
  IntegerMatrix p = IntegerMatrix::identity(a.rows());
  IntegerMatrix q = IntegerMatrix::identity(a.cols());
  smith_in_place(s, Tracking{&p, &q, nullptr});
  return {std::move(s), std::move(p), std::move(q)};
}

SmithColumns smith_columns(IntegerMatrix const& a) {
  IntegerMatrix s     = a;
  IntegerMatrix q     = IntegerMatrix::identity(a.cols());
  IntegerMatrix q_inv = IntegerMatrix::identity(a.cols());
  smith_in_place(s, Tracking{nullptr, &q, &q_inv});
  std::vector<Integer> diag(a.cols());
  for (std::size_t t = 0; t < std::min(a.rows(), a.cols()); ++t) {
    diag[t] = s(t, t);
  }
  return {std::move(diag), std::move(q), std::move(q_inv)};
}

namespace {

  std::size_t entry_end(SparseVector const& v, std::size_t c) {
    return static_cast<std::size_t>(
        std::upper_bound(v.begin(),
                         v.end(),
                         c,
                         [](std::size_t x, SparseEntry const& e) {
                           return x < e.first;
                         })
        - v.begin());
  }

  void negate(SparseVector& v) {
    for (auto& e : v) {
      e.second = -e.second;
    }
  }

  // Reduces v modulo an echelon basis, pivot columns left to right.
  void echelon_reduce(std::vector<SparseVector> const& rows,
                      std::vector<long> const&         row_of_pivot,
                      SparseVector&                    v,
                      std::size_t                      from) {
    std::size_t i = from;
    while (i < v.size()) {
      std::size_t const c  = v[i].first;
      long const        ri = row_of_pivot[c];
      if (ri >= 0) {
        SparseVector const& row = rows[ri];
        Integer             q   = floor_div(v[i].second, row.front().second);
        if (q != 0) {
          add_multiple(v, row, -q);
        }
      }
      i = entry_end(v, c);
    }
  }

}  // namespace

IntegerLattice::IntegerLattice(std::size_t ambient_dim)
    : _dim(ambient_dim), _row_of_pivot(ambient_dim, -1) {}

void IntegerLattice::reduce_column(std::size_t c) {
  long const        pr = _row_of_pivot[c];
  Integer const&    p  = _rows[pr].front().second;
  for (auto& row : _rows) {
    if (row.front().first >= c) {
      continue;
    }
    auto it = std::lower_bound(row.begin(), row.end(), c, [](SparseEntry const& e, std::size_t x) {
      return e.first < x;
    });
    if (it == row.end() || it->first != c) {
      continue;
    }
    std::size_t const at = static_cast<std::size_t>(it - row.begin());
    Integer           q  = floor_div(it->second, p);
    if (q != 0) {
      add_multiple(row, _rows[pr], -q);
      echelon_reduce(_rows, _row_of_pivot, row, at);
    }
  }
}

bool IntegerLattice::add_vector(Vector const& v) {
  if (v.size() != _dim) {
    throw DimensionError("vector length differs from lattice dimension");
  }
  return add_vector(to_sparse(v));
}

bool IntegerLattice::add_vector(SparseVector v) {
  if (!v.empty() && v.back().first >= _dim) {
    throw DimensionError("vector index exceeds lattice dimension");
  }
  bool changed = false;
  while (!v.empty()) {
    std::size_t const c  = v.front().first;
    long const        ri = _row_of_pivot[c];
    if (ri < 0) {
      if (v.front().second < 0) {
        negate(v);
      }
      echelon_reduce(_rows, _row_of_pivot, v, 1);
      _row_of_pivot[c] = static_cast<long>(_rows.size());
      _rows.push_back(std::move(v));
      reduce_column(c);
      _hnf_valid = false;
      return true;
    }
    SparseVector& row = _rows[ri];
    Integer const p   = row.front().second;
    Integer const a   = v.front().second;
    if (a % p == 0) {
      add_multiple(v, row, -(a / p));
      continue;
    }
    auto         eg = extended_gcd(p, a);
    SparseVector new_row;
    add_multiple(new_row, row, eg.s);
    add_multiple(new_row, v, eg.t);
    SparseVector new_v;
    add_multiple(new_v, row, a / eg.g);
    add_multiple(new_v, v, -(p / eg.g));
    echelon_reduce(_rows, _row_of_pivot, new_row, 1);
    row = std::move(new_row);
    reduce_column(c);
    v = std::move(new_v);
    echelon_reduce(_rows, _row_of_pivot, v, 1);
    changed    = true;
    _hnf_valid = false;
  }
  return changed;
}

Membership IntegerLattice::membership(SparseVector v) const {
  if (!v.empty() && v.back().first >= _dim) {
    throw DimensionError("vector index exceeds lattice dimension");
  }
  echelon_reduce(_rows, _row_of_pivot, v, 0);
  bool member = v.empty();
  return {member, std::move(v)};
}

bool IntegerLattice::contains(SparseVector const& v) const {
  return membership(v).member;
}

bool IntegerLattice::contains(Vector const& v) const {
  if (v.size() != _dim) {
    throw DimensionError("vector length differs from lattice dimension");
  }
  return membership(to_sparse(v)).member;
}

Vector IntegerLattice::residue(Vector const& v) const {
  if (v.size() != _dim) {
    throw DimensionError("vector length differs from lattice dimension");
  }
  return to_dense(membership(to_sparse(v)).residue, _dim);
}

std::vector<SparseVector> const& IntegerLattice::sparse_basis() const {
  if (!_hnf_valid) {
    _hnf = _rows;
    std::sort(_hnf.begin(), _hnf.end(), [](auto const& x, auto const& y) {
      return x.front().first < y.front().first;
    });
    _hnf_valid = true;
  }
  return _hnf;
}

IntegerMatrix IntegerLattice::basis() const {
  auto const&   rows = sparse_basis();
  IntegerMatrix m(rows.size(), _dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (auto const& [c, x] : rows[r]) {
      m(r, c) = x;
    }
  }
  return m;
}

std::vector<std::size_t> IntegerLattice::pivots() const {
  std::vector<std::size_t> out;
  for (auto const& r : sparse_basis()) {
    out.push_back(r.front().first);
  }
  return out;
}

std::vector<Integer> abelian_invariants(IntegerLattice const& l) {
  return cyclic_decomposition(l).orders;
}

std::vector<Integer> abelian_invariants(IntegerMatrix const& relations) {
  IntegerLattice l(relations.cols());
  for (std::size_t r = 0; r < relations.rows(); ++r) {
    l.add_vector(relations.row(r));
  }
  return abelian_invariants(l);
}

CyclicDecomposition cyclic_decomposition(IntegerLattice const& l) {
  auto const&         rows = l.sparse_basis();
  std::size_t const   dim  = l.ambient_dim();
  CyclicDecomposition cd;
  cd.ambient_dim = dim;
  cd.elimination_of.assign(dim, -1);
  cd.smith_position.assign(dim, -1);
  cd.free_generator.assign(dim, -1);

  std::vector<bool>                pivot(dim, false);
  std::vector<SparseVector const*> relation_rows;
  for (auto const& row : rows) {
    pivot[row.front().first] = true;
    if (row.front().second == 1) {
      SparseVector e(row.begin() + 1, row.end());
      for (auto& x : e) {
        x.second = -x.second;
      }
      cd.elimination_of[row.front().first]
          = static_cast<long>(cd.eliminations.size());
      cd.eliminations.push_back(std::move(e));
    } else {
      relation_rows.push_back(&row);
    }
  }
  std::vector<std::size_t> involved;
  for (auto const* row : relation_rows) {
    for (auto const& e : *row) {
      involved.push_back(e.first);
    }
  }
  std::sort(involved.begin(), involved.end());
  involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
  for (std::size_t j = 0; j < involved.size(); ++j) {
    cd.smith_position[involved[j]] = static_cast<long>(j);
  }

  IntegerMatrix rel(relation_rows.size(), involved.size());
  for (std::size_t r = 0; r < relation_rows.size(); ++r) {
    for (auto const& [c, x] : *relation_rows[r]) {
      rel(r, static_cast<std::size_t>(cd.smith_position[c])) = x;
    }
  }
  SmithColumns sm = smith_columns(rel);
  cd.q            = std::move(sm.q);
  cd.smith_generator.assign(involved.size(), -1);

  auto add_smith = [&](std::size_t t) {
    cd.smith_generator[t] = static_cast<long>(cd.orders.size());
    cd.orders.push_back(sm.diagonal[t]);
    SparseVector rep;
    for (std::size_t j = 0; j < involved.size(); ++j) {
      if (sm.q_inverse(t, j) != 0) {
        rep.emplace_back(involved[j], sm.q_inverse(t, j));
      }
    }
    cd.representatives.push_back(std::move(rep));
  };
  for (std::size_t t = 0; t < involved.size(); ++t) {
    if (sm.diagonal[t] > 1) {
      add_smith(t);
    }
  }
  for (std::size_t t = 0; t < involved.size(); ++t) {
    if (sm.diagonal[t] == 0) {
      add_smith(t);
    }
  }
  for (std::size_t c = 0; c < dim; ++c) {
    if (!pivot[c] && cd.smith_position[c] < 0) {
      cd.free_generator[c] = static_cast<long>(cd.orders.size());
      cd.orders.push_back(0);
      cd.representatives.push_back({{c, Integer(1)}});
    }
  }
  return cd;
}

std::vector<Integer> CyclicDecomposition::coordinates(SparseVector const& v) const {
  if (!v.empty() && v.back().first >= ambient_dim) {
    throw DimensionError("vector index exceeds module dimension");
  }
  SparseVector x;
  for (auto const& [c, a] : v) {
    if (elimination_of[c] >= 0) {
      add_multiple(x, eliminations[elimination_of[c]], a);
    } else {
      add_multiple(x, SparseVector{{c, Integer(1)}}, a);
    }
  }
  std::vector<Integer> out(orders.size());
  for (auto const& [c, a] : x) {
    if (free_generator[c] >= 0) {
      out[free_generator[c]] += a;
    } else if (smith_position[c] >= 0) {
      std::size_t j = static_cast<std::size_t>(smith_position[c]);
      for (std::size_t t = 0; t < q.cols(); ++t) {
        if (smith_generator[t] >= 0 && q(j, t) != 0) {
          out[smith_generator[t]] += a * q(j, t);
        }
      }
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (orders[k] != 0) {
      out[k] = floor_mod(out[k], orders[k]);
    }
  }
  return out;
}

}  // namespace lpnq
