#include "lpnq/pcgroup.hpp"

#include "lpnq/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace lpnq {

std::uint64_t default_guard_steps() {
  if (char const* env = std::getenv("LPNQ_GUARD_STEPS")) {
    try {
      return std::stoull(env);
    } catch (std::exception const&) {
    }
  }
  return 10'000'000ULL;
}

NormalWord to_normal(PcWord const& w, std::size_t n) {
  NormalWord out{std::vector<Integer>(n)};
  for (auto const& s : w) {
    if (s.gen < 1 || static_cast<std::size_t>(s.gen) > n) {
      throw DimensionError("pc generator out of range");
    }
    out.exponents[s.gen - 1] += s.exp;
  }
  return out;
}

PcWord to_pcword(NormalWord const& w) {
  PcWord out;
  for (std::size_t i = 0; i < w.exponents.size(); ++i) {
    if (w.exponents[i] != 0) {
      out.push_back({static_cast<int>(i + 1), w.exponents[i]});
    }
  }
  return out;
}

PcPresentation::PcPresentation(int n)
    : _n(n),
      _orders(n + 1),
      _weights(n + 1, 1),
      _defs(n + 1),
      _conj(n + 1),
      _conj_inv(n + 1),
      _power(n + 1),
      _unit(n + 1),
      _inv_unit(n + 1),
      _central(n + 1, 1),
      _commute_from(n + 1, 0) {
  if (n < 0) {
    throw Error("negative generator count");
  }
}

void PcPresentation::check(int i) const {
  if (i < 1 || i > _n) {
    throw DimensionError("pc generator " + std::to_string(i) + " out of range");
  }
}

Integer const& PcPresentation::relative_order(int i) const {
  check(i);
  return _orders[i];
}

void PcPresentation::set_relative_order(int i, Integer const& r) {
  check(i);
  if (r < 0 || r == 1) {
    throw Error("relative orders are 0 (infinite) or at least 2");
  }
  _orders[i]  = r;
  _complete   = false;
}

int PcPresentation::weight(int i) const {
  check(i);
  return _weights[i];
}

void PcPresentation::set_weight(int i, int w) {
  check(i);
  _weights[i] = w;
}

Definition const& PcPresentation::definition(int i) const {
  check(i);
  return _defs[i];
}

void PcPresentation::set_definition(int i, Definition d) {
  check(i);
  _defs[i] = std::move(d);
}

int PcPresentation::max_weight() const {
  int m = 0;
  for (int i = 1; i <= _n; ++i) {
    m = std::max(m, _weights[i]);
  }
  return m;
}

bool PcPresentation::conjugate_trivial(int i, int j) const {
  return _conj[i].empty() || _conj[i][j].empty();
}

PcWord const& PcPresentation::raw_conjugate(int i, int j) const {
  static PcWord const empty;
  return _conj[i].empty() ? empty : _conj[i][j];
}

PcWord const& PcPresentation::raw_conjugate_inverse(int i, int j) const {
  static PcWord const empty;
  return _conj_inv[i].empty() ? empty : _conj_inv[i][j];
}

PcWord PcPresentation::conjugate(int i, int j) const {
  check(i);
  check(j);
  if (j >= i) {
    throw Error("conjugate(i, j) needs j < i");
  }
  return conjugate_trivial(i, j) ? _unit[i] : _conj[i][j];
}

PcWord PcPresentation::conjugate_inverse(int i, int j) const {
  check(i);
  check(j);
  if (j >= i || _orders[j] != 0) {
    throw Error("conjugate_inverse(i, j) needs j < i and g_j of infinite order");
  }
  if (!_complete) {
    throw Error("presentation not completed");
  }
  return conjugate_trivial(i, j) ? _unit[i] : _conj_inv[i][j];
}

PcWord const& PcPresentation::power(int i) const {
  check(i);
  return _power[i];
}

void PcPresentation::set_conjugate(int i, int j, PcWord const& w) {
  check(i);
  check(j);
  if (j >= i) {
    throw Error("set_conjugate(i, j) needs j < i");
  }
  for (auto const& s : w) {
    check(s.gen);
  }
  bool trivial = w.size() == 1 && w[0].gen == i && w[0].exp == 1;
  if (trivial) {
    if (!_conj[i].empty()) {
      _conj[i][j].clear();
    }
  } else {
    if (_conj[i].empty()) {
      _conj[i].resize(i);
    }
    _conj[i][j] = w;
  }
  _complete = false;
}

void PcPresentation::set_power(int i, PcWord w) {
  check(i);
  for (auto const& s : w) {
    check(s.gen);
  }
  _power[i] = std::move(w);
  _complete = false;
}

void PcPresentation::compute_tables() {
  for (int i = 1; i <= _n; ++i) {
    _unit[i]         = PcWord{Syllable{i, 1}};
    _central[i]      = 1;
    _commute_from[i] = i + 1;
  }
  for (int i = 1; i <= _n; ++i) {
    if (_conj[i].empty()) {
      continue;
    }
    bool any = false;
    for (int j = 1; j < i; ++j) {
      if (!_conj[i][j].empty()) {
        any              = true;
        _central[i]      = 0;
        _central[j]      = 0;
        _commute_from[j] = std::max(_commute_from[j], i + 1);
      }
    }
    if (!any) {
      _conj[i].clear();
    }
  }
}

void PcPresentation::compute_inverses() {
  for (int i = 1; i <= _n; ++i) {
    _conj_inv[i].clear();
    _inv_unit[i].clear();
  }
  Collector c(*this);
  for (int j = _n; j >= 1; --j) {
    if (_orders[j] != 0) {
      c.set(PcWord{Syllable{j, _orders[j] - 1}});
      c.multiply(_power[j], -1);
      _inv_unit[j] = c.result();
      continue;
    }
    for (int i = _n; i > j; --i) {
      if (conjugate_trivial(i, j)) {
        continue;
      }
      PcWord const& w = _conj[i][j];
      PcWord        tail;
      if (!w.empty() && w[0].gen == i && w[0].exp == 1) {
        tail.assign(w.begin() + 1, w.end());
      } else {
        PcWord t{Syllable{i, -1}};
        t.insert(t.end(), w.begin(), w.end());
        tail = c.collect(t);
      }
      PcWord inv = c.inverse(tail);
      PcWord out{Syllable{i, 1}};
      c.set(out);
      for (auto const& s : inv) {
        PcWord const& im = (s.gen > j && !conjugate_trivial(s.gen, j))
                               ? _conj_inv[s.gen][j]
                               : _unit[s.gen];
        c.multiply(im, s.exp);
      }
      if (_conj_inv[i].empty()) {
        _conj_inv[i].resize(i);
      }
      _conj_inv[i][j] = c.result();
    }
  }
}

void PcPresentation::complete() {
  compute_tables();
  _complete = true;
  try {
    compute_inverses();
  } catch (...) {
    _complete = false;
    throw;
  }
}

Collector::Collector(PcPresentation const& p) : _p(p), _x(p.size() + 1) {
  if (!p.is_complete()) {
    throw Error("collector needs a completed presentation");
  }
}

void Collector::reset() {
  for (auto& x : _x) {
    if (x != 0) {
      x = 0;
    }
  }
}

void Collector::set(PcWord const& w) {
  reset();
  for (auto const& s : w) {
    _x.at(s.gen) = s.exp;
  }
}

PcWord Collector::result() const {
  PcWord out;
  for (int i = 1; i <= _p.size(); ++i) {
    if (_x[i] != 0) {
      out.push_back({i, _x[i]});
    }
  }
  return out;
}

void Collector::push(Syllable const* w, std::size_t len, Integer const& reps) {
  if (len == 0 || reps == 0) {
    return;
  }
  Frame f{w, len, reps < 0, abs(reps), 0, 0, Integer(0), Syllable{0, 0}, false};
  _stack.push_back(std::move(f));
}

void Collector::push_own(int gen, Integer const& e) {
  Frame f{nullptr, 1, false, Integer(1), 0, 0, Integer(0), Syllable{gen, e}, true};
  _stack.push_back(std::move(f));
}

void Collector::multiply(std::span<Syllable const> w, Integer const& reps) {
  for (auto const& s : w) {
    if (s.gen < 1 || s.gen > _p.size()) {
      throw DimensionError("pc generator out of range in collection");
    }
  }
  push(w.data(), w.size(), reps);
  run();
}

void Collector::run() {
  _steps                    = 0;
  std::uint64_t const guard = _p.guard_steps();
  while (!_stack.empty()) {
    std::size_t const top = _stack.size() - 1;
    Frame&            f   = _stack[top];
    if (f.pending == 0) {
      if (f.pos == f.len) {
        --f.reps;
        if (f.reps == 0) {
          _stack.pop_back();
          continue;
        }
        f.pos = 0;
      }
      Syllable const* w = f.owns ? &f.own : f.word;
      Syllable const& s = f.inverted ? w[f.len - 1 - f.pos] : w[f.pos];
      f.gen             = s.gen;
      f.pending         = f.inverted ? Integer(-s.exp) : s.exp;
      ++f.pos;
    }
    step(top);
    if (++_steps > guard) {
      _stack.clear();
      _total_steps += _steps;
      throw GuardExceededError("collection exceeded " + std::to_string(guard)
                               + " steps");
    }
  }
  _total_steps += _steps;
}

void Collector::step(std::size_t top) {
  int const      g = _stack[top].gen;
  Integer const& r = _p.relative_order(g);

  auto normalize = [&] {
    if (r != 0 && (_x[g] < 0 || _x[g] >= r)) {
      Integer q = floor_div(_x[g], r);
      _x[g] -= q * r;
      PcWord const& pw = _p.power(g);
      push(pw.data(), pw.size(), q);
    }
  };

  if (_p.central(g)) {
    _x[g] += _stack[top].pending;
    _stack[top].pending = 0;
    normalize();
    return;
  }
  int const bound = std::min(_p.commute_from(g), _p.size() + 1);
  int       k0    = 0;
  for (int k = g + 1; k < bound; ++k) {
    if (_x[k] != 0 && !_p.conjugate_trivial(k, g)) {
      k0 = k;
      break;
    }
  }
  if (k0 == 0) {
    _x[g] += _stack[top].pending;
    _stack[top].pending = 0;
    normalize();
    return;
  }

  bool const positive = _stack[top].pending > 0;
  if (!positive && r != 0) {
    Integer e           = -_stack[top].pending;
    _stack[top].pending = 0;
    PcWord const& iu    = _p.inverse_unit(g);
    push(iu.data(), iu.size(), e);
    return;
  }
  if (positive) {
    _stack[top].pending -= 1;
    _x[g] += 1;
  } else {
    _stack[top].pending += 1;
    _x[g] -= 1;
  }
  bool const wrap = positive && r != 0 && _x[g] == r;
  if (wrap) {
    _x[g] = 0;
  }
  for (int k = _p.size(); k >= k0; --k) {
    if (_x[k] == 0 || _p.central(k)) {
      continue;
    }
    Integer xk = std::move(_x[k]);
    _x[k]      = 0;
    if (_p.conjugate_trivial(k, g)) {
      push_own(k, xk);
    } else {
      PcWord const& w
          = positive ? _p.raw_conjugate(k, g) : _p.raw_conjugate_inverse(k, g);
      push(w.data(), w.size(), xk);
    }
  }
  if (wrap) {
    PcWord const& pw = _p.power(g);
    push(pw.data(), pw.size(), 1);
  }
}

PcWord Collector::collect(std::span<Syllable const> w) {
  reset();
  multiply(w);
  return result();
}

PcWord Collector::product(PcWord const& x, PcWord const& y) {
  set(x);
  multiply(y);
  return result();
}

PcWord Collector::inverse(PcWord const& x) {
  reset();
  multiply(x, -1);
  return result();
}

PcWord Collector::power(PcWord const& x, Integer const& k) {
  if (abs(k) <= 16) {
    reset();
    multiply(x, k);
    return result();
  }
  PcWord  base = k < 0 ? inverse(x) : x;
  Integer e    = abs(k);
  PcWord  acc;
  while (e > 0) {
    if ((e & 1) != 0) {
      acc = product(acc, base);
    }
    e >>= 1;
    if (e > 0) {
      base = product(base, base);
    }
  }
  return acc;
}

PcWord Collector::conjugate(PcWord const& x, PcWord const& y) {
  PcWord iy = inverse(y);
  set(iy);
  multiply(x);
  multiply(y);
  return result();
}

PcWord Collector::commutator(PcWord const& x, PcWord const& y) {
  PcWord ix = inverse(x);
  PcWord iy = inverse(y);
  set(ix);
  multiply(iy);
  multiply(x);
  multiply(y);
  return result();
}

PcWord collect(PcPresentation const& p, std::span<Syllable const> w) {
  Collector c(p);
  return c.collect(w);
}

NormalWord collect_normal(PcPresentation const& p, std::span<Syllable const> w) {
  return to_normal(collect(p, w), static_cast<std::size_t>(p.size()));
}

PcWord multiply(PcPresentation const& p, PcWord const& x, PcWord const& y) {
  Collector c(p);
  return c.product(x, y);
}

PcWord inverse(PcPresentation const& p, PcWord const& x) {
  Collector c(p);
  return c.inverse(x);
}

PcWord evaluate(Collector& c, std::vector<PcWord> const& images, FreeWord const& w) {
  c.reset();
  for (auto const& s : w.syllables()) {
    if (s.gen < 1 || static_cast<std::size_t>(s.gen) > images.size()) {
      throw DimensionError("word uses a generator without image");
    }
    c.multiply(images[s.gen - 1], s.exp);
  }
  return c.result();
}

PcWord evaluate(PcPresentation const& p, std::vector<PcWord> const& images, FreeWord const& w) {
  Collector c(p);
  return evaluate(c, images, w);
}

std::vector<Violation> consistency_check(PcPresentation const& p, ConsistencyOptions const& o) {
  std::vector<Violation> out;
  for_each_overlap(p, o, [&](OverlapKind kind, int k, int j, int i, PcWord const& lhs, PcWord const& rhs) {
    if (lhs != rhs) {
      out.push_back({kind, k, j, i, lhs, rhs});
      if (o.stop_at_first) {
        return false;
      }
    }
    return true;
  });
  return out;
}

InducedSequence::InducedSequence(PcPresentation const& p, bool normal)
    : _p(&p), _normal(normal), _seq(p.size() + 1) {}

std::size_t InducedSequence::length() const {
  return static_cast<std::size_t>(
      std::count_if(_seq.begin(), _seq.end(), [](PcWord const& w) { return !w.empty(); }));
}

PcWord InducedSequence::sift(PcWord x) const {
  Collector c(*_p);
  while (!x.empty()) {
    int const     d = x.front().gen;
    PcWord const& y = _seq[d];
    if (y.empty()) {
      return x;
    }
    Integer const& a = x.front().exp;
    Integer const& b = y.front().exp;
    if (a % b != 0) {
      return x;
    }
    x = c.product(x, c.power(y, -(a / b)));
  }
  return x;
}

bool InducedSequence::add(PcWord const& x) {
  if (contains(x)) {
    return false;
  }
  close({x});
  return true;
}

void InducedSequence::close(std::vector<PcWord> queue) {
  Collector c(*_p);
  int const n = _p->size();
  auto      closure_items = [&](int d) {
    PcWord const&  x = _seq[d];
    Integer const& r = _p->relative_order(d);
    if (r != 0) {
      queue.push_back(c.power(x, r / x.front().exp));
    }
    for (int e = 1; e <= n; ++e) {
      if (e != d && !_seq[e].empty()) {
        queue.push_back(c.commutator(x, _seq[e]));
      }
    }
    if (_normal) {
      for (int k = 1; k <= n; ++k) {
        queue.push_back(c.commutator(x, PcWord{Syllable{k, 1}}));
      }
    }
  };
  while (!queue.empty()) {
    PcWord x = std::move(queue.back());
    queue.pop_back();
    while (!x.empty()) {
      int const      d = x.front().gen;
      Integer const& r = _p->relative_order(d);
      if (_seq[d].empty()) {
        Integer a = x.front().exp;
        if (r != 0) {
          auto eg = extended_gcd(a, r);
          if (eg.g != a) {
            x = c.power(x, floor_mod(eg.s, r));
          }
        } else if (a < 0) {
          x = c.inverse(x);
        }
        _seq[d] = std::move(x);
        closure_items(d);
        break;
      }
      PcWord const& y = _seq[d];
      Integer const a = x.front().exp;
      Integer const b = y.front().exp;
      if (a % b == 0) {
        x = c.product(x, c.power(y, -(a / b)));
        continue;
      }
      auto   eg = extended_gcd(b, a);
      PcWord z  = c.product(c.power(y, eg.s), c.power(x, eg.t));
      if (z.empty() || z.front().gen != d) {
        throw Error("induced sequence combination lost its leading generator");
      }
      queue.push_back(y);
      queue.push_back(x);
      if (z.front().exp < 0) {
        z = c.inverse(z);
      }
      _seq[d] = std::move(z);
      closure_items(d);
      break;
    }
  }
}

InducedSequence igs_close(PcPresentation const& p, std::vector<PcWord> const& gens, bool normal) {
  InducedSequence s(p, normal);
  for (auto const& g : gens) {
    s.add(g);
  }
  return s;
}

namespace {

  std::vector<std::pair<int, int>> weight_blocks(PcPresentation const& p) {
    std::vector<std::pair<int, int>> out;
    int                              n = p.size();
    for (int i = 1; i <= n;) {
      int j = i;
      while (j + 1 <= n && p.weight(j + 1) == p.weight(i)) {
        ++j;
      }
      if (!out.empty() && p.weight(i) <= p.weight(out.back().first)) {
        throw Error("weights are not increasing along the series");
      }
      out.emplace_back(i, j);
      i = j + 1;
    }
    return out;
  }

}  // namespace

std::vector<std::vector<Integer>> layer_invariants_mod(PcPresentation const& p,
                                                       InducedSequence const& seq) {
  std::vector<std::vector<Integer>> out;
  auto const&                       els = seq.elements();
  int                               expected = 1;
  for (auto [s, e] : weight_blocks(p)) {
    while (expected < p.weight(s)) {
      out.emplace_back();
      ++expected;
    }
    ++expected;
    std::size_t    dim = static_cast<std::size_t>(e - s + 1);
    IntegerLattice l(dim);
    for (int k = s; k <= e; ++k) {
      if (p.relative_order(k) != 0) {
        l.add_vector(SparseVector{{static_cast<std::size_t>(k - s), p.relative_order(k)}});
      }
      if (static_cast<std::size_t>(k) < els.size() && !els[k].empty()) {
        SparseVector v;
        for (auto const& syl : els[k]) {
          if (syl.gen >= s && syl.gen <= e) {
            v.emplace_back(static_cast<std::size_t>(syl.gen - s), syl.exp);
          }
        }
        l.add_vector(v);
      }
    }
    out.push_back(abelian_invariants(l));
  }
  return out;
}

std::vector<std::vector<Integer>> layer_invariants(PcPresentation const& p) {
  return layer_invariants_mod(p, InducedSequence(p, true));
}

}  // namespace lpnq
