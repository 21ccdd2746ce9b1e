#pragma once

namespace lpnq {

template <typename Visit>
void for_each_overlap(PcPresentation const& p, ConsistencyOptions const& o, Visit&& visit) {
  Collector  c(p);
  int const  n     = p.size();
  int const  bound = o.weight_bound;
  auto       w     = [&](int x) { return p.weight(x); };
  auto       g     = [](int x, Integer const& e = 1) { return PcWord{Syllable{x, e}}; };
  auto       cat   = [](PcWord a, PcWord const& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  auto finite = [&](int x) { return p.relative_order(x) != 0; };

  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (bound > 0 && w(i) + w(j) + 1 > bound) {
        continue;
      }
      bool const ji_trivial = p.conjugate_trivial(j, i);
      PcWord     ji;
      bool       have_ji = false;
      for (int k = j + 1; k <= n; ++k) {
        if (bound > 0 && w(i) + w(j) + w(k) > bound) {
          continue;
        }
        if (ji_trivial && p.conjugate_trivial(k, i) && p.conjugate_trivial(k, j)) {
          continue;
        }
        if (!have_ji) {
          ji      = c.collect(cat(g(j), g(i)));
          have_ji = true;
        }
        PcWord lhs = c.collect(cat(g(k), ji));
        PcWord kj  = c.collect(cat(g(k), g(j)));
        PcWord rhs = c.collect(cat(kj, g(i)));
        if (!visit(OverlapKind::Triple, k, j, i, lhs, rhs)) {
          return;
        }
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (bound > 0 && w(i) + w(j) > bound) {
        continue;
      }
      if (finite(j)) {
        PcWord lhs = c.collect(cat(p.power(j), g(i)));
        PcWord ji  = c.collect(cat(g(j), g(i)));
        PcWord rhs = c.collect(cat(g(j, p.relative_order(j) - 1), ji));
        if (!visit(OverlapKind::PowerLeft, 0, j, i, lhs, rhs)) {
          return;
        }
      }
      if (finite(i)) {
        PcWord lhs = c.collect(cat(g(j), p.power(i)));
        PcWord ji  = c.collect(cat(g(j), g(i)));
        PcWord rhs = c.collect(cat(ji, g(i, p.relative_order(i) - 1)));
        if (!visit(OverlapKind::PowerRight, 0, j, i, lhs, rhs)) {
          return;
        }
      }
      if (o.include_inverse && !finite(i)) {
        PcWord lhs = g(j);
        PcWord t   = c.collect(cat(g(j), g(i, -1)));
        PcWord rhs = c.collect(cat(t, g(i)));
        if (!visit(OverlapKind::InverseRight, 0, j, i, lhs, rhs)) {
          return;
        }
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    if (finite(i)) {
      PcWord lhs = c.collect(cat(p.power(i), g(i)));
      PcWord rhs = c.collect(cat(g(i), p.power(i)));
      if (!visit(OverlapKind::PowerSelf, 0, 0, i, lhs, rhs)) {
        return;
      }
    }
  }
}

}  // namespace lpnq
