#include "lpnq/nq.hpp"

#include "lpnq/errors.hpp"

#include <chrono>
#include <cstdlib>
#include <deque>
#include <iostream>
#include <sstream>

namespace lpnq {

namespace {

  using Node = PreimageDag::Node;

  // Phase timings on stderr when LPNQ_TRACE is set.
  class Trace {
   public:
    explicit Trace(char const* what)
        : _what(what), _on(std::getenv("LPNQ_TRACE") != nullptr),
          _t0(std::chrono::steady_clock::now()) {}
    ~Trace() {
      if (_on) {
        std::chrono::duration<double> d = std::chrono::steady_clock::now() - _t0;
        std::cerr << "[lpnq] " << _what << ' ' << d.count() << "s\n";
      }
    }

   private:
    char const*                           _what;
    bool                                  _on;
    std::chrono::steady_clock::time_point _t0;
  };

  struct PcOps {
    Collector&                 c;
    std::vector<PcWord> const& leaves;

    PcWord identity() {
      return {};
    }
    PcWord leaf(int g) {
      return leaves.at(static_cast<std::size_t>(g - 1));
    }
    PcWord mul(PcWord const& x, PcWord const& y) {
      return c.product(x, y);
    }
    PcWord inv(PcWord const& x) {
      return c.inverse(x);
    }
    PcWord pow(PcWord const& x, Integer const& k) {
      return c.power(x, k);
    }
  };

  std::vector<PcWord> evaluate_nodes(PreimageDag const&         dag,
                                     std::vector<Node> const&   roots,
                                     Collector&                 c,
                                     std::vector<PcWord> const& leaves) {
    PcOps ops{c, leaves};
    return dag.evaluate<PcWord>(roots, ops);
  }

  Node word_node(PreimageDag& dag, std::vector<Node> const& pre, PcWord const& w) {
    std::vector<Node> parts;
    parts.reserve(w.size());
    for (auto const& s : w) {
      parts.push_back(dag.power(pre[static_cast<std::size_t>(s.gen - 1)], s.exp));
    }
    return dag.product(parts);
  }

  PcWord old_part(PcWord const& w, int l) {
    PcWord out;
    for (auto const& s : w) {
      if (s.gen <= l) {
        out.push_back(s);
      }
    }
    return out;
  }

  SparseVector tails_of(PcWord const& w, int l) {
    SparseVector out;
    for (auto const& s : w) {
      if (s.gen > l) {
        out.emplace_back(static_cast<std::size_t>(s.gen - l - 1), s.exp);
      }
    }
    return out;
  }

  SparseVector difference(SparseVector a, SparseVector const& b) {
    add_multiple(a, b, Integer(-1));
    return a;
  }

  std::string describe(TailSource const& t) {
    switch (t.kind) {
      case TailSource::Kind::Conjugate:
        return "g" + std::to_string(t.a) + "^g" + std::to_string(t.b);
      case TailSource::Kind::Power:
        return "g" + std::to_string(t.a) + "^r";
      case TailSource::Kind::Image:
        return "s" + std::to_string(t.a);
    }
    return "?";
  }

}  // namespace

NilpotentQuotientSystem NilpotentQuotientSystem::trivial(LPresentation const& source) {
  NilpotentQuotientSystem sys;
  sys.source       = source;
  sys.presentation = PcPresentation(0);
  sys.presentation.complete();
  sys.images.assign(source.rank(), PcWord{});
  return sys;
}

FreeWord NilpotentQuotientSystem::preimage_word(int g) const {
  if (g < 1 || g > size()) {
    throw DimensionError("pc generator out of range");
  }
  return dag.expand(preimages[static_cast<std::size_t>(g - 1)]);
}

std::vector<std::vector<Integer>> NilpotentQuotientSystem::layers() const {
  auto out = layer_invariants(presentation);
  out.resize(static_cast<std::size_t>(nq_class));
  return out;
}

SparseVector CoveredSystem::tail_part(PcWord const& w) const {
  if (!in_block(w)) {
    throw NotInvariantError("element " + format_pcword(w)
                            + " lies outside the central block of the cover");
  }
  return tails_of(w, old_size());
}

bool CoveredSystem::in_block(PcWord const& w) const {
  for (auto const& s : w) {
    if (s.gen <= old_size()) {
      return false;
    }
  }
  return true;
}

CoveredSystem cover(NilpotentQuotientSystem const& sys, bool full_consistency) {
  CoveredSystem cs;
  cs.base                 = sys;
  PcPresentation const& H = sys.presentation;
  int const             l = H.size();
  int const             c = sys.nq_class + 1;
  std::size_t const     m = sys.source.rank();
  cs.target_class         = c;

  auto add_tail = [&](TailSource t) {
    cs.tails.push_back(t);
    return static_cast<int>(cs.tails.size() - 1);
  };
  std::vector<int>              power_tail(l + 1, -1);
  std::vector<int>              image_tail(m, -1);
  std::vector<std::vector<int>> conj_tail(l + 1);
  for (int k = 1; k <= l; ++k) {
    conj_tail[k].assign(k, -1);
    if (H.relative_order(k) != 0) {
      power_tail[k] = add_tail({TailSource::Kind::Power, k, 0});
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    image_tail[i] = add_tail({TailSource::Kind::Image, static_cast<int>(i + 1), 0});
  }
  for (int pass = 0; pass < 2; ++pass) {
    for (int k = 1; k <= l; ++k) {
      for (int j = 1; j < k; ++j) {
        bool const light = H.weight(j) == 1;
        if ((pass == 1) == light && H.weight(j) + H.weight(k) <= c) {
          conj_tail[k][j] = add_tail({TailSource::Kind::Conjugate, k, j});
        }
      }
    }
  }
  int const T = static_cast<int>(cs.tails.size());
  auto      tail_gen = [&](int t) { return Syllable{l + 1 + t, Integer(1)}; };

  PcPresentation E(l + T);
  for (int g = 1; g <= l; ++g) {
    E.set_relative_order(g, H.relative_order(g));
    E.set_weight(g, H.weight(g));
    E.set_definition(g, H.definition(g));
  }
  for (int t = 0; t < T; ++t) {
    E.set_weight(l + 1 + t, c);
  }
  for (int k = 1; k <= l; ++k) {
    for (int j = 1; j < k; ++j) {
      if (conj_tail[k][j] >= 0) {
        PcWord r = H.conjugate(k, j);
        r.push_back(tail_gen(conj_tail[k][j]));
        E.set_conjugate(k, j, r);
      } else if (!H.conjugate_trivial(k, j)) {
        E.set_conjugate(k, j, H.conjugate(k, j));
      }
    }
    if (power_tail[k] >= 0) {
      PcWord r = H.power(k);
      r.push_back(tail_gen(power_tail[k]));
      E.set_power(k, r);
    }
  }
  E.set_guard_steps(H.guard_steps());
  E.complete();
  cs.presentation = std::move(E);

  cs.images.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    cs.images[i] = sys.images[i];
    cs.images[i].push_back(tail_gen(image_tail[i]));
  }

  cs.dag                       = sys.dag;
  std::vector<Node> const& pre = sys.preimages;
  cs.tail_preimages.resize(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    TailSource const& src = cs.tails[t];
    Node              x   = 0;
    switch (src.kind) {
      case TailSource::Kind::Power:
        x = cs.dag.multiply(cs.dag.inverse(word_node(cs.dag, pre, H.power(src.a))),
                            cs.dag.power(pre[src.a - 1], H.relative_order(src.a)));
        break;
      case TailSource::Kind::Image:
        x = cs.dag.multiply(cs.dag.inverse(word_node(cs.dag, pre, sys.images[src.a - 1])),
                            cs.dag.leaf(src.a));
        break;
      case TailSource::Kind::Conjugate:
        x = cs.dag.multiply(
            cs.dag.inverse(word_node(cs.dag, pre, H.conjugate(src.a, src.b))),
            cs.dag.conjugate(pre[src.a - 1], pre[src.b - 1]));
        break;
    }
    cs.tail_preimages[t] = x;
  }

  cs.relations = IntegerLattice(static_cast<std::size_t>(T));
  {
    Trace              trace_consistency("consistency");
    ConsistencyOptions opts;
    opts.weight_bound    = full_consistency ? 0 : c;
    opts.include_inverse = true;
    for_each_overlap(cs.presentation, opts,
                   [&](OverlapKind, int k, int j, int i, PcWord const& lhs, PcWord const& rhs) {
                     if (old_part(lhs, l) != old_part(rhs, l)) {
                       throw InconsistentError("overlap (" + std::to_string(k) + ","
                                               + std::to_string(j) + "," + std::to_string(i)
                                               + ") is inconsistent below the tails");
                     }
                     cs.relations.add_vector(difference(tails_of(lhs, l), tails_of(rhs, l)));
                     return true;
                   });
  }
  Trace      trace_definitions("definitions");
  Collector  col(cs.presentation);
  auto const values = evaluate_nodes(cs.dag, pre, col, cs.images);
  for (int g = 1; g <= l; ++g) {
    PcWord const& v = values[g - 1];
    if (old_part(v, l) != PcWord{Syllable{g, Integer(1)}}) {
      throw InconsistentError("preimage of g" + std::to_string(g) + " does not map to it");
    }
    cs.relations.add_vector(tails_of(v, l));
  }
  return cs;
}

InducedEndomorphism induce_endomorphism(CoveredSystem const& cs, FreeEndomorphism const& phi) {
  std::size_t const T = cs.tail_count();
  if (phi.rank() != cs.base.source.rank()) {
    throw DimensionError("endomorphism rank differs from the source rank");
  }
  std::vector<SparseVector> rows(T);
  if (phi.is_identity()) {
    for (std::size_t t = 0; t < T; ++t) {
      rows[t] = SparseVector{{t, Integer(1)}};
    }
    return InducedEndomorphism(std::move(rows));
  }
  Trace               trace("induce");
  Collector           c(cs.presentation);
  std::vector<PcWord> leaves;
  leaves.reserve(phi.rank());
  for (std::size_t i = 1; i <= phi.rank(); ++i) {
    leaves.push_back(evaluate(c, cs.images, phi.image(static_cast<int>(i))));
  }
  auto const values = evaluate_nodes(cs.dag, cs.tail_preimages, c, leaves);
  for (std::size_t t = 0; t < T; ++t) {
    rows[t] = cs.tail_part(values[t]);
  }
  return InducedEndomorphism(std::move(rows));
}

IntegerLattice spin_in_M(CoveredSystem const& cs) {
  Trace                trace("spin");
  IntegerLattice       lat = cs.relations;
  LPresentation const& src = cs.base.source;
  Collector            c(cs.presentation);
  for (auto const& q : src.fixed_relators) {
    lat.add_vector(cs.tail_part(evaluate(c, cs.images, q)));
  }
  std::vector<InducedEndomorphism> phis;
  for (auto const& e : src.endomorphisms) {
    if (!e.map.is_identity()) {
      phis.push_back(induce_endomorphism(cs, e.map));
    }
  }
  std::deque<SparseVector> queue;
  for (auto const& r : src.iterated_relators) {
    SparseVector v = cs.tail_part(evaluate(c, cs.images, r));
    lat.add_vector(v);
    if (!phis.empty() && !v.empty()) {
      queue.push_back(std::move(v));
    }
  }
  while (!queue.empty()) {
    SparseVector v = std::move(queue.front());
    queue.pop_front();
    for (auto const& phi : phis) {
      SparseVector w = phi.apply(v);
      if (lat.add_vector(w)) {
        queue.push_back(std::move(w));
      }
    }
  }
  return lat;
}

StepResult induction_step(NilpotentQuotientSystem const& sys, bool full_consistency) {
  Trace                     trace("step");
  CoveredSystem             cs = cover(sys, full_consistency);
  IntegerLattice const      U  = spin_in_M(cs);
  CyclicDecomposition const cd = cyclic_decomposition(U);

  StepResult out;
  out.layer = cd.orders;
  int const d = static_cast<int>(cd.orders.size());
  if (d == 0) {
    out.system        = sys;
    out.became_stable = true;
    return out;
  }
  PcPresentation const& H = sys.presentation;
  int const             l = H.size();
  int const             c = cs.target_class;
  std::size_t const     T = cs.tail_count();

  std::vector<PcWord> coords(T);
  for (std::size_t t = 0; t < T; ++t) {
    auto const v = cd.coordinates(SparseVector{{t, Integer(1)}});
    for (int k = 0; k < d; ++k) {
      if (v[k] != 0) {
        coords[t].push_back({l + 1 + k, v[k]});
      }
    }
  }
  auto with_tail = [&](PcWord w, int tail_gen) {
    if (tail_gen > l) {
      PcWord const& x = coords[static_cast<std::size_t>(tail_gen - l - 1)];
      w.insert(w.end(), x.begin(), x.end());
    }
    return w;
  };
  auto tail_of = [&](PcWord const& w) {
    return (!w.empty() && w.back().gen > l) ? w.back().gen : 0;
  };

  PcPresentation const& E = cs.presentation;
  PcPresentation        P(l + d);
  for (int g = 1; g <= l; ++g) {
    P.set_relative_order(g, H.relative_order(g));
    P.set_weight(g, H.weight(g));
    P.set_definition(g, H.definition(g));
  }
  for (int k = 0; k < d; ++k) {
    P.set_relative_order(l + 1 + k, cd.orders[k]);
    P.set_weight(l + 1 + k, c);
    SparseVector const& rep = cd.representatives[k];
    Definition          def;
    if (rep.size() == 1 && rep[0].second == 1) {
      TailSource const& src = cs.tails[rep[0].first];
      switch (src.kind) {
        case TailSource::Kind::Conjugate:
          def = {DefinitionKind::CommutatorOf, src.a, src.b, describe(src)};
          break;
        case TailSource::Kind::Power:
          def = {DefinitionKind::TailOfRelation, src.a, 0, describe(src)};
          break;
        case TailSource::Kind::Image:
          def = {DefinitionKind::ImageOfSource, src.a, 0, describe(src)};
          break;
      }
    } else {
      std::ostringstream os;
      for (auto const& [t, a] : rep) {
        if (os.tellp() > 0) {
          os << " + ";
        }
        os << to_string(a) << '*' << describe(cs.tails[t]);
      }
      def = {DefinitionKind::InitialBasis, 0, 0, os.str()};
    }
    P.set_definition(l + 1 + k, std::move(def));
  }
  for (int k = 1; k <= l; ++k) {
    for (int j = 1; j < k; ++j) {
      if (E.conjugate_trivial(k, j)) {
        continue;
      }
      PcWord const& r = E.raw_conjugate(k, j);
      PcWord        w = with_tail(old_part(r, l), tail_of(r));
      if (!(w.size() == 1 && w[0].gen == k && w[0].exp == 1)) {
        P.set_conjugate(k, j, w);
      }
    }
    if (H.relative_order(k) != 0) {
      PcWord const& r = E.power(k);
      P.set_power(k, with_tail(old_part(r, l), tail_of(r)));
    }
  }
  P.set_guard_steps(H.guard_steps());
  P.complete();

  NilpotentQuotientSystem& ns = out.system;
  ns.source                   = sys.source;
  ns.presentation             = std::move(P);
  ns.nq_class                 = c;
  ns.images.resize(cs.images.size());
  for (std::size_t i = 0; i < cs.images.size(); ++i) {
    PcWord const& r = cs.images[i];
    ns.images[i]    = with_tail(old_part(r, l), tail_of(r));
  }
  ns.dag        = std::move(cs.dag);
  ns.preimages  = sys.preimages;
  for (int k = 0; k < d; ++k) {
    std::vector<Node> parts;
    for (auto const& [t, a] : cd.representatives[k]) {
      parts.push_back(ns.dag.power(cs.tail_preimages[t], a));
    }
    ns.preimages.push_back(ns.dag.product(parts));
  }
  return out;
}

NilpotentQuotientSystem abelian_quotient(LPresentation const& p) {
  StepResult st = induction_step(NilpotentQuotientSystem::trivial(p));
  if (st.became_stable) {
    st.system.nq_class = 1;
  }
  return std::move(st.system);
}

void verify_system(NilpotentQuotientSystem const& sys) {
  PcPresentation const& H = sys.presentation;
  Collector             c(H);
  auto const            values = evaluate_nodes(sys.dag, sys.preimages, c, sys.images);
  for (int g = 1; g <= H.size(); ++g) {
    if (values[g - 1] != PcWord{Syllable{g, Integer(1)}}) {
      throw InconsistentError("preimage of g" + std::to_string(g) + " evaluates to "
                              + format_pcword(values[g - 1]));
    }
  }
  auto check = [&](FreeWord const& w, char const* what) {
    PcWord v = evaluate(c, sys.images, w);
    if (!v.empty()) {
      throw InconsistentError(std::string(what) + " relator does not vanish: "
                              + format_pcword(v));
    }
  };
  for (auto const& q : sys.source.fixed_relators) {
    check(q, "fixed");
  }
  for (auto const& r : sys.source.iterated_relators) {
    check(r, "iterated");
    for (auto const& e : sys.source.endomorphisms) {
      if (!e.map.is_identity()) {
        check(apply(e.map, r), "spun");
      }
    }
  }
}

}  // namespace lpnq
