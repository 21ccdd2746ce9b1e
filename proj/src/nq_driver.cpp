#include "lpnq/errors.hpp"
#include "lpnq/nq.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <deque>
#include <set>

namespace lpnq {

namespace {

  using Clock = std::chrono::steady_clock;
  using Node  = PreimageDag::Node;

  double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }

  FreeWord to_free(PcWord const& w) {
    return FreeWord(std::vector<Syllable>(w.begin(), w.end()));
  }

  std::vector<std::string> pc_names(int l) {
    std::vector<std::string> names;
    for (int i = 1; i <= l; ++i) {
      names.push_back("g" + std::to_string(i));
    }
    return names;
  }

  std::vector<FreeWord> pc_relators(PcPresentation const& pc) {
    int const             l = pc.size();
    std::vector<FreeWord> rels;
    for (int k = 1; k <= l; ++k) {
      for (int j = 1; j < k; ++j) {
        rels.push_back(conjugate(FreeWord::generator(k), FreeWord::generator(j))
                       * inverse(to_free(pc.conjugate(k, j))));
      }
    }
    for (int k = 1; k <= l; ++k) {
      if (pc.relative_order(k) != 0) {
        rels.push_back(FreeWord::generator(k, pc.relative_order(k))
                       * inverse(to_free(pc.power(k))));
      }
    }
    return rels;
  }

  struct Ops {
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

  // Image of a normal word under the endomorphism given on pc generators.
  PcWord apply_pc(Collector& c, std::vector<PcWord> const& gen_images, PcWord const& x) {
    c.reset();
    for (auto const& s : x) {
      c.multiply(gen_images[static_cast<std::size_t>(s.gen - 1)], s.exp);
    }
    return c.result();
  }

  // Re-expresses a system computed for a presentation on g1..gl in terms of
  // the source of `outer`, where g_j stands for the j-th generator of outer.
  NilpotentQuotientSystem rebase(NilpotentQuotientSystem const& inner,
                                 NilpotentQuotientSystem const& outer) {
    NilpotentQuotientSystem out;
    out.source       = outer.source;
    out.presentation = inner.presentation;
    out.nq_class     = inner.nq_class;
    Collector c(inner.presentation);
    for (auto const& im : outer.images) {
      out.images.push_back(evaluate(c, inner.images, to_free(im)));
    }
    out.dag = outer.dag;
    std::vector<Node> map(inner.dag.size(), 0);
    for (std::size_t x = 1; x < inner.dag.size(); ++x) {
      auto const& e = inner.dag.entry(static_cast<Node>(x));
      switch (e.kind) {
        case PreimageDag::Kind::Identity:
          map[x] = 0;
          break;
        case PreimageDag::Kind::Leaf:
          map[x] = outer.preimages.at(static_cast<std::size_t>(e.a - 1));
          break;
        case PreimageDag::Kind::Mul:
          map[x] = out.dag.multiply(map[e.a], map[e.b]);
          break;
        case PreimageDag::Kind::Inv:
          map[x] = out.dag.inverse(map[e.a]);
          break;
        case PreimageDag::Kind::Pow:
          map[x] = out.dag.power(map[e.a], e.k);
          break;
      }
    }
    for (Node p : inner.preimages) {
      out.preimages.push_back(map[static_cast<std::size_t>(p)]);
    }
    return out;
  }

}  // namespace

NqResult run_engine(LPresentation const& p, NqOptions const& o) {
  p.validate();
  NqResult res;
  res.system       = NilpotentQuotientSystem::trivial(p);
  auto const start = Clock::now();
  for (int cls = 1; cls <= o.max_class; ++cls) {
    if (cls > 1 && o.time_limit_seconds > 0 && seconds_since(start) >= o.time_limit_seconds) {
      res.partial = true;
      break;
    }
    auto const t0 = Clock::now();
    StepResult st = induction_step(res.system);
    if (st.became_stable) {
      res.maximal = true;
      break;
    }
    if (o.verify) {
      verify_system(st.system);
    }
    double const secs = seconds_since(t0);
    res.system        = std::move(st.system);
    res.layers.push_back(st.layer);
    res.seconds_per_class.push_back(secs);
    if (o.progress) {
      o.progress(cls, res.layers.back(), secs);
    }
  }
  return res;
}

NqResult nilpotent_quotient(LPresentation const& p, NqOptions const& o) {
  if (p.declared_ascending) {
    return run_engine(p, o);
  }
  if (p.declared_invariant) {
    return run_engine(as_ascending(p), o);
  }
  throw NotInvariantError(
      "presentation is not declared invariant; use the general path with a choice of Q-bar");
}

LPresentation pc_finite_presentation(PcPresentation const& pc, std::vector<PcWord> const& extra) {
  auto rels = pc_relators(pc);
  for (auto const& w : extra) {
    rels.push_back(to_free(w));
  }
  return from_finite_presentation(pc_names(pc.size()), std::move(rels));
}

NqResult nilpotent_quotient_general(LPresentation const&            p,
                                    std::vector<std::size_t> const& qbar,
                                    NqOptions const&                o) {
  std::set<std::size_t> keep(qbar.begin(), qbar.end());
  for (auto q : keep) {
    if (q >= p.fixed_relators.size()) {
      throw DimensionError("Q-bar index out of range");
    }
  }
  LPresentation gbar = p;
  gbar.fixed_relators.clear();
  for (auto q : keep) {
    gbar.fixed_relators.push_back(p.fixed_relators[q]);
  }
  gbar.declared_invariant = true;
  gbar.declared_ascending = gbar.fixed_relators.empty();

  NqResult h = run_engine(gbar, o);

  std::vector<PcWord> extra;
  {
    Collector c(h.system.presentation);
    for (std::size_t q = 0; q < p.fixed_relators.size(); ++q) {
      if (!keep.count(q)) {
        PcWord v = evaluate(c, h.system.images, p.fixed_relators[q]);
        if (!v.empty()) {
          extra.push_back(std::move(v));
        }
      }
    }
  }
  LPresentation fp = pc_finite_presentation(h.system.presentation, extra);
  NqOptions     o2 = o;
  o2.max_class     = h.nq_class();
  o2.progress      = nullptr;
  o2.verify        = false;
  NqResult r       = run_engine(fp, o2);

  NqResult out;
  out.system               = rebase(r.system, h.system);
  out.layers               = r.layers;
  out.maximal              = h.maximal || r.maximal;
  out.partial              = h.partial || r.partial;
  out.gens_invariant_cover = h.total_gens();
  for (std::size_t i = 0; i < out.layers.size(); ++i) {
    double s = i < h.seconds_per_class.size() ? h.seconds_per_class[i] : 0.0;
    if (i < r.seconds_per_class.size()) {
      s += r.seconds_per_class[i];
    }
    out.seconds_per_class.push_back(s);
  }
  if (o.verify) {
    verify_system(out.system);
  }
  return out;
}

std::vector<std::vector<Integer>> naive_layer_invariants(LPresentation const& p, int n) {
  if (n < 1 || n > 5 || p.rank() > 3) {
    throw TooLargeError("naive method is limited to class at most 5 and at most 3 generators");
  }
  NqOptions o;
  o.max_class    = n;
  o.verify       = false;
  NqResult fr    = run_engine(from_finite_presentation(p.generator_names, {}), o);
  auto const& H  = fr.system.presentation;
  auto const& sy = fr.system;
  Collector   c(H);

  std::vector<std::vector<PcWord>> phis;
  for (auto const& e : p.endomorphisms) {
    if (e.map.is_identity()) {
      continue;
    }
    std::vector<PcWord> leaves;
    for (std::size_t i = 1; i <= e.map.rank(); ++i) {
      leaves.push_back(evaluate(c, sy.images, e.map.image(static_cast<int>(i))));
    }
    Ops ops{c, leaves};
    phis.push_back(sy.dag.evaluate<PcWord>(sy.preimages, ops));
  }

  InducedSequence          spun(H, true);
  std::deque<PcWord>       queue;
  for (auto const& r : p.iterated_relators) {
    PcWord x = evaluate(c, sy.images, r);
    spun.add(x);
    if (!x.empty()) {
      queue.push_back(std::move(x));
    }
  }
  while (!queue.empty()) {
    PcWord x = std::move(queue.front());
    queue.pop_front();
    for (auto const& phi : phis) {
      PcWord y = apply_pc(c, phi, x);
      if (spun.add(y)) {
        queue.push_back(std::move(y));
      }
    }
  }
  InducedSequence all = spun;
  for (auto const& q : p.fixed_relators) {
    all.add(evaluate(c, sy.images, q));
  }
  auto layers = layer_invariants_mod(H, all);
  while (!layers.empty() && layers.back().empty()) {
    layers.pop_back();
  }
  return layers;
}

std::vector<PcWord> induced_shift_images(NilpotentQuotientSystem const& d) {
  PcPresentation const& H = d.presentation;
  std::size_t const     m = d.source.rank();
  int const             l = H.size();
  Collector             c(H);
  std::vector<PcWord>   leaves;
  for (std::size_t i = 0; i < m; ++i) {
    leaves.push_back(d.images[(i + 1) % m]);
  }
  Ops  ops{c, leaves};
  auto zeta = d.dag.evaluate<PcWord>(d.preimages, ops);

  auto gen = [](int k) { return PcWord{Syllable{k, Integer(1)}}; };
  for (int k = 1; k <= l; ++k) {
    for (int j = 1; j < k; ++j) {
      PcWord lhs = c.conjugate(zeta[k - 1], zeta[j - 1]);
      PcWord rhs = apply_pc(c, zeta, H.conjugate(k, j));
      if (lhs != rhs) {
        throw NotInvariantError("shift does not respect the relation g" + std::to_string(k)
                                + "^g" + std::to_string(j));
      }
    }
    if (H.relative_order(k) != 0) {
      if (c.power(zeta[k - 1], H.relative_order(k)) != apply_pc(c, zeta, H.power(k))) {
        throw NotInvariantError("shift does not respect the power relation of g"
                                + std::to_string(k));
      }
    }
  }
  for (int k = 1; k <= l; ++k) {
    PcWord x = gen(k);
    for (std::size_t i = 0; i < m; ++i) {
      x = apply_pc(c, zeta, x);
    }
    if (x != gen(k)) {
      throw Error("shift does not have order dividing the rank");
    }
  }
  return zeta;
}

NqResult gupta_sidki_split(int p, int c, NqOptions const& o) {
  NqOptions od = o;
  od.max_class = c;
  od.progress  = nullptr;
  NqResult d   = nilpotent_quotient(gen_gupta_sidki_D(p, true), od);
  auto zeta    = induced_shift_images(d.system);

  PcPresentation const& H     = d.system.presentation;
  int const             l     = H.size();
  auto                  names = pc_names(l);
  names.push_back("t");
  auto       rels = pc_relators(H);
  FreeWord const t = FreeWord::generator(l + 1);
  rels.push_back(power(t, p));
  for (int k = 1; k <= l; ++k) {
    rels.push_back(conjugate(FreeWord::generator(k), t) * inverse(to_free(zeta[k - 1])));
  }
  NqOptions oh = o;
  NqResult  r   = run_engine(from_finite_presentation(std::move(names), std::move(rels)), oh);
  r.gens_invariant_cover = d.total_gens();
  return r;
}

std::string result_json(NqResult const& r) {
  using nlohmann::json;
  auto num = [](Integer const& x) -> json {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max()) {
      return static_cast<long long>(x);
    }
    return to_string(x);
  };
  json layers = json::array();
  for (auto const& layer : r.layers) {
    json l = json::array();
    for (auto const& x : layer) {
      l.push_back(num(x));
    }
    layers.push_back(std::move(l));
  }
  json j;
  j["class"]                = r.nq_class();
  j["maximal"]              = r.maximal;
  j["partial"]              = r.partial;
  j["layers"]               = std::move(layers);
  j["total_gens"]           = r.total_gens();
  j["gens_invariant_cover"] = r.gens_invariant_cover ? json(*r.gens_invariant_cover) : json();
  j["seconds_per_class"]    = r.seconds_per_class;
  return j.dump();
}

}  // namespace lpnq
