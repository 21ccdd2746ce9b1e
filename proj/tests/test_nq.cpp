#include "lpnq/errors.hpp"
#include "lpnq/nq.hpp"
#include "lpnq/refdata.hpp"

#include <doctest.h>

#include <random>

using namespace lpnq;

namespace {

using Layers = std::vector<std::vector<Integer>>;

std::vector<int> ranks(Layers const& layers) {
  std::vector<int> out;
  for (auto const& l : layers) {
    out.push_back(static_cast<int>(l.size()));
  }
  return out;
}

NqResult run(LPresentation const& p, int c) {
  NqOptions o;
  o.max_class = c;
  return nilpotent_quotient(p, o);
}

}  // namespace

TEST_CASE("abelian quotients") {
  auto g = abelian_quotient(grigorchuk_ascending());
  CHECK(g.layers() == Layers{{2, 2, 2}});
  CHECK(g.size() == 3);
  for (int p : {3, 4, 5}) {
    CHECK(abelian_quotient(gen_fabrykowski_gupta(p)).layers() == Layers{{p, p}});
  }
  CHECK(abelian_quotient(free_group(3)).layers() == Layers{{0, 0, 0}});
  CHECK(abelian_quotient(gen_gupta_sidki_D(3)).layers() == Layers{{3, 3, 3}});
}

TEST_CASE("cover of the free abelian group of rank 2") {
  auto sys = abelian_quotient(free_group(2));
  auto cs  = cover(sys);
  CHECK(cs.tail_count() >= 1);
  auto st = induction_step(sys);
  CHECK(st.layer == std::vector<Integer>{0});
  CHECK(st.system.size() == 3);
  for (int i = 1; i <= 3; ++i) {
    CHECK(st.system.presentation.relative_order(i) == 0);
  }
}

TEST_CASE("grigorchuk class two and three steps") {
  auto sys = abelian_quotient(grigorchuk_ascending());
  auto s2  = induction_step(sys);
  CHECK(s2.layer == std::vector<Integer>{2, 2});
  auto s3 = induction_step(s2.system);
  CHECK(s3.layer == std::vector<Integer>{2, 2});
  CHECK(consistency_check(s3.system.presentation).empty());
  CHECK_NOTHROW(verify_system(s3.system));
}

TEST_CASE("induced endomorphisms") {
  auto g   = grigorchuk_ascending();
  auto sys = run(g, 2).system;
  auto cs  = cover(sys);
  auto d   = cs.tail_count();

  auto id = induce_endomorphism(cs, FreeEndomorphism::identity(3));
  auto const& sigma = g.endomorphisms[0].map;
  auto        s1    = induce_endomorphism(cs, sigma);
  auto        s2    = induce_endomorphism(cs, compose(sigma, sigma));

  std::mt19937                       rng(31);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int k = 0; k < 100; ++k) {
    Vector v(d);
    for (auto& x : v) {
      x = coef(rng);
    }
    auto sv = to_sparse(v);
    CHECK(cs.relations.membership(id.apply(sv)).residue == cs.relations.membership(sv).residue);
    CHECK(cs.relations.membership(s2.apply(sv)).residue
          == cs.relations.membership(s1.apply(s1.apply(sv))).residue);
  }
}

TEST_CASE("spin of the free group is trivial") {
  auto sys = abelian_quotient(free_group(2));
  auto cs  = cover(sys);
  auto l   = spin_in_M(cs);
  CHECK(abelian_invariants(l) == abelian_invariants(cs.relations));
}

TEST_CASE("free groups follow the witt formula") {
  auto r = run(free_group(3), 5);
  for (int n = 1; n <= 5; ++n) {
    CHECK(r.layers[n - 1].size() == witt_rank(3, n));
    for (auto const& x : r.layers[n - 1]) {
      CHECK(x == 0);
    }
  }
  CHECK(r.total_gens() == 3 + 3 + 8 + 18 + 48);
}

TEST_CASE("maximal quotient of fg:6") {
  auto r = run(gen_fabrykowski_gupta(6), 10);
  CHECK(r.maximal);
  CHECK(r.nq_class() == 3);
  CHECK(r.total_gens() == 4);
  CHECK_FALSE(r.partial);
}

TEST_CASE("fabrykowski-gupta over Z/3") {
  auto r = run(gen_fabrykowski_gupta(3), 8);
  for (int i = 1; i <= 8; ++i) {
    CHECK(static_cast<int>(r.layers[i - 1].size()) == fg3_rank(i));
    for (auto const& x : r.layers[i - 1]) {
      CHECK(x == 3);
    }
  }
}

TEST_CASE("grigorchuk to class 8") {
  auto r = run(grigorchuk_ascending(), 8);
  CHECK(ranks(r.layers) == std::vector<int>{3, 2, 2, 1, 2, 2, 1, 1});
  CHECK(consistency_check(r.system.presentation).empty());
  for (int g = 1; g <= r.total_gens(); ++g) {
    CHECK(evaluate(r.system.presentation, r.system.images, r.system.preimage_word(g))
          == PcWord{{g, 1}});
  }
}

TEST_CASE("general path") {
  auto inv = grigorchuk_invariant();
  NqOptions o;
  o.max_class = 5;
  auto asc  = nilpotent_quotient(grigorchuk_ascending(), o).layers;
  auto all  = nilpotent_quotient_general(inv, {0, 1, 2, 3, 4}, o);
  auto none = nilpotent_quotient_general(inv, {}, o);
  CHECK(all.layers == asc);
  CHECK(none.layers == asc);
  REQUIRE(none.gens_invariant_cover);
  CHECK(*none.gens_invariant_cover > none.total_gens());
  CHECK_THROWS_AS(nilpotent_quotient_general(inv, {7}, o), DimensionError);

  auto g3 = example_g3();
  CHECK(nilpotent_quotient_general(g3, {}, o).layers == nilpotent_quotient(g3, o).layers);
}

TEST_CASE("non-invariant input needs the general path") {
  NqOptions o;
  o.max_class = 2;
  CHECK_THROWS_AS(nilpotent_quotient(gupta_sidki(3), o), NotInvariantError);
  auto r = nilpotent_quotient_general(gupta_sidki(3), {}, o);
  CHECK(r.layers.front().size() == 2);
}

TEST_CASE("naive method agrees on small classes") {
  for (auto const& p : {grigorchuk_ascending(), gen_fabrykowski_gupta(3), example_g4()}) {
    CHECK(naive_layer_invariants(p, 3) == run(p, 3).layers);
  }
  CHECK_THROWS_AS(naive_layer_invariants(free_group(4), 2), TooLargeError);
  CHECK_THROWS_AS(naive_layer_invariants(free_group(2), 6), TooLargeError);
}

TEST_CASE("gupta-sidki split strategy") {
  NqOptions o;
  o.max_class = 4;
  auto r      = gupta_sidki_split(3, 4, o);
  REQUIRE(r.layers.size() == 4);
  CHECK(r.layers[0].size() == 2);
  for (int n = 2; n <= 4; ++n) {
    CHECK(static_cast<int>(r.layers[n - 1].size()) == gs3_rank(n));
  }
  auto direct = nilpotent_quotient_general(gupta_sidki(3), {}, o);
  CHECK(direct.layers == r.layers);
}

TEST_CASE("time limit") {
  NqOptions o;
  o.max_class          = 50;
  o.time_limit_seconds = 1e-9;
  auto r               = nilpotent_quotient(free_group(3), o);
  CHECK(r.partial);
  CHECK(r.nq_class() == 1);
}

TEST_CASE("determinism") {
  auto a = run(gen_fabrykowski_gupta(4), 6);
  auto b = run(gen_fabrykowski_gupta(4), 6);
  CHECK(dump_pc(a.system.presentation) == dump_pc(b.system.presentation));
  CHECK(a.system.images == b.system.images);
}
