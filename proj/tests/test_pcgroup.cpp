#include "lpnq/errors.hpp"
#include "lpnq/nq.hpp"
#include "lpnq/pcgroup.hpp"

#include <doctest.h>

#include <random>

using namespace lpnq;

namespace {

PcWord w(std::initializer_list<std::pair<int, long>> s) {
  PcWord out;
  for (auto [g, e] : s) {
    out.push_back({g, e});
  }
  return out;
}

PcPresentation heisenberg() {
  auto p = parse_pc(R"(
g1 order 0 weight 1
g2 order 0 weight 1
g3 order 0 weight 2
g2^g1 = g2*g3
)");
  p.complete();
  return p;
}

PcWord random_pcword(std::mt19937& rng, PcPresentation const& p, int len) {
  std::uniform_int_distribution<int> gen(1, p.size()), ex(-3, 3);
  std::vector<Syllable>              raw;
  for (int k = 0; k < len; ++k) {
    int e = ex(rng);
    if (e != 0) {
      raw.push_back({gen(rng), e});
    }
  }
  return collect(p, raw);
}

}  // namespace

TEST_CASE("collection in the heisenberg group") {
  auto p = heisenberg();
  CHECK(collect(p, w({{2, 1}, {1, 1}})) == w({{1, 1}, {2, 1}, {3, 1}}));
  CHECK(collect(p, w({{1, 2}, {3, -1}})) == w({{1, 2}, {3, -1}}));
  Collector c(p);
  CHECK(c.commutator(w({{2, 1}}), w({{1, 1}})) == w({{3, 1}}));
  CHECK(c.commutator(w({{1, 1}}), w({{2, 1}})) == w({{3, -1}}));
  CHECK(c.power(w({{1, 1}, {2, 1}}), 3) == w({{1, 3}, {2, 3}, {3, 3}}));
  CHECK(c.product(w({{1, 1}, {2, 1}}), c.inverse(w({{1, 1}, {2, 1}}))).empty());
  CHECK(p.conjugate_inverse(2, 1) == w({{2, 1}, {3, -1}}));
  CHECK(consistency_check(p).empty());
}

TEST_CASE("finite relative orders") {
  auto p = parse_pc(R"(
g1 order 2 weight 1
g2 order 2 weight 1
g3 order 2 weight 2
g2^g1 = g2*g3
g1^2 = 1
g2^2 = 1
g3^2 = 1
)");
  p.complete();
  CHECK(consistency_check(p).empty());
  CHECK(collect(p, w({{1, 3}})) == w({{1, 1}}));
  CHECK(collect(p, w({{1, -1}})) == w({{1, 1}}));
  CHECK(p.inverse_unit(2) == w({{2, 1}}));
  CHECK(layer_invariants(p) == std::vector<std::vector<Integer>>{{2, 2}, {2}});
}

TEST_CASE("an inconsistent presentation") {
  auto p = parse_pc(R"(
g1 order 2 weight 1
g2 order 3 weight 1
g2^g1 = g2^2
g1^2 = g2
)");
  p.complete();
  auto v = consistency_check(p);
  CHECK(v.size() == 1);
  CHECK(v[0].lhs != v[0].rhs);
}

TEST_CASE("free abelian is consistent") {
  auto p = parse_pc("g1 order 0 weight 1\ng2 order 0 weight 1\ng3 order 0 weight 1\n");
  p.complete();
  CHECK(consistency_check(p).empty());
  CHECK(layer_invariants(p) == std::vector<std::vector<Integer>>{{0, 0, 0}});
}

TEST_CASE("dump and parse round trip") {
  auto p = heisenberg();
  auto q = parse_pc(dump_pc(p));
  CHECK(dump_pc(q) == dump_pc(p));
  CHECK_THROWS_AS(parse_pc("g1 order 0 weight 1\ng2^g1 = g1\n"), ParseError);
  CHECK_THROWS_AS(parse_pc("g1 order 1 weight 1\n"), ParseError);
  CHECK(format_pcword(w({{1, 2}, {3, -1}})) == "g1^2*g3^-1");
  CHECK(format_pcword({}) == "1");
}

TEST_CASE("collection is associative") {
  auto sys = nilpotent_quotient(grigorchuk_ascending(), {.max_class = 5}).system;
  auto const& p = sys.presentation;
  std::mt19937 rng(23);
  Collector    c(p);
  for (int k = 0; k < 300; ++k) {
    auto x = random_pcword(rng, p, 6), y = random_pcword(rng, p, 6), z = random_pcword(rng, p, 6);
    CHECK(c.product(c.product(x, y), z) == c.product(x, c.product(y, z)));
  }
}

TEST_CASE("evaluate") {
  auto sys = nilpotent_quotient(grigorchuk_ascending(), {.max_class = 2}).system;
  auto const& p = sys.presentation;
  CHECK(evaluate(p, sys.images, FreeWord()).empty());
  CHECK(evaluate(p, sys.images, FreeWord::generator(2)) == sys.images[1]);
  CHECK(evaluate(p, sys.images, FreeWord::generator(1, 2)).empty());
}

TEST_CASE("induced sequences") {
  auto p = heisenberg();
  auto e = igs_close(p, {PcWord{}}, false);
  CHECK(e.length() == 0);
  CHECK_FALSE(e.sift(w({{1, 1}})).empty());

  auto n = igs_close(p, {w({{1, 1}})}, true);
  CHECK(n.contains(w({{3, 1}})));
  CHECK_FALSE(n.contains(w({{2, 1}})));
  CHECK(layer_invariants_mod(p, n) == std::vector<std::vector<Integer>>{{0}, {}});

  CHECK(layer_invariants_mod(p, igs_close(p, {}, true)) == layer_invariants(p));
  auto all = igs_close(p, {w({{1, 1}}), w({{2, 1}})}, true);
  CHECK(layer_invariants_mod(p, all) == std::vector<std::vector<Integer>>{{}, {}});

  auto ab = parse_pc("g1 order 2 weight 1\ng2 order 2 weight 1\ng3 order 2 weight 1\n"
                     "g1^2 = 1\ng2^2 = 1\ng3^2 = 1\n");
  ab.complete();
  auto s = igs_close(ab, {w({{1, 1}, {2, 1}})}, false);
  CHECK(s.length() == 1);
  CHECK(s.contains(w({{1, 1}, {2, 1}})));
  CHECK_FALSE(s.contains(w({{1, 1}})));
}

TEST_CASE("collection guard") {
  auto p = heisenberg();
  p.set_guard_steps(10);
  CHECK_THROWS_AS(collect(p, w({{2, 50}, {1, 50}})), GuardExceededError);
}
