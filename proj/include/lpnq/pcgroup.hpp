#pragma once

#include "lpnq/intlat.hpp"
#include "lpnq/words.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lpnq {

// Sparse normal word g_1^{a_1} ... g_l^{a_l}: syllables with increasing
// generators, non-zero exponents, 0 <= a_i < r_i for finite r_i.
using PcWord = std::vector<Syllable>;

// Dense form of a normal word.
struct NormalWord {
  std::vector<Integer> exponents;

  bool operator==(NormalWord const&) const = default;
};

NormalWord to_normal(PcWord const& w, std::size_t n);
PcWord     to_pcword(NormalWord const& w);

enum class DefinitionKind {
  None,
  ImageOfSource,   // a = source generator
  CommutatorOf,    // g_a^{g_b} = ... g_k
  TailOfRelation,  // power relation of g_a
  InitialBasis     // combination, see expression
};

struct Definition {
  DefinitionKind kind = DefinitionKind::None;
  int            a    = 0;
  int            b    = 0;
  std::string    expression;

  bool operator==(Definition const&) const = default;
};

std::uint64_t default_guard_steps();

class PcPresentation {
 public:
  PcPresentation() = default;
  explicit PcPresentation(int n);

  int size() const noexcept {
    return _n;
  }

  // 0 means infinite.
  Integer const& relative_order(int i) const;
  void           set_relative_order(int i, Integer const& r);
  int            weight(int i) const;
  void           set_weight(int i, int w);
  Definition const& definition(int i) const;
  void              set_definition(int i, Definition d);

  // Normal word for g_i^{g_j}, j < i.
  PcWord conjugate(int i, int j) const;
  // Normal word for g_i^{g_j^-1}, j < i, r_j infinite.
  PcWord conjugate_inverse(int i, int j) const;
  // Normal word for g_i^{r_i}, r_i finite.
  PcWord const& power(int i) const;

  void set_conjugate(int i, int j, PcWord const& w);
  void set_power(int i, PcWord w);

  bool conjugate_trivial(int i, int j) const;

  // Derives inverse conjugates and collector tables; required before
  // collecting, and after any modification.
  void complete();
  bool is_complete() const noexcept {
    return _complete;
  }

  std::uint64_t guard_steps() const noexcept {
    return _guard;
  }
  void set_guard_steps(std::uint64_t g) {
    _guard = g;
  }

  // Largest weight; 0 for the trivial group.
  int max_weight() const;

  // stored data, used by the collector
  PcWord const& raw_conjugate(int i, int j) const;
  PcWord const& raw_conjugate_inverse(int i, int j) const;
  bool          central(int i) const {
    return _central[i];
  }
  int commute_from(int i) const {
    return _commute_from[i];
  }
  PcWord const& unit(int i) const {
    return _unit[i];
  }
  // Normal word of g_i^-1 for finite r_i.
  PcWord const& inverse_unit(int i) const {
    return _inv_unit[i];
  }

 private:
  void check(int i) const;
  void compute_inverses();
  void compute_tables();

  int                              _n = 0;
  std::vector<Integer>             _orders;
  std::vector<int>                 _weights;
  std::vector<Definition>          _defs;
  std::vector<std::vector<PcWord>> _conj;      // [i][j], empty row = all trivial
  std::vector<std::vector<PcWord>> _conj_inv;  // [i][j]
  std::vector<PcWord>              _power;
  std::vector<PcWord>              _unit;
  std::vector<PcWord>              _inv_unit;
  std::vector<char>                _central;
  std::vector<int>                 _commute_from;
  bool                             _complete = false;
  std::uint64_t                    _guard    = default_guard_steps();
};

// Collection from the left into a dense exponent vector.
class Collector {
 public:
  explicit Collector(PcPresentation const& p);

  // Multiplies the accumulator on the right by w^reps.
  void multiply(std::span<Syllable const> w, Integer const& reps = 1);
  void reset();
  void set(PcWord const& w);
  PcWord result() const;

  PcWord collect(std::span<Syllable const> w);
  PcWord product(PcWord const& x, PcWord const& y);
  PcWord inverse(PcWord const& x);
  PcWord power(PcWord const& x, Integer const& k);
  PcWord conjugate(PcWord const& x, PcWord const& y);   // y^-1 x y
  PcWord commutator(PcWord const& x, PcWord const& y);  // x^-1 y^-1 x y

  std::uint64_t steps() const noexcept {
    return _total_steps;
  }

 private:
  struct Frame {
    Syllable const* word;
    std::size_t     len;
    bool            inverted;
    Integer         reps;
    std::size_t     pos;
    int             gen;
    Integer         pending;
    Syllable        own;
    bool            owns;
  };

  void push(Syllable const* w, std::size_t len, Integer const& reps);
  void push_own(int gen, Integer const& e);
  void run();
  void step(std::size_t frame);

  PcPresentation const& _p;
  std::vector<Integer>  _x;
  std::vector<Frame>    _stack;
  std::uint64_t         _steps       = 0;
  std::uint64_t         _total_steps = 0;
};

PcWord     collect(PcPresentation const& p, std::span<Syllable const> w);
NormalWord collect_normal(PcPresentation const& p, std::span<Syllable const> w);
PcWord     multiply(PcPresentation const& p, PcWord const& x, PcWord const& y);
PcWord     inverse(PcPresentation const& p, PcWord const& x);

// Homomorphic image of w where source generator i maps to images[i-1].
PcWord evaluate(PcPresentation const& p, std::vector<PcWord> const& images, FreeWord const& w);
PcWord evaluate(Collector& c, std::vector<PcWord> const& images, FreeWord const& w);

enum class OverlapKind {
  Triple,       // g_k (g_j g_i) = (g_k g_j) g_i
  PowerLeft,    // (g_j^{r_j}) g_i = g_j^{r_j-1} (g_j g_i)
  PowerRight,   // g_j (g_i^{r_i}) = (g_j g_i) g_i^{r_i-1}
  PowerSelf,    // (g_i^{r_i}) g_i = g_i (g_i^{r_i})
  InverseRight  // g_j = (g_j g_i^-1) g_i
};

struct Violation {
  OverlapKind kind;
  int         k, j, i;
  PcWord      lhs;
  PcWord      rhs;
};

struct ConsistencyOptions {
  // When positive, triple overlaps with w(i)+w(j)+w(k) beyond this bound
  // and pair overlaps with w(i)+w(j) beyond it are skipped.
  int  weight_bound       = 0;
  bool include_inverse    = true;
  bool stop_at_first      = false;
};

// Calls visit(kind, k, j, i, lhs, rhs) for every overlap tested.
template <typename Visit>
void for_each_overlap(PcPresentation const& p, ConsistencyOptions const& o, Visit&& visit);

std::vector<Violation> consistency_check(PcPresentation const& p,
                                         ConsistencyOptions const& o = {});

// Subgroups via induced generating sequences.
class InducedSequence {
 public:
  InducedSequence(PcPresentation const& p, bool normal);

  // Adds x and closes; returns true if the subgroup grew.
  bool add(PcWord const& x);
  PcWord sift(PcWord x) const;
  bool   contains(PcWord const& x) const {
    return sift(x).empty();
  }
  // Elements indexed by leading generator, empty where absent.
  std::vector<PcWord> const& elements() const noexcept {
    return _seq;
  }
  std::size_t length() const;

 private:
  void close(std::vector<PcWord> queue);
  PcWord reduce_against(PcWord x, std::vector<PcWord>& queue);

  PcPresentation const* _p;
  bool                  _normal;
  std::vector<PcWord>   _seq;  // 1-based
};

InducedSequence igs_close(PcPresentation const& p, std::vector<PcWord> const& gens, bool normal);

// Abelian invariants of gamma_i(H)N / gamma_{i+1}(H)N for each weight block.
std::vector<std::vector<Integer>> layer_invariants_mod(PcPresentation const& p,
                                                       InducedSequence const& seq);
std::vector<std::vector<Integer>> layer_invariants(PcPresentation const& p);

std::string    format_pcword(PcWord const& w);
std::string    dump_pc(PcPresentation const& p);
PcPresentation parse_pc(std::string const& text);

}  // namespace lpnq

#include "lpnq/pcgroup.tpp"
