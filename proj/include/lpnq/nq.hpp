#pragma once

#include "lpnq/intlat.hpp"
#include "lpnq/lpres.hpp"
#include "lpnq/pcgroup.hpp"
#include "lpnq/preimage.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lpnq {

struct NilpotentQuotientSystem {
  LPresentation       source;
  PcPresentation      presentation;
  std::vector<PcWord> images;  // tau(s_i), i = 1..m
  PreimageDag         dag;
  // preimages[g - 1] is a node of dag mapping to the pc generator g
  std::vector<PreimageDag::Node> preimages;
  int                            nq_class = 0;
  std::pair<int, int>            central_block{1, 0};  // empty between steps

  static NilpotentQuotientSystem trivial(LPresentation const& source);

  int size() const {
    return presentation.size();
  }
  FreeWord                          preimage_word(int g) const;
  std::vector<std::vector<Integer>> layers() const;
};

struct TailSource {
  enum class Kind { Conjugate, Power, Image };
  Kind kind;
  int  a = 0;  // conjugated generator, powered generator, or source generator
  int  b = 0;  // conjugating generator
};

// H* with central block M of free abelian tails modulo relations.
struct CoveredSystem {
  NilpotentQuotientSystem        base;
  PcPresentation                 presentation;
  std::vector<PcWord>            images;
  std::vector<TailSource>        tails;
  PreimageDag                    dag;
  std::vector<PreimageDag::Node> tail_preimages;
  IntegerLattice                 relations{0};
  int                            target_class = 0;

  int old_size() const {
    return base.size();
  }
  std::size_t tail_count() const {
    return tails.size();
  }
  std::pair<int, int> central_block() const {
    return {old_size() + 1, old_size() + static_cast<int>(tails.size())};
  }
  // Tail coordinates of an element of M; throws NotInvariantError when the
  // element lies outside M.
  SparseVector tail_part(PcWord const& w) const;
  bool         in_block(PcWord const& w) const;
};

// With full_consistency every overlap is evaluated, not only those within
// the weight bound of the target class.
CoveredSystem cover(NilpotentQuotientSystem const& sys, bool full_consistency = false);

class InducedEndomorphism {
 public:
  InducedEndomorphism() = default;
  explicit InducedEndomorphism(std::vector<SparseVector> rows) : _rows(std::move(rows)) {}

  SparseVector apply(SparseVector const& v) const {
    return apply_rows(v, _rows);
  }
  std::vector<SparseVector> const& rows() const noexcept {
    return _rows;
  }

 private:
  std::vector<SparseVector> _rows;
};

InducedEndomorphism induce_endomorphism(CoveredSystem const& cs, FreeEndomorphism const& phi);

// The relations of M joined with tau*(K).
IntegerLattice spin_in_M(CoveredSystem const& cs);

struct StepResult {
  NilpotentQuotientSystem system;
  bool                    became_stable = false;
  std::vector<Integer>    layer;
};

StepResult induction_step(NilpotentQuotientSystem const& sys, bool full_consistency = false);
NilpotentQuotientSystem abelian_quotient(LPresentation const& p);

struct NqOptions {
  int    max_class          = 10;
  double time_limit_seconds = 0;  // 0 = unlimited
  bool   verify             = true;  // check preimages and relators after each class
  // Called after each completed class with the class and its layer.
  std::function<void(int, std::vector<Integer> const&, double)> progress;
};

struct NqResult {
  NilpotentQuotientSystem           system;
  std::vector<std::vector<Integer>> layers;
  bool                              maximal = false;
  bool                              partial = false;
  std::vector<double>               seconds_per_class;
  std::optional<int>                gens_invariant_cover;

  int nq_class() const {
    return static_cast<int>(layers.size());
  }
  int total_gens() const {
    return system.size();
  }
};

// Ascending or declared-invariant input.
NqResult nilpotent_quotient(LPresentation const& p, NqOptions const& o);
// Runs the engine on p as given: Q is added once, R is spun.
NqResult run_engine(LPresentation const& p, NqOptions const& o);
// qbar lists 0-based indices into p.fixed_relators.
NqResult nilpotent_quotient_general(LPresentation const&         p,
                                    std::vector<std::size_t> const& qbar,
                                    NqOptions const&                o);

// Throws InconsistentError unless every stored preimage evaluates to its
// generator and Q, R and the first images of R under Phi vanish.
void verify_system(NilpotentQuotientSystem const& sys);

std::string result_json(NqResult const& r);

std::vector<std::vector<Integer>> naive_layer_invariants(LPresentation const& p, int n);

// Finite presentation on generators g1..gl from the pc relations, plus extra
// relators given as normal words.
LPresentation pc_finite_presentation(PcPresentation const& pc, std::vector<PcWord> const& extra);

// Images of the pc generators under the automorphism induced by the cyclic
// shift s_i -> s_{i+1} of the generators of D_p.
std::vector<PcWord> induced_shift_images(NilpotentQuotientSystem const& d_quotient);

// D_p, closed under the shift, to class c; then its split extension by the
// shift to o.max_class.
NqResult gupta_sidki_split(int p, int c, NqOptions const& o);

}  // namespace lpnq
