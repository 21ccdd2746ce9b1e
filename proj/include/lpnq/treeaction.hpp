#pragma once

#include "lpnq/lpres.hpp"
#include "lpnq/words.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace lpnq {

// g(xw) = perm(x) section(x)(w) for each machine generator g.
struct SelfSimilarMachine {
  int                                alphabet_size = 0;
  std::vector<std::string>           generator_names;
  std::vector<std::vector<int>>      perms;     // perms[g - 1][x]
  std::vector<std::vector<FreeWord>> sections;  // sections[g - 1][x]

  std::size_t rank() const noexcept {
    return generator_names.size();
  }
  void validate() const;
};

using TreeVertex = std::vector<int>;

// Left action: act(m, g * h, v) == act(m, g, act(m, h, v)).
TreeVertex act(SelfSimilarMachine const& m, FreeWord const& g, TreeVertex v);

// Root permutation and sections of a word.
struct WordState {
  std::vector<int>      perm;
  std::vector<FreeWord> sections;
};
WordState word_state(SelfSimilarMachine const& m, FreeWord const& g);

bool trivial_to_depth(SelfSimilarMachine const& m, FreeWord const& g, int depth);
// A vertex of length at most depth moved by g, if any.
bool moved_vertex(SelfSimilarMachine const& m,
                  FreeWord const&           g,
                  int                       depth,
                  TreeVertex&               out);

struct TreeFailure {
  std::string relator;  // formatted in the presentation's generators
  std::string iterate;  // endomorphism word, "id" for none
  TreeVertex  vertex;
};

struct TreeReport {
  std::size_t              checked = 0;
  std::vector<TreeFailure> failures;

  bool ok() const noexcept {
    return failures.empty();
  }
};

// generator_map[i] is the machine word for the (i + 1)-th presentation
// generator. Checks Q and phi(R) for all endomorphism words phi of length
// at most iter_bound.
TreeReport verify_lpres(SelfSimilarMachine const&    m,
                        LPresentation const&         p,
                        std::vector<FreeWord> const& generator_map,
                        int                          iter_bound,
                        int                          depth);

SelfSimilarMachine fabrykowski_gupta_machine(int p);
SelfSimilarMachine gupta_sidki_machine(int p);
SelfSimilarMachine grigorchuk_machine();

// A catalog presentation with its machine and generator map.
struct TreePairing {
  LPresentation         presentation;
  SelfSimilarMachine    machine;
  std::vector<FreeWord> generator_map;
};
// Accepts "catalog:NAME[:p]" for grigorchuk, grigorchuk-inv, fg, gs-d and gs-dz.
TreePairing tree_pairing(std::string const& input);

// Both sides of the commutator identity for sigma_i, sigma_j, sigma_k with
// exponent factor e act identically to the given depth on the
// Gupta-Sidki p-machine.
bool gs_identity_holds(int p, int i, int j, int k, int e, int depth);

SelfSimilarMachine parse_machine(std::string_view text);
std::string        serialize(SelfSimilarMachine const& m);
SelfSimilarMachine read_machine_file(std::string const& path);

}  // namespace lpnq
