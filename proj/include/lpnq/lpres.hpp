#pragma once

#include "lpnq/words.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lpnq {

struct NamedEndomorphism {
  std::string      name;
  FreeEndomorphism map;

  bool operator==(NamedEndomorphism const&) const = default;
};

// <S | Q | Phi | R>
struct LPresentation {
  std::vector<std::string>       generator_names;
  std::vector<FreeWord>          fixed_relators;
  std::vector<NamedEndomorphism> endomorphisms;
  std::vector<FreeWord>          iterated_relators;
  bool                           declared_invariant = false;
  bool                           declared_ascending = false;

  std::size_t rank() const noexcept {
    return generator_names.size();
  }
  int generator_index(std::string_view name) const;  // 1-based, 0 if absent

  // Throws if an invariant of the data model is violated.
  void validate() const;

  bool operator==(LPresentation const&) const = default;
};

LPresentation parse_lpresentation(std::string_view text);
std::string   serialize(LPresentation const& p);
LPresentation read_lpresentation_file(std::string const& path);

FreeWord    parse_word(std::string_view text, std::vector<std::string> const& names);
std::string format_word(FreeWord const& w, std::vector<std::string> const& names);

LPresentation as_ascending(LPresentation const& p);
LPresentation from_finite_presentation(std::vector<std::string> gens,
                                       std::vector<FreeWord>    relators);
LPresentation free_group(std::size_t rank);

LPresentation grigorchuk_ascending();
LPresentation grigorchuk_invariant();
// With full_relators the i = 1 reduction is not applied.
LPresentation gen_fabrykowski_gupta(int p, bool full_relators = false);
// With shift_closed the cyclic shift of the generators is added to the
// endomorphisms.
LPresentation gen_gupta_sidki_D(int p, bool shift_closed = false);
// The Gupta-Sidki group itself as D_p extended by the cyclic shift; not
// invariant.
LPresentation gupta_sidki(int p);
FreeWord      sigma_i_ell(int p, int i, int ell);
// Presentations G3 and G4 of finitely presented groups.
LPresentation example_g3();
LPresentation example_g4();

// Resolves "catalog:NAME[:p]" or a file path.
LPresentation load_presentation(std::string const& input);
std::vector<std::string> catalog_names();

bool is_odd_prime(int p);

}  // namespace lpnq
