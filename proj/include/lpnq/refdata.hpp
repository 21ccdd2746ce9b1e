#pragma once

#include "lpnq/integer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lpnq {

// Rank of gamma_i / gamma_{i+1} of the Grigorchuk group.
int rozhkov_rank(int i);
// Same for the Fabrykowski-Gupta group.
int fg3_rank(int i);
// Number of ways of writing n - 1 as sum k_i alpha_i with k_i in {0, 1, 2},
// alpha = 1, 2, 5, 12, ...; the layer rank of the Gupta-Sidki 3-group for
// n >= 2.
int gs3_rank(int n);
// Rank of gamma_n / gamma_{n+1} of the free group of rank m.
Integer witt_rank(int m, int n);

struct ExpectedRow {
  std::string                       group;
  int                               classes = 0;
  std::vector<int>                  ranks;   // empty when not recorded
  std::vector<std::vector<Integer>> layers;  // empty when not recorded
  std::optional<int>                exponent;
  std::optional<int>                total_gens;
  std::optional<bool>               maximal;
  std::string                       strategy;
  std::string                       source;  // "published" or "derived"
  std::string                       reference;
};

std::vector<ExpectedRow> load_expected(std::string const& path);
// Rows for one group, in file order.
std::vector<ExpectedRow> expected_for(std::vector<ExpectedRow> const& rows,
                                      std::string const&              group);

}  // namespace lpnq
