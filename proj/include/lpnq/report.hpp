#pragma once

#include "lpnq/integer.hpp"
#include "lpnq/nq.hpp"

#include <string>
#include <vector>

namespace lpnq {

// One layer: "2^[3]" when elementary of rank > 1, "2" for a single factor,
// "(2,4)" otherwise; "1" for the trivial layer.
std::string collected_layer(std::vector<Integer> const& layer);
// Whole series with consecutive repeats collapsed, as in "(2,2,8)^[2]".
std::string collected_series(std::vector<std::vector<Integer>> const& layers);

std::string result_text(NqResult const& r, std::string const& group);
std::string result_json(NqResult const& r, std::string const& group);

}  // namespace lpnq
