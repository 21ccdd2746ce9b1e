#include "lpnq/report.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

using namespace lpnq;

namespace {

std::string slurp(std::string const& name) {
  std::ifstream     in(std::string(LPNQ_GOLDEN_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

NqResult fixed_run(LPresentation const& p, int c) {
  NqOptions o;
  o.max_class = c;
  auto r      = nilpotent_quotient(p, o);
  for (std::size_t i = 0; i < r.seconds_per_class.size(); ++i) {
    r.seconds_per_class[i] = 0.25 * static_cast<double>(i + 1);
  }
  return r;
}

}  // namespace

TEST_CASE("collected form") {
  CHECK(collected_layer({2, 2, 2}) == "2^[3]");
  CHECK(collected_layer({3}) == "3");
  CHECK(collected_layer({2, 4}) == "(2,4)");
  CHECK(collected_layer({}) == "1");
  CHECK(collected_layer({0, 0}) == "0^[2]");
  CHECK(collected_series({{4, 4}, {4}, {2, 2}, {2, 2}, {2, 2, 2}}) == "(4,4), (4), (2,2)^[2], (2,2,2)");
  CHECK(collected_series({{2, 2, 8}, {2, 2, 8}}) == "(2,2,8)^[2]");
}

TEST_CASE("golden text and json") {
  auto fg6 = fixed_run(gen_fabrykowski_gupta(6), 10);
  CHECK(result_text(fg6, "catalog:fg:6") == slurp("fg6.txt"));
  CHECK(result_json(fg6, "catalog:fg:6") + "\n" == slurp("fg6.json"));
  auto gr = fixed_run(grigorchuk_ascending(), 4);
  CHECK(result_text(gr, "catalog:grigorchuk") == slurp("grigorchuk4.txt"));
  CHECK(result_json(gr, "catalog:grigorchuk") + "\n" == slurp("grigorchuk4.json"));
}

TEST_CASE("text and json carry the same data") {
  for (auto const& [p, c] : {std::pair{grigorchuk_ascending(), 6}, {gen_fabrykowski_gupta(4), 5},
                             {gen_fabrykowski_gupta(10), 8}}) {
    auto r    = fixed_run(p, c);
    auto j    = nlohmann::json::parse(result_json(r, "g"));
    auto text = result_text(r, "g");
    CHECK(j["class"] == r.nq_class());
    CHECK(j["total_gens"] == r.total_gens());
    CHECK(j["maximal"] == r.maximal);
    std::vector<std::vector<Integer>> layers;
    for (auto const& l : j["layers"]) {
      std::vector<Integer> v;
      for (auto const& x : l) {
        v.emplace_back(x.get<long long>());
      }
      layers.push_back(v);
    }
    CHECK(layers == r.layers);
    CHECK(text.find("layers: " + collected_series(layers) + "\n") != std::string::npos);
    CHECK(text.find("total generators: " + std::to_string(j["total_gens"].get<int>()) + "\n")
          != std::string::npos);
    CHECK(text.find(std::string("maximal: ") + (j["maximal"].get<bool>() ? "yes" : "no"))
          != std::string::npos);
  }
}
