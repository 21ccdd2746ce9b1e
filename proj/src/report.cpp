#include "lpnq/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace lpnq {

namespace {

  std::string tuple(std::vector<Integer> const& layer) {
    std::string s = "(";
    for (std::size_t k = 0; k < layer.size(); ++k) {
      s += (k ? "," : "") + to_string(layer[k]);
    }
    return s + ")";
  }

  std::string seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", s);
    return buf;
  }

}  // namespace

std::string collected_layer(std::vector<Integer> const& layer) {
  if (layer.empty()) {
    return "1";
  }
  bool const uniform
      = std::all_of(layer.begin(), layer.end(), [&](Integer const& x) { return x == layer[0]; });
  if (!uniform) {
    return tuple(layer);
  }
  if (layer.size() == 1) {
    return to_string(layer[0]);
  }
  return to_string(layer[0]) + "^[" + std::to_string(layer.size()) + "]";
}

std::string collected_series(std::vector<std::vector<Integer>> const& layers) {
  std::string out;
  for (std::size_t i = 0; i < layers.size();) {
    std::size_t j = i + 1;
    while (j < layers.size() && layers[j] == layers[i]) {
      ++j;
    }
    out += (i ? ", " : "") + tuple(layers[i]);
    if (j - i > 1) {
      out += "^[" + std::to_string(j - i) + "]";
    }
    i = j;
  }
  return out;
}

std::string result_text(NqResult const& r, std::string const& group) {
  std::ostringstream os;
  os << "group: " << group << "\n";
  for (std::size_t c = 0; c < r.layers.size(); ++c) {
    os << "class " << c + 1 << ": " << collected_layer(r.layers[c]);
    if (c < r.seconds_per_class.size()) {
      os << "  [" << seconds(r.seconds_per_class[c]) << "s]";
    }
    os << "\n";
  }
  os << "layers: " << collected_series(r.layers) << "\n";
  os << "class: " << r.nq_class() << "\n";
  os << "total generators: " << r.total_gens() << "\n";
  if (r.gens_invariant_cover) {
    os << "invariant cover generators: " << *r.gens_invariant_cover << "\n";
  }
  os << "maximal: " << (r.maximal ? "yes" : "no") << "\n";
  if (r.partial) {
    os << "stopped: time limit\n";
  }
  return os.str();
}

std::string result_json(NqResult const& r, std::string const& group) {
  auto j     = nlohmann::json::parse(result_json(r));
  j["group"] = group;
  return j.dump();
}

}  // namespace lpnq
