#include "lpnq/refdata.hpp"

#include "lpnq/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace lpnq {

int rozhkov_rank(int i) {
  if (i < 1) {
    throw Error("rank index must be positive");
  }
  if (i <= 2) {
    return i == 1 ? 3 : 2;
  }
  long k = 1;
  while (4 * k < i) {
    k *= 2;
  }
  return i <= 3 * k ? 2 : 1;
}

int fg3_rank(int i) {
  if (i < 1) {
    throw Error("rank index must be positive");
  }
  if (i <= 2) {
    return i == 1 ? 2 : 1;
  }
  long k = 1;
  while (3 * k + 1 < i) {
    k *= 3;
  }
  return i <= 2 * k + 1 ? 2 : 1;
}

int gs3_rank(int n) {
  if (n < 2) {
    throw Error("gs3_rank needs n >= 2");
  }
  int const        target = n - 1;
  std::vector<int> alpha  = {1, 2};
  while (alpha.back() <= target) {
    alpha.push_back(2 * alpha.back() + alpha[alpha.size() - 2]);
  }
  while (alpha.back() > target) {
    alpha.pop_back();
  }
  // ways[s]: representations of s using the alphas seen so far
  std::vector<int> ways(target + 1, 0);
  ways[0] = 1;
  for (int a : alpha) {
    std::vector<int> next(target + 1, 0);
    for (int s = 0; s <= target; ++s) {
      for (int k = 0; k <= 2 && s + k * a <= target; ++k) {
        next[s + k * a] += ways[s];
      }
    }
    ways = std::move(next);
  }
  return ways[target];
}

namespace {

  int mobius(int n) {
    int mu = 1;
    for (int q = 2; q * q <= n; ++q) {
      if (n % q == 0) {
        n /= q;
        if (n % q == 0) {
          return 0;
        }
        mu = -mu;
      }
    }
    return n > 1 ? -mu : mu;
  }

}  // namespace

Integer witt_rank(int m, int n) {
  if (m < 2 || n < 1) {
    throw Error("witt_rank needs m >= 2 and n >= 1");
  }
  Integer sum = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) {
      Integer power = 1;
      for (int k = 0; k < n / d; ++k) {
        power *= m;
      }
      sum += mobius(d) * power;
    }
  }
  return sum / n;
}

std::vector<ExpectedRow> load_expected(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot read '" + path + "'");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (nlohmann::json::exception const& e) {
    throw Error("malformed expected values: " + std::string(e.what()));
  }
  std::vector<ExpectedRow> out;
  for (auto const& j : doc.at("rows")) {
    ExpectedRow r;
    r.group   = j.at("group").get<std::string>();
    r.classes = j.at("classes").get<int>();
    r.source  = j.at("source").get<std::string>();
    if (r.source != "published" && r.source != "derived") {
      throw Error("unknown source '" + r.source + "' for " + r.group);
    }
    r.reference = j.value("reference", "");
    r.strategy  = j.value("strategy", "");
    if (j.contains("ranks")) {
      r.ranks = j["ranks"].get<std::vector<int>>();
    }
    if (j.contains("layers")) {
      for (auto const& layer : j["layers"]) {
        std::vector<Integer> l;
        for (auto const& x : layer) {
          l.emplace_back(x.get<long long>());
        }
        r.layers.push_back(std::move(l));
      }
    }
    if (j.contains("exponent")) {
      r.exponent = j["exponent"].get<int>();
    }
    if (j.contains("total_gens")) {
      r.total_gens = j["total_gens"].get<int>();
    }
    if (j.contains("maximal")) {
      r.maximal = j["maximal"].get<bool>();
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ExpectedRow> expected_for(std::vector<ExpectedRow> const& rows,
                                      std::string const&              group) {
  std::vector<ExpectedRow> out;
  for (auto const& r : rows) {
    if (r.group == group) {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace lpnq
