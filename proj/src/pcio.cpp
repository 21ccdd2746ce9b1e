#include "lpnq/errors.hpp"
#include "lpnq/pcgroup.hpp"

#include <regex>
#include <sstream>

namespace lpnq {

std::string format_pcword(PcWord const& w) {
  if (w.empty()) {
    return "1";
  }
  std::string out;
  for (auto const& s : w) {
    if (!out.empty()) {
      out += '*';
    }
    out += 'g' + std::to_string(s.gen);
    if (s.exp != 1) {
      out += '^' + to_string(s.exp);
    }
  }
  return out;
}

std::string dump_pc(PcPresentation const& p) {
  std::ostringstream os;
  int const          n = p.size();
  for (int i = 1; i <= n; ++i) {
    os << 'g' << i << " order " << p.relative_order(i) << " weight " << p.weight(i) << '\n';
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j < i; ++j) {
      if (!p.conjugate_trivial(i, j)) {
        os << 'g' << i << "^g" << j << " = " << format_pcword(p.conjugate(i, j)) << '\n';
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    if (p.relative_order(i) != 0) {
      os << 'g' << i << '^' << p.relative_order(i) << " = " << format_pcword(p.power(i))
         << '\n';
    }
  }
  return os.str();
}

namespace {

  PcWord parse_pcword(std::string const& s, int n, std::size_t line) {
    std::string t;
    for (char ch : s) {
      if (!std::isspace(static_cast<unsigned char>(ch))) {
        t += ch;
      }
    }
    if (t == "1") {
      return {};
    }
    PcWord            out;
    std::stringstream ss(t);
    std::string       item;
    std::regex const  syl(R"(g(\d+)(\^(-?\d+))?)");
    while (std::getline(ss, item, '*')) {
      std::smatch m;
      if (!std::regex_match(item, m, syl)) {
        throw ParseError("bad syllable '" + item + "'", line, 1);
      }
      int g = std::stoi(m[1]);
      if (g < 1 || g > n) {
        throw ParseError("generator g" + std::to_string(g) + " out of range", line, 1);
      }
      Integer e = m[3].matched ? Integer(m[3].str()) : Integer(1);
      if (e == 0) {
        throw ParseError("zero exponent", line, 1);
      }
      if (!out.empty() && out.back().gen >= g) {
        throw ParseError("syllables must have increasing generators", line, 1);
      }
      out.push_back({g, e});
    }
    return out;
  }

}  // namespace

PcPresentation parse_pc(std::string const& text) {
  std::regex const gen_line(R"(\s*g(\d+)\s+order\s+(\d+)\s+weight\s+(\d+)\s*)");
  std::regex const conj_line(R"(\s*g(\d+)\^g(\d+)\s*=\s*(.*\S)\s*)");
  std::regex const pow_line(R"(\s*g(\d+)\^(\d+)\s*=\s*(.*\S)\s*)");

  std::vector<std::string> lines;
  {
    std::stringstream ss(text);
    std::string       l;
    while (std::getline(ss, l)) {
      auto h = l.find('#');
      if (h != std::string::npos) {
        l.erase(h);
      }
      lines.push_back(l);
    }
  }
  struct Gen {
    Integer order;
    int     weight;
  };
  std::vector<Gen> gens;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::smatch m;
    if (std::regex_match(lines[ln], m, gen_line)) {
      if (std::stoul(m[1]) != gens.size() + 1) {
        throw ParseError("generators must be listed in order", ln + 1, 1);
      }
      gens.push_back({Integer(m[2].str()), std::stoi(m[3])});
    }
  }
  int            n = static_cast<int>(gens.size());
  PcPresentation p(n);
  for (int i = 1; i <= n; ++i) {
    if (gens[i - 1].order == 1) {
      throw ParseError("relative order 1 is not allowed", 0, 0);
    }
    p.set_relative_order(i, gens[i - 1].order);
    p.set_weight(i, gens[i - 1].weight);
  }
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::smatch m;
    std::string const& l = lines[ln];
    if (l.find_first_not_of(" \t\r") == std::string::npos || std::regex_match(l, gen_line)) {
      continue;
    }
    if (std::regex_match(l, m, conj_line)) {
      int i = std::stoi(m[1]), j = std::stoi(m[2]);
      if (i < 1 || i > n || j < 1 || j >= i) {
        throw ParseError("conjugate relation needs 1 <= j < i <= n", ln + 1, 1);
      }
      p.set_conjugate(i, j, parse_pcword(m[3], n, ln + 1));
    } else if (std::regex_match(l, m, pow_line)) {
      int     i = std::stoi(m[1]);
      Integer o(m[2].str());
      if (i < 1 || i > n || p.relative_order(i) == 0 || p.relative_order(i) != o) {
        throw ParseError("power relation does not match the relative order", ln + 1, 1);
      }
      p.set_power(i, parse_pcword(m[3], n, ln + 1));
    } else {
      throw ParseError("unrecognised line", ln + 1, 1);
    }
  }
  p.complete();
  return p;
}

}  // namespace lpnq
