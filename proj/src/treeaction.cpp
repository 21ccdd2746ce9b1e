#include "lpnq/treeaction.hpp"

#include "lpnq/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace lpnq {

namespace {

  int wrap(long i, int p) {
    return static_cast<int>(((i % p) + p) % p);
  }

  FreeWord gen(int g, long e = 1) {
    return FreeWord::generator(g, e);
  }

  std::vector<int> inverse_perm(std::vector<int> const& perm) {
    std::vector<int> out(perm.size());
    for (std::size_t x = 0; x < perm.size(); ++x) {
      out[perm[x]] = static_cast<int>(x);
    }
    return out;
  }

  // Applies one letter g^sign at position pos and below.
  void act_letter(SelfSimilarMachine const& m, int g, int sign, TreeVertex& v, std::size_t pos);

  void act_word(SelfSimilarMachine const& m, FreeWord const& w, TreeVertex& v, std::size_t pos) {
    if (pos >= v.size()) {
      return;
    }
    auto const& syl = w.syllables();
    for (auto it = syl.rbegin(); it != syl.rend(); ++it) {
      int const sign = it->exp > 0 ? 1 : -1;
      Integer   n    = abs(it->exp);
      for (Integer k = 0; k < n; ++k) {
        act_letter(m, it->gen, sign, v, pos);
      }
    }
  }

  void act_letter(SelfSimilarMachine const& m, int g, int sign, TreeVertex& v, std::size_t pos) {
    auto const& perm = m.perms[g - 1];
    int const   x    = v[pos];
    if (sign > 0) {
      v[pos] = perm[x];
      act_word(m, m.sections[g - 1][x], v, pos + 1);
    } else {
      int y = 0;
      while (perm[y] != x) {
        ++y;
      }
      v[pos] = y;
      act_word(m, inverse(m.sections[g - 1][y]), v, pos + 1);
    }
  }

  struct WordKey {
    std::vector<std::pair<int, long>> syl;
    bool operator<(WordKey const& o) const {
      return syl < o.syl;
    }
  };

  WordKey key_of(FreeWord const& w) {
    WordKey k;
    for (auto const& s : w.syllables()) {
      k.syl.emplace_back(s.gen, static_cast<long>(s.exp));
    }
    return k;
  }

  class TrivialityCache {
   public:
    explicit TrivialityCache(SelfSimilarMachine const& m) : _m(m) {}

    // Depth to which w is known trivial.
    bool trivial(FreeWord const& w, int depth, TreeVertex* moved) {
      if (depth <= 0 || w.is_identity()) {
        return true;
      }
      WordKey key = key_of(w);
      auto    it  = _known.find(key);
      if (it != _known.end() && it->second >= depth && !moved) {
        return true;
      }
      WordState st = word_state(_m, w);
      for (std::size_t x = 0; x < st.perm.size(); ++x) {
        if (st.perm[x] != static_cast<int>(x)) {
          if (moved) {
            moved->assign(1, static_cast<int>(x));
          }
          return false;
        }
      }
      for (std::size_t x = 0; x < st.sections.size(); ++x) {
        if (!trivial(st.sections[x], depth - 1, moved)) {
          if (moved) {
            moved->insert(moved->begin(), static_cast<int>(x));
          }
          return false;
        }
      }
      int& known = _known[key];
      known      = std::max(known, depth);
      return true;
    }

   private:
    SelfSimilarMachine const& _m;
    std::map<WordKey, int>    _known;
  };

  std::vector<FreeEndomorphism> iterates(LPresentation const& p, int bound) {
    std::vector<FreeEndomorphism> out = {FreeEndomorphism::identity(p.rank())};
    std::vector<FreeEndomorphism> layer = out;
    for (int l = 1; l <= bound; ++l) {
      std::vector<FreeEndomorphism> next;
      for (auto const& phi : layer) {
        for (auto const& e : p.endomorphisms) {
          FreeEndomorphism psi = compose(phi, e.map);
          if (std::find(out.begin(), out.end(), psi) == out.end()) {
            next.push_back(psi);
            out.push_back(psi);
          }
        }
      }
      layer = std::move(next);
    }
    return out;
  }

  std::vector<std::string> iterate_names(LPresentation const& p, int bound) {
    std::vector<std::string>      names = {"id"};
    std::vector<FreeEndomorphism> seen  = {FreeEndomorphism::identity(p.rank())};
    std::vector<std::pair<FreeEndomorphism, std::string>> layer = {{seen[0], ""}};
    for (int l = 1; l <= bound; ++l) {
      std::vector<std::pair<FreeEndomorphism, std::string>> next;
      for (auto const& [phi, name] : layer) {
        for (auto const& e : p.endomorphisms) {
          FreeEndomorphism psi = compose(phi, e.map);
          if (std::find(seen.begin(), seen.end(), psi) == seen.end()) {
            std::string n = name.empty() ? e.name : name + "*" + e.name;
            seen.push_back(psi);
            names.push_back(n);
            next.emplace_back(psi, n);
          }
        }
      }
      layer = std::move(next);
    }
    return names;
  }

  SelfSimilarMachine with_shift_generator(int p) {
    SelfSimilarMachine m;
    m.alphabet_size = p;
    m.generator_names.push_back("a");
    std::vector<int> shift(p);
    for (int x = 0; x < p; ++x) {
      shift[x] = wrap(x + 1, p);
    }
    m.perms.push_back(shift);
    m.sections.push_back(std::vector<FreeWord>(p));
    return m;
  }

}  // namespace

void SelfSimilarMachine::validate() const {
  if (alphabet_size < 1) {
    throw Error("machine alphabet must be non-empty");
  }
  if (perms.size() != rank() || sections.size() != rank()) {
    throw Error("machine data does not match its generators");
  }
  for (std::size_t g = 0; g < rank(); ++g) {
    std::vector<int> sorted = perms[g];
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> id(alphabet_size);
    std::iota(id.begin(), id.end(), 0);
    if (sorted != id) {
      throw Error("permutation of " + generator_names[g] + " is not a bijection");
    }
    if (sections[g].size() != static_cast<std::size_t>(alphabet_size)) {
      throw Error("wrong number of sections for " + generator_names[g]);
    }
    for (auto const& w : sections[g]) {
      if (w.max_generator() > static_cast<int>(rank())) {
        throw Error("section of " + generator_names[g] + " uses an unknown generator");
      }
    }
  }
}

TreeVertex act(SelfSimilarMachine const& m, FreeWord const& g, TreeVertex v) {
  for (int x : v) {
    if (x < 0 || x >= m.alphabet_size) {
      throw Error("tree letter out of range");
    }
  }
  if (g.max_generator() > static_cast<int>(m.rank())) {
    throw Error("word uses a generator outside the machine");
  }
  act_word(m, g, v, 0);
  return v;
}

WordState word_state(SelfSimilarMachine const& m, FreeWord const& g) {
  int const n = m.alphabet_size;
  WordState st;
  st.perm.resize(n);
  st.sections.resize(n);
  std::vector<std::vector<int>> inv(m.rank());
  for (int x = 0; x < n; ++x) {
    // g = l_1 ... l_k acts with l_k first; g@x = (l_1@y_1) ... (l_k@y_k)
    int                   y = x;
    std::vector<FreeWord> parts;
    auto const&           syl = g.syllables();
    for (auto it = syl.rbegin(); it != syl.rend(); ++it) {
      int const   s    = it->gen;
      auto const& perm = m.perms[s - 1];
      Integer     cnt  = abs(it->exp);
      for (Integer k = 0; k < cnt; ++k) {
        if (it->exp > 0) {
          parts.push_back(m.sections[s - 1][y]);
          y = perm[y];
        } else {
          if (inv[s - 1].empty()) {
            inv[s - 1] = inverse_perm(perm);
          }
          y = inv[s - 1][y];
          parts.push_back(inverse(m.sections[s - 1][y]));
        }
      }
    }
    FreeWord sec;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
      sec.append(*it);
    }
    st.perm[x]     = y;
    st.sections[x] = std::move(sec);
  }
  return st;
}

bool trivial_to_depth(SelfSimilarMachine const& m, FreeWord const& g, int depth) {
  TrivialityCache cache(m);
  return cache.trivial(g, depth, nullptr);
}

bool moved_vertex(SelfSimilarMachine const& m, FreeWord const& g, int depth, TreeVertex& out) {
  TrivialityCache cache(m);
  TreeVertex      path;
  if (cache.trivial(g, depth, &path)) {
    return false;
  }
  out = std::move(path);
  return true;
}

TreeReport verify_lpres(SelfSimilarMachine const&    m,
                        LPresentation const&         p,
                        std::vector<FreeWord> const& generator_map,
                        int                          iter_bound,
                        int                          depth) {
  if (generator_map.size() != p.rank()) {
    throw Error("generator map does not cover the presentation");
  }
  TrivialityCache cache(m);
  TreeReport             report;

  auto check = [&](FreeWord const& r, std::string const& iterate) {
    ++report.checked;
    FreeWord w;
    for (auto const& syl : r.syllables()) {
      w.append(power(generator_map[syl.gen - 1], syl.exp));
    }
    if (cache.trivial(w, depth, nullptr)) {
      return;
    }
    TreeVertex v;
    moved_vertex(m, w, depth, v);
    report.failures.push_back({format_word(r, p.generator_names), iterate, std::move(v)});
  };
  for (auto const& q : p.fixed_relators) {
    check(q, "id");
  }
  auto const phis  = iterates(p, iter_bound);
  auto const names = iterate_names(p, iter_bound);
  for (std::size_t k = 0; k < phis.size(); ++k) {
    for (auto const& r : p.iterated_relators) {
      check(apply(phis[k], r), names[k]);
    }
  }
  return report;
}

SelfSimilarMachine fabrykowski_gupta_machine(int p) {
  if (p < 3) {
    throw Error("the Fabrykowski-Gupta machine needs p >= 3");
  }
  SelfSimilarMachine m = with_shift_generator(p);
  m.generator_names.push_back("r");
  std::vector<int> id(p);
  std::iota(id.begin(), id.end(), 0);
  m.perms.push_back(id);
  std::vector<FreeWord> sec(p);
  sec[0] = gen(2);
  sec[1] = gen(1);
  m.sections.push_back(sec);
  m.validate();
  return m;
}

SelfSimilarMachine gupta_sidki_machine(int p) {
  if (!is_odd_prime(p)) {
    throw Error("p must be an odd prime");
  }
  SelfSimilarMachine m = with_shift_generator(p);
  m.generator_names.push_back("t");
  std::vector<int> id(p);
  std::iota(id.begin(), id.end(), 0);
  m.perms.push_back(id);
  std::vector<FreeWord> sec(p);
  sec[0] = gen(2);
  for (int x = 1; x < p; ++x) {
    sec[x] = gen(1, x);
  }
  m.sections.push_back(sec);
  m.validate();
  return m;
}

SelfSimilarMachine grigorchuk_machine() {
  SelfSimilarMachine m;
  m.alphabet_size   = 2;
  m.generator_names = {"a", "b", "c", "d"};
  m.perms           = {{1, 0}, {0, 1}, {0, 1}, {0, 1}};
  m.sections        = {{FreeWord(), FreeWord()},
                       {gen(1), gen(3)},
                       {gen(1), gen(4)},
                       {FreeWord(), gen(2)}};
  m.validate();
  return m;
}

// Presentations are read with x^y = y^-1 x y, a right action; under the left
// action each generator maps to the inverse of its machine element.
TreePairing tree_pairing(std::string const& input) {
  std::string const prefix = "catalog:";
  if (input.rfind(prefix, 0) != 0) {
    throw Error("tree pairings exist only for catalog entries");
  }
  std::string name = input.substr(prefix.size());
  int         p    = 0;
  if (auto colon = name.find(':'); colon != std::string::npos) {
    p    = std::stoi(name.substr(colon + 1));
    name = name.substr(0, colon);
  }
  TreePairing out;
  out.presentation = load_presentation(input);
  if (name == "grigorchuk" || name == "grigorchuk-inv") {
    out.machine = grigorchuk_machine();
    for (auto const& g : out.presentation.generator_names) {
      int k = 0;
      while (out.machine.generator_names[k] != g) {
        ++k;
      }
      out.generator_map.push_back(gen(k + 1, -1));
    }
  } else if (name == "fg") {
    out.machine       = fabrykowski_gupta_machine(p);
    out.generator_map = {gen(1, -1), gen(2, -1)};
  } else if (name == "gs-d" || name == "gs-dz") {
    out.machine = gupta_sidki_machine(p);
    for (int i = 1; i <= p; ++i) {
      out.generator_map.push_back(gen(1, i) * gen(2, -1) * gen(1, -i));
    }
  } else {
    throw Error("no machine for catalog entry '" + name + "'");
  }
  return out;
}

bool gs_identity_holds(int p, int i, int j, int k, int e, int depth) {
  SelfSimilarMachine m = gupta_sidki_machine(p);
  // alpha at coordinate x: trivial root permutation, a at position x
  std::vector<int> id(p);
  std::iota(id.begin(), id.end(), 0);
  for (int x = 0; x < p; ++x) {
    m.generator_names.push_back("u" + std::to_string(x));
    m.perms.push_back(id);
    std::vector<FreeWord> sec(p);
    sec[x] = gen(1);
    m.sections.push_back(sec);
  }
  m.validate();
  auto sigma = [&](int x, long n) {
    int const c = wrap(x, p);
    FreeWord  s = gen(1, c) * gen(2, -1) * gen(1, -c);
    return power(s, n);
  };
  auto alpha = [&](int x, long n) {
    return gen(3 + wrap(x, p), -n);
  };
  long const  jk  = static_cast<long>(j - k) * e;
  long const  ki  = static_cast<long>(k - i) * e;
  long const  ij  = static_cast<long>(i - j) * e;
  long const  n   = wrap(static_cast<long>(j - i) * (i - k) * e, p);
  FreeWord    lhs = commutator(sigma(i, jk) * sigma(j, ki), sigma(k, ij) * sigma(i, jk));
  FreeWord sin = alpha(i, -n) * sigma(i, 1) * alpha(i, n);
  FreeWord rhs = power(sin, -2 * jk) * sigma(i, 2 * jk);
  return trivial_to_depth(m, inverse(lhs) * rhs, depth);
}

namespace {

  class MachineReader {
   public:
    explicit MachineReader(std::string_view s) : _s(s) {}

    SelfSimilarMachine read() {
      expect_word("machine");
      expect('{');
      SelfSimilarMachine                    m;
      std::vector<std::vector<std::string>> raw;
      bool                                  have_alphabet = false;
      while (!peek_is('}')) {
        std::string kw = ident();
        if (kw == "alphabet") {
          expect(':');
          m.alphabet_size = number();
          have_alphabet   = true;
          expect(';');
        } else if (kw == "gen") {
          if (!have_alphabet) {
            fail("alphabet must precede generators");
          }
          m.generator_names.push_back(ident());
          expect(':');
          expect_word("perm");
          m.perms.push_back(cycles(m.alphabet_size));
          expect(',');
          expect_word("sections");
          raw.push_back(section_list());
          expect(';');
        } else {
          fail("unexpected '" + kw + "'");
        }
      }
      expect('}');
      skip();
      if (_i != _s.size()) {
        fail("trailing input");
      }
      for (auto const& list : raw) {
        std::vector<FreeWord> sec;
        for (auto const& w : list) {
          sec.push_back(parse_word(w, m.generator_names));
        }
        m.sections.push_back(std::move(sec));
      }
      m.validate();
      return m;
    }

   private:
    [[noreturn]] void fail(std::string const& msg) const {
      std::size_t line = 1, col = 1;
      for (std::size_t k = 0; k < _i && k < _s.size(); ++k) {
        if (_s[k] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      throw ParseError(msg, line, col);
    }

    void skip() {
      while (_i < _s.size()) {
        if (std::isspace(static_cast<unsigned char>(_s[_i]))) {
          ++_i;
        } else if (_s[_i] == '#') {
          while (_i < _s.size() && _s[_i] != '\n') {
            ++_i;
          }
        } else {
          break;
        }
      }
    }

    bool peek_is(char c) {
      skip();
      if (_i >= _s.size()) {
        fail("unexpected end of input");
      }
      return _s[_i] == c;
    }

    void expect(char c) {
      if (!peek_is(c)) {
        fail(std::string("expected '") + c + "'");
      }
      ++_i;
    }

    std::string ident() {
      skip();
      std::size_t b = _i;
      while (_i < _s.size()
             && (std::isalnum(static_cast<unsigned char>(_s[_i])) || _s[_i] == '_')) {
        ++_i;
      }
      if (b == _i) {
        fail("expected a name");
      }
      return std::string(_s.substr(b, _i - b));
    }

    void expect_word(std::string const& w) {
      if (ident() != w) {
        fail("expected '" + w + "'");
      }
    }

    int number() {
      skip();
      std::size_t b = _i;
      while (_i < _s.size() && std::isdigit(static_cast<unsigned char>(_s[_i]))) {
        ++_i;
      }
      if (b == _i) {
        fail("expected a number");
      }
      return std::stoi(std::string(_s.substr(b, _i - b)));
    }

    std::vector<int> cycles(int n) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<bool> used(n, false);
      while (peek_is('(')) {
        ++_i;
        std::vector<int> cyc;
        while (!peek_is(')')) {
          int x = number();
          if (x >= n || used[x]) {
            fail("bad point in cycle");
          }
          used[x] = true;
          cyc.push_back(x);
        }
        ++_i;
        for (std::size_t k = 0; k < cyc.size(); ++k) {
          perm[cyc[k]] = cyc[(k + 1) % cyc.size()];
        }
      }
      return perm;
    }

    std::vector<std::string> section_list() {
      expect('(');
      std::vector<std::string> out;
      std::string              cur;
      int                      level = 0;
      while (true) {
        if (_i >= _s.size()) {
          fail("unterminated section list");
        }
        char c = _s[_i++];
        if (c == '(') {
          ++level;
        } else if (c == ')') {
          if (level == 0) {
            break;
          }
          --level;
        } else if (c == ',' && level == 0) {
          out.push_back(cur);
          cur.clear();
          continue;
        }
        cur.push_back(c);
      }
      out.push_back(cur);
      return out;
    }

    std::string_view _s;
    std::size_t      _i = 0;
  };

}  // namespace

SelfSimilarMachine parse_machine(std::string_view text) {
  return MachineReader(text).read();
}

std::string serialize(SelfSimilarMachine const& m) {
  std::ostringstream os;
  os << "machine {\n  alphabet: " << m.alphabet_size << ";\n";
  for (std::size_t g = 0; g < m.rank(); ++g) {
    os << "  gen " << m.generator_names[g] << ": perm ";
    std::vector<bool> seen(m.alphabet_size, false);
    bool              any = false;
    for (int x = 0; x < m.alphabet_size; ++x) {
      if (seen[x] || m.perms[g][x] == x) {
        continue;
      }
      any = true;
      os << '(';
      for (int y = x; !seen[y]; y = m.perms[g][y]) {
        seen[y] = true;
        os << (y == x ? "" : " ") << y;
      }
      os << ')';
    }
    if (!any) {
      os << "()";
    }
    os << ", sections (";
    for (int x = 0; x < m.alphabet_size; ++x) {
      os << (x ? ", " : "") << format_word(m.sections[g][x], m.generator_names);
    }
    os << ");\n";
  }
  os << "}\n";
  return os.str();
}

SelfSimilarMachine read_machine_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot read '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_machine(ss.str());
}

}  // namespace lpnq
