#include "lpnq/errors.hpp"
#include "lpnq/lpres.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace lpnq {

namespace {

  enum class Tok { Ident, Int, Punct, End };

  struct Token {
    Tok         kind;
    std::string text;
    std::size_t line;
    std::size_t col;
  };

  class Lexer {
   public:
    explicit Lexer(std::string_view s) : _s(s) {
      advance();
    }

    Token const& peek() const {
      return _cur;
    }

    Token next() {
      Token t = _cur;
      advance();
      return t;
    }

   private:
    void advance() {
      skip();
      _cur.line = _line;
      _cur.col  = _col;
      if (_i >= _s.size()) {
        _cur.kind = Tok::End;
        _cur.text.clear();
        return;
      }
      char c = _s[_i];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = _i;
        while (j < _s.size()
               && (std::isalnum(static_cast<unsigned char>(_s[j])) || _s[j] == '_')) {
          ++j;
        }
        set(Tok::Ident, j);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = _i;
        while (j < _s.size() && std::isdigit(static_cast<unsigned char>(_s[j]))) {
          ++j;
        }
        set(Tok::Int, j);
      } else if (c == '-' && _i + 1 < _s.size() && _s[_i + 1] == '>') {
        set(Tok::Punct, _i + 2);
      } else if (std::string_view("{}:;,*^()[]-").find(c) != std::string_view::npos) {
        set(Tok::Punct, _i + 1);
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", _line, _col);
      }
    }

    void set(Tok k, std::size_t j) {
      _cur.kind = k;
      _cur.text = std::string(_s.substr(_i, j - _i));
      _col += j - _i;
      _i = j;
    }

    void skip() {
      while (_i < _s.size()) {
        char c = _s[_i];
        if (c == '#') {
          while (_i < _s.size() && _s[_i] != '\n') {
            ++_i;
          }
        } else if (c == '\n') {
          ++_line;
          _col = 1;
          ++_i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
          ++_col;
          ++_i;
        } else {
          break;
        }
      }
    }

    std::string_view _s;
    std::size_t      _i    = 0;
    std::size_t      _line = 1;
    std::size_t      _col  = 1;
    Token            _cur;
  };

  class Parser {
   public:
    Parser(Lexer& lex, std::vector<std::string> const& names)
        : _lex(lex), _names(names) {}

    [[noreturn]] void fail(std::string const& msg, Token const& t) const {
      throw ParseError(msg, t.line, t.col);
    }

    Token expect(std::string const& punct) {
      Token t = _lex.next();
      if (t.kind != Tok::Punct || t.text != punct) {
        fail("expected '" + punct + "'", t);
      }
      return t;
    }

    bool accept(std::string const& punct) {
      if (_lex.peek().kind == Tok::Punct && _lex.peek().text == punct) {
        _lex.next();
        return true;
      }
      return false;
    }

    int generator(Token const& t) const {
      for (std::size_t i = 0; i < _names.size(); ++i) {
        if (_names[i] == t.text) {
          return static_cast<int>(i + 1);
        }
      }
      fail("undeclared generator '" + t.text + "'", t);
    }

    FreeWord word() {
      FreeWord w = term();
      while (accept("*")) {
        w.append(term());
      }
      return w;
    }

    FreeWord term() {
      FreeWord a = atom();
      if (!accept("^")) {
        return a;
      }
      Token const& t = _lex.peek();
      if (t.kind == Tok::Int || (t.kind == Tok::Punct && t.text == "-")) {
        bool  neg = accept("-");
        Token n   = _lex.next();
        if (n.kind != Tok::Int) {
          fail("expected integer exponent", n);
        }
        Integer e(n.text);
        if (e == 0) {
          fail("zero exponent", n);
        }
        return power(a, neg ? Integer(-e) : e);
      }
      if (t.kind == Tok::Ident || (t.kind == Tok::Punct && (t.text == "(" || t.text == "["))) {
        return conjugate(a, atom());
      }
      fail("exponent must be an integer or a word", t);
    }

    FreeWord atom() {
      Token t = _lex.next();
      if (t.kind == Tok::Ident) {
        return FreeWord::generator(generator(t));
      }
      if (t.kind == Tok::Int) {
        if (t.text != "1") {
          fail("integer where a word was expected", t);
        }
        return FreeWord();
      }
      if (t.kind == Tok::Punct && t.text == "(") {
        FreeWord w = word();
        expect(")");
        return w;
      }
      if (t.kind == Tok::Punct && t.text == "[") {
        FreeWord x = word();
        expect(",");
        FreeWord y = word();
        expect("]");
        return commutator(x, y);
      }
      fail("expected a word", t);
    }

   private:
    Lexer&                          _lex;
    std::vector<std::string> const& _names;
  };

  std::string ident(Lexer& lex) {
    Token t = lex.next();
    if (t.kind != Tok::Ident) {
      throw ParseError("expected identifier", t.line, t.col);
    }
    return t.text;
  }

  std::vector<FreeWord> word_list(Parser& p) {
    std::vector<FreeWord> out;
    if (p.accept(";")) {
      return out;
    }
    out.push_back(p.word());
    while (p.accept(",")) {
      out.push_back(p.word());
    }
    p.expect(";");
    return out;
  }

}  // namespace

int LPresentation::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < generator_names.size(); ++i) {
    if (generator_names[i] == name) {
      return static_cast<int>(i + 1);
    }
  }
  return 0;
}

void LPresentation::validate() const {
  int const m = static_cast<int>(rank());
  for (std::size_t i = 0; i < generator_names.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (generator_names[i] == generator_names[j]) {
        throw Error("duplicate generator name '" + generator_names[i] + "'");
      }
    }
  }
  auto check = [m](FreeWord const& w) {
    if (w.max_generator() > m) {
      throw Error("word uses an undeclared generator");
    }
  };
  for (auto const& w : fixed_relators) {
    check(w);
  }
  for (auto const& w : iterated_relators) {
    check(w);
  }
  for (auto const& e : endomorphisms) {
    if (e.map.rank() != rank()) {
      throw Error("endomorphism '" + e.name + "' has the wrong rank");
    }
    for (auto const& w : e.map.images()) {
      check(w);
    }
  }
  if (declared_ascending && !fixed_relators.empty()) {
    throw Error("an ascending presentation has no fixed relators");
  }
  if (declared_ascending && !declared_invariant) {
    throw Error("an ascending presentation is invariant");
  }
}

FreeWord parse_word(std::string_view text, std::vector<std::string> const& names) {
  Lexer  lex(text);
  Parser p(lex, names);
  FreeWord w = p.word();
  if (lex.peek().kind != Tok::End) {
    throw ParseError("trailing input after word", lex.peek().line, lex.peek().col);
  }
  return w;
}

std::string format_word(FreeWord const& w, std::vector<std::string> const& names) {
  if (w.is_identity()) {
    return "1";
  }
  std::string out;
  for (auto const& s : w.syllables()) {
    if (!out.empty()) {
      out += '*';
    }
    out += names.at(static_cast<std::size_t>(s.gen - 1));
    if (s.exp != 1) {
      out += '^' + to_string(s.exp);
    }
  }
  return out;
}

LPresentation parse_lpresentation(std::string_view text) {
  Lexer                    lex(text);
  std::vector<std::string> names;
  Parser                   p(lex, names);
  LPresentation            out;

  Token head = lex.next();
  if (head.kind != Tok::Ident || head.text != "lpres") {
    throw ParseError("expected 'lpres'", head.line, head.col);
  }
  p.expect("{");
  bool have_gens = false;
  while (!p.accept("}")) {
    Token key = lex.next();
    if (key.kind != Tok::Ident) {
      p.fail("expected a section name", key);
    }
    if (key.text == "gens") {
      if (have_gens) {
        p.fail("duplicate gens section", key);
      }
      p.expect(":");
      if (!p.accept(";")) {
        names.push_back(ident(lex));
        while (p.accept(",")) {
          names.push_back(ident(lex));
        }
        p.expect(";");
      }
      have_gens = true;
      continue;
    }
    if (!have_gens) {
      p.fail("the gens section must come first", key);
    }
    if (key.text == "fixed") {
      p.expect(":");
      auto w = word_list(p);
      out.fixed_relators.insert(out.fixed_relators.end(), w.begin(), w.end());
    } else if (key.text == "iter") {
      p.expect(":");
      auto w = word_list(p);
      out.iterated_relators.insert(out.iterated_relators.end(), w.begin(), w.end());
    } else if (key.text == "endo") {
      std::string name = ident(lex);
      p.expect("{");
      auto im = FreeEndomorphism::identity(names.size()).images();
      while (!p.accept("}")) {
        Token g = lex.next();
        if (g.kind != Tok::Ident) {
          p.fail("expected generator", g);
        }
        int i = p.generator(g);
        p.expect("->");
        im[i - 1] = p.word();
        p.expect(";");
      }
      out.endomorphisms.push_back({name, FreeEndomorphism(std::move(im))});
    } else if (key.text == "flags") {
      p.expect(":");
      if (!p.accept(";")) {
        do {
          Token f = lex.next();
          if (f.kind == Tok::Ident && f.text == "ascending") {
            out.declared_ascending = true;
            out.declared_invariant = true;
          } else if (f.kind == Tok::Ident && f.text == "invariant") {
            out.declared_invariant = true;
          } else {
            p.fail("unknown flag '" + f.text + "'", f);
          }
        } while (p.accept(","));
        p.expect(";");
      }
    } else {
      p.fail("unknown section '" + key.text + "'", key);
    }
  }
  if (lex.peek().kind != Tok::End) {
    p.fail("trailing input", lex.peek());
  }
  out.generator_names = std::move(names);
  if (out.declared_ascending && !out.fixed_relators.empty()) {
    throw ParseError("ascending presentation with fixed relators", head.line, head.col);
  }
  out.validate();
  return out;
}

std::string serialize(LPresentation const& p) {
  auto const&        n = p.generator_names;
  std::ostringstream os;
  os << "lpres {\n  gens: ";
  for (std::size_t i = 0; i < n.size(); ++i) {
    os << (i ? ", " : "") << n[i];
  }
  os << ";\n  fixed: ";
  for (std::size_t i = 0; i < p.fixed_relators.size(); ++i) {
    os << (i ? ", " : "") << format_word(p.fixed_relators[i], n);
  }
  os << ";\n";
  for (auto const& e : p.endomorphisms) {
    os << "  endo " << e.name << " {";
    for (std::size_t i = 0; i < n.size(); ++i) {
      os << ' ' << n[i] << " -> " << format_word(e.map.images()[i], n) << ';';
    }
    os << " }\n";
  }
  os << "  iter: ";
  for (std::size_t i = 0; i < p.iterated_relators.size(); ++i) {
    os << (i ? ", " : "") << format_word(p.iterated_relators[i], n);
  }
  os << ";\n  flags: ";
  std::vector<std::string> flags;
  if (p.declared_ascending) {
    flags.emplace_back("ascending");
  }
  if (p.declared_invariant) {
    flags.emplace_back("invariant");
  }
  for (std::size_t i = 0; i < flags.size(); ++i) {
    os << (i ? ", " : "") << flags[i];
  }
  os << ";\n}\n";
  return os.str();
}

LPresentation read_lpresentation_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_lpresentation(ss.str());
}

}  // namespace lpnq
