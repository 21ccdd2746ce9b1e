#include "lpnq/errors.hpp"
#include "lpnq/lpres.hpp"

#include <filesystem>

namespace lpnq {

namespace {

  FreeWord gen(int i, Integer const& e = 1) {
    return FreeWord::generator(i, e);
  }

  int wrap(int i, int p) {
    return ((i - 1) % p + p) % p + 1;
  }

  FreeWord word(std::string_view s, std::vector<std::string> const& names) {
    return parse_word(s, names);
  }

}  // namespace

bool is_odd_prime(int p) {
  if (p < 3 || p % 2 == 0) {
    return false;
  }
  for (int d = 3; d * d <= p; d += 2) {
    if (p % d == 0) {
      return false;
    }
  }
  return true;
}

LPresentation as_ascending(LPresentation const& p) {
  if (!p.declared_invariant) {
    throw NotInvariantError("presentation is not declared invariant");
  }
  if (p.declared_ascending) {
    return p;
  }
  LPresentation out = p;
  out.iterated_relators.insert(out.iterated_relators.end(),
                               out.fixed_relators.begin(),
                               out.fixed_relators.end());
  out.fixed_relators.clear();
  out.declared_ascending = true;
  return out;
}

LPresentation from_finite_presentation(std::vector<std::string> gens,
                                       std::vector<FreeWord>    relators) {
  LPresentation out;
  out.generator_names = std::move(gens);
  out.endomorphisms.push_back({"id", FreeEndomorphism::identity(out.rank())});
  out.iterated_relators  = std::move(relators);
  out.declared_invariant = true;
  out.declared_ascending = true;
  out.validate();
  return out;
}

LPresentation free_group(std::size_t rank) {
  std::vector<std::string> names;
  if (rank <= 26) {
    for (std::size_t i = 0; i < rank; ++i) {
      names.emplace_back(1, static_cast<char>('a' + i));
    }
  } else {
    for (std::size_t i = 1; i <= rank; ++i) {
      names.push_back("x" + std::to_string(i));
    }
  }
  return from_finite_presentation(std::move(names), {});
}

LPresentation grigorchuk_ascending() {
  LPresentation p;
  p.generator_names = {"a", "c", "d"};
  auto const& n     = p.generator_names;
  p.endomorphisms.push_back(
      {"sigma", FreeEndomorphism({word("c^a", n), word("c*d", n), word("c", n)})});
  p.iterated_relators  = {word("a^2", n), word("[d, d^a]", n), word("[d, d^(a*c*a*c*a)]", n)};
  p.declared_invariant = true;
  p.declared_ascending = true;
  p.validate();
  return p;
}

LPresentation grigorchuk_invariant() {
  LPresentation p;
  p.generator_names = {"a", "b", "c", "d"};
  auto const& n     = p.generator_names;
  p.fixed_relators
      = {word("a^2", n), word("b^2", n), word("c^2", n), word("d^2", n), word("b*c*d", n)};
  p.endomorphisms.push_back(
      {"sigma",
       FreeEndomorphism({word("c^a", n), word("d", n), word("b", n), word("c", n)})});
  p.iterated_relators  = {word("[d, d^a]", n), word("[d, d^(a*c*a*c*a)]", n)};
  p.declared_invariant = true;
  p.validate();
  return p;
}

LPresentation gen_fabrykowski_gupta(int p, bool full_relators) {
  if (p < 3) {
    throw Error("the generalized Fabrykowski-Gupta group needs p >= 3");
  }
  int const alpha = 1, rho = 2;
  auto      sigma = [&](int i) {
    return conjugate(gen(rho), gen(alpha, wrap(i, p)));
  };
  LPresentation out;
  out.generator_names = {"a", "r"};
  out.endomorphisms.push_back(
      {"phi", FreeEndomorphism({conjugate(gen(rho), gen(alpha, -1)), gen(rho)})});
  auto& R = out.iterated_relators;
  R.push_back(gen(alpha, p));
  std::vector<int> is;
  if (full_relators) {
    for (int i = 1; i <= p; ++i) {
      is.push_back(i);
    }
  } else {
    is.push_back(1);
  }
  for (int i : is) {
    for (int j = 1; j <= p; ++j) {
      int d = std::abs(i - j);
      if (d < 2 || d > p - 2) {
        continue;
      }
      for (int n = 0; n < p; ++n) {
        for (int m = 0; m < p; ++m) {
          R.push_back(commutator(conjugate(sigma(i), power(sigma(i - 1), n)),
                                 conjugate(sigma(j), power(sigma(j - 1), m))));
        }
      }
    }
  }
  for (int i : is) {
    for (int n = 0; n < p; ++n) {
      for (int m = 0; m < p; ++m) {
        FreeWord lhs = inverse(conjugate(sigma(i), power(sigma(i - 1), n + 1)));
        FreeWord by
            = power(sigma(i - 1), n) * conjugate(sigma(i - 1), power(sigma(i - 2), m));
        R.push_back(lhs * conjugate(sigma(i), by));
      }
    }
  }
  out.declared_invariant = true;
  out.declared_ascending = true;
  out.validate();
  return out;
}

FreeWord sigma_i_ell(int p, int i, int ell) {
  if (!is_odd_prime(p)) {
    throw Error("p must be an odd prime");
  }
  if (i < 1 || i > p || ell < 0 || ell >= p) {
    throw Error("sigma index out of range");
  }
  if (ell == 0) {
    return gen(i);
  }
  Integer const P = p;
  auto frac = [&](long num, long den) {
    return floor_mod(Integer(num) * mod_inverse(Integer(den), P), P);
  };
  for (int j = 1; j <= p; ++j) {
    for (int k = 1; k <= p; ++k) {
      if (j == i || k == i || j == k) {
        continue;
      }
      if (frac(static_cast<long>(j - i) * (i - k), 2L * (j - k)) != ell) {
        continue;
      }
      Integer  half = frac(1, 2);
      FreeWord x    = gen(i, half) * power(gen(j), frac(k - i, 2L * (j - k)));
      FreeWord y    = power(gen(k), frac(i - j, 2L * (j - k))) * gen(i, half);
      return gen(i) * inverse(commutator(x, y));
    }
  }
  throw Error("no admissible index pair for sigma");
}

LPresentation gen_gupta_sidki_D(int p, bool shift_closed) {
  if (!is_odd_prime(p)) {
    throw Error("p must be an odd prime");
  }
  LPresentation out;
  for (int i = 1; i <= p; ++i) {
    out.generator_names.push_back("s" + std::to_string(i));
  }
  auto s = [p](int i, int ell) {
    return sigma_i_ell(p, i, ((ell % p) + p) % p);
  };
  auto& R = out.iterated_relators;
  for (int i = 1; i <= p; ++i) {
    R.push_back(gen(i, p));
  }
  for (int i = 1; i <= p; ++i) {
    for (int j = 1; j <= p; ++j) {
      if (i == j) {
        continue;
      }
      for (int m = 0; m < p; ++m) {
        for (int n = 0; n < p; ++n) {
          R.push_back(inverse(s(i, m + i)) * inverse(s(j, n + i)) * s(i, m + j)
                      * s(j, n + j));
        }
      }
    }
  }
  std::vector<FreeWord> im;
  for (int i = 1; i <= p; ++i) {
    im.push_back(s(1, i));
  }
  out.endomorphisms.push_back({"Sigma", FreeEndomorphism(std::move(im))});
  if (shift_closed) {
    std::vector<FreeWord> z;
    for (int i = 1; i <= p; ++i) {
      z.push_back(gen(wrap(i + 1, p)));
    }
    out.endomorphisms.push_back({"zeta", FreeEndomorphism(std::move(z))});
  }
  out.declared_invariant = true;
  out.declared_ascending = true;
  out.validate();
  return out;
}

LPresentation gupta_sidki(int p) {
  LPresentation d   = gen_gupta_sidki_D(p);
  LPresentation out;
  out.generator_names = d.generator_names;
  out.generator_names.push_back("t");
  int const t = p + 1;
  out.fixed_relators.push_back(gen(t, p));
  for (int i = 1; i <= p; ++i) {
    out.fixed_relators.push_back(conjugate(gen(i), gen(t)) * gen(wrap(i + 1, p), -1));
  }
  auto im = d.endomorphisms[0].map.images();
  im.push_back(gen(t));
  out.endomorphisms.push_back({"Sigma", FreeEndomorphism(std::move(im))});
  out.iterated_relators = d.iterated_relators;
  out.validate();
  return out;
}

LPresentation example_g3() {
  std::vector<std::string> n = {"a", "b"};
  return from_finite_presentation(n, {word("[a, [a, [a, b]]]", n), word("[b, [b, [a, b]]]", n)});
}

LPresentation example_g4() {
  std::vector<std::string> n = {"x", "y"};
  return from_finite_presentation(
      n, {word("[[y, x], y]", n), word("[[[[[y, x], x], x], x], x]", n)});
}

std::vector<std::string> catalog_names() {
  return {"grigorchuk",
          "grigorchuk-inv",
          "fg:P",
          "fg-full:P",
          "gs-d:P",
          "gs-dz:P",
          "gs:P",
          "free:M",
          "g3",
          "g4"};
}

LPresentation load_presentation(std::string const& input) {
  std::string const prefix = "catalog:";
  if (input.rfind(prefix, 0) != 0) {
    if (!std::filesystem::exists(input)) {
      throw Error("no such file '" + input + "'");
    }
    return read_lpresentation_file(input);
  }
  std::string rest = input.substr(prefix.size());
  std::string name = rest;
  int         arg  = 0;
  auto        pos  = rest.find(':');
  if (pos != std::string::npos) {
    name = rest.substr(0, pos);
    try {
      arg = std::stoi(rest.substr(pos + 1));
    } catch (std::exception const&) {
      throw Error("bad catalog parameter in '" + input + "'");
    }
  }
  auto need_arg = [&] {
    if (pos == std::string::npos) {
      throw Error("catalog entry '" + name + "' needs a parameter");
    }
  };
  if (name == "grigorchuk") {
    return grigorchuk_ascending();
  }
  if (name == "grigorchuk-inv") {
    return grigorchuk_invariant();
  }
  if (name == "fg") {
    need_arg();
    return gen_fabrykowski_gupta(arg);
  }
  if (name == "fg-full") {
    need_arg();
    return gen_fabrykowski_gupta(arg, true);
  }
  if (name == "gs-d") {
    need_arg();
    return gen_gupta_sidki_D(arg);
  }
  if (name == "gs-dz") {
    need_arg();
    return gen_gupta_sidki_D(arg, true);
  }
  if (name == "gs") {
    need_arg();
    return gupta_sidki(arg);
  }
  if (name == "free") {
    need_arg();
    if (arg < 1) {
      throw Error("free group rank must be positive");
    }
    return free_group(static_cast<std::size_t>(arg));
  }
  if (name == "g3") {
    return example_g3();
  }
  if (name == "g4") {
    return example_g4();
  }
  throw Error("unknown catalog entry '" + name + "'");
}

}  // namespace lpnq
