#include "lpnq/errors.hpp"
#include "lpnq/lpres.hpp"
#include "lpnq/nq.hpp"
#include "lpnq/pcgroup.hpp"
#include "lpnq/report.hpp"
#include "lpnq/treeaction.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace lpnq;

namespace {

enum Exit { Ok = 0, InputError = 1, Partial = 2, NotInvariant = 3, Failure = 4 };

struct ComputeArgs {
  std::string input;
  int         max_class  = 10;
  double      time_limit = 0;
  std::string strategy   = "direct";
  std::string format     = "text";
  std::string qbar;
  std::string out;
};

void emit(std::string const& text, std::string const& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) {
    throw Error("cannot write '" + out + "'");
  }
  f << text;
}

std::vector<std::size_t> parse_qbar(std::string const& s, std::size_t nq) {
  std::vector<std::size_t> out;
  if (s == "none") {
    return out;
  }
  if (s == "all") {
    for (std::size_t k = 0; k < nq; ++k) {
      out.push_back(k);
    }
    return out;
  }
  std::stringstream ss(s);
  std::string       item;
  while (std::getline(ss, item, ',')) {
    std::size_t k = std::stoul(item);
    if (k < 1 || k > nq) {
      throw Error("--qbar index " + item + " out of range 1.." + std::to_string(nq));
    }
    out.push_back(k - 1);
  }
  return out;
}

int compute(ComputeArgs const& a) {
  NqOptions o;
  o.max_class          = a.max_class;
  o.time_limit_seconds = a.time_limit;
  NqResult r;
  if (a.strategy.rfind("split:", 0) == 0) {
    int const   c      = std::stoi(a.strategy.substr(6));
    std::string prefix = "catalog:gs:";
    if (a.input.rfind(prefix, 0) != 0) {
      throw Error("the split strategy applies to catalog:gs:P only");
    }
    r = gupta_sidki_split(std::stoi(a.input.substr(prefix.size())), c, o);
  } else if (a.strategy == "direct") {
    LPresentation p = load_presentation(a.input);
    if (p.fixed_relators.empty()) {
      p.declared_invariant = true;
      p.declared_ascending = true;
    }
    if (!a.qbar.empty()) {
      r = nilpotent_quotient_general(p, parse_qbar(a.qbar, p.fixed_relators.size()), o);
    } else if (p.declared_invariant) {
      r = nilpotent_quotient(p, o);
    } else {
      r = nilpotent_quotient_general(p, {}, o);
    }
  } else {
    throw Error("unknown strategy '" + a.strategy + "'");
  }
  emit(a.format == "json" ? result_json(r, a.input) + "\n" : result_text(r, a.input), a.out);
  return r.partial ? Partial : Ok;
}

int abelian(std::string const& input) {
  auto sys = abelian_quotient(load_presentation(input));
  auto l   = sys.layers();
  std::vector<Integer> inv = l.empty() ? std::vector<Integer>{} : l.front();
  std::string          s   = "(";
  for (std::size_t k = 0; k < inv.size(); ++k) {
    s += (k ? "," : "") + to_string(inv[k]);
  }
  std::cout << s << ")\n";
  return Ok;
}

char const* kind_name(OverlapKind k) {
  switch (k) {
    case OverlapKind::Triple:
      return "triple";
    case OverlapKind::PowerLeft:
      return "power-left";
    case OverlapKind::PowerRight:
      return "power-right";
    case OverlapKind::PowerSelf:
      return "power-self";
    case OverlapKind::InverseRight:
      return "inverse";
  }
  return "?";
}

int check_consistency(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot read '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  PcPresentation p = parse_pc(ss.str());
  auto           v = consistency_check(p);
  for (auto const& x : v) {
    std::cout << kind_name(x.kind) << " (" << x.k << "," << x.j << "," << x.i
              << "): " << format_pcword(x.lhs) << " != " << format_pcword(x.rhs) << "\n";
  }
  std::cout << v.size() << " violation" << (v.size() == 1 ? "" : "s") << "\n";
  return v.empty() ? Ok : Failure;
}

int verify_tree(std::string const& input, int iter, int depth) {
  TreePairing t = tree_pairing(input);
  TreeReport  r = verify_lpres(t.machine, t.presentation, t.generator_map, iter, depth);
  for (auto const& f : r.failures) {
    std::cout << "failure: " << f.iterate << "(" << f.relator << ") moves ";
    for (int x : f.vertex) {
      std::cout << x;
    }
    std::cout << "\n";
  }
  std::cout << r.checked << " relators checked, " << r.failures.size() << " failures\n";
  return r.ok() ? Ok : Failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nilpotent quotients of finitely L-presented groups"};
  app.require_subcommand(1);

  ComputeArgs ca;
  auto*       compute_cmd = app.add_subcommand("compute", "lower central series quotients");
  compute_cmd->add_option("input", ca.input, "presentation file or catalog:NAME[:p]")->required();
  compute_cmd->add_option("--max-class", ca.max_class, "largest class")->check(CLI::PositiveNumber);
  compute_cmd->add_option("--time-limit", ca.time_limit, "seconds, 0 for none")
      ->check(CLI::NonNegativeNumber);
  compute_cmd->add_option("--strategy", ca.strategy, "direct or split:C");
  compute_cmd->add_option("--format", ca.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  compute_cmd->add_option("--qbar", ca.qbar, "all, none or 1-based list of fixed relators");
  compute_cmd->add_option("--out", ca.out, "write the report here");

  std::string abelian_input;
  auto*       abelian_cmd = app.add_subcommand("abelian", "abelian invariants");
  abelian_cmd->add_option("input", abelian_input, "presentation file or catalog:NAME[:p]")
      ->required();

  std::string pc_path;
  auto*       check_cmd = app.add_subcommand("check-consistency", "test a pc presentation");
  check_cmd->add_option("path", pc_path, "pc presentation file")->required();

  std::string tree_input;
  int         iter = 3, depth = 6;
  auto*       tree_cmd = app.add_subcommand("verify-tree", "check relators on the tree");
  tree_cmd->add_option("input", tree_input, "catalog:NAME[:p]")->required();
  tree_cmd->add_option("--iter", iter, "endomorphism word length")->check(CLI::NonNegativeNumber);
  tree_cmd->add_option("--depth", depth, "tree depth")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int rc = app.exit(e);
    return rc == 0 ? Ok : InputError;
  }

  try {
    if (*compute_cmd) {
      return compute(ca);
    }
    if (*abelian_cmd) {
      return abelian(abelian_input);
    }
    if (*check_cmd) {
      return check_consistency(pc_path);
    }
    return verify_tree(tree_input, iter, depth);
  } catch (NotInvariantError const& e) {
    std::cerr << "not invariant: " << e.what() << "\n";
    return NotInvariant;
  } catch (InconsistentError const& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return Failure;
  } catch (ParseError const& e) {
    std::cerr << "parse error at " << e.line << ":" << e.column << ": " << e.what() << "\n";
    return InputError;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return InputError;
  }
}
