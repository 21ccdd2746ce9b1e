#pragma once

#include "lpnq/words.hpp"

#include <optional>
#include <span>
#include <vector>

namespace lpnq {

// Straight-line programs over the source generators. Nodes only refer to
// earlier nodes, so expressions are shared instead of expanded.
class PreimageDag {
 public:
  using Node = int;

  enum class Kind { Identity, Leaf, Mul, Inv, Pow };

  struct Entry {
    Kind    kind;
    int     a = 0;  // leaf generator, or first operand
    int     b = 0;  // second operand
    Integer k;      // exponent for Pow
  };

  PreimageDag();

  static constexpr Node identity() {
    return 0;
  }
  Node leaf(int gen);
  Node multiply(Node x, Node y);
  Node inverse(Node x);
  Node power(Node x, Integer const& k);
  Node conjugate(Node x, Node y);  // y^-1 x y
  Node product(std::span<Node const> xs);

  std::size_t size() const noexcept {
    return _nodes.size();
  }
  Entry const& entry(Node x) const {
    return _nodes.at(static_cast<std::size_t>(x));
  }

  FreeWord expand(Node x) const;

  // Evaluates the given roots. Ops provides identity(), leaf(int),
  // mul(T, T), inv(T), pow(T, Integer).
  template <typename T, typename Ops>
  std::vector<T> evaluate(std::span<Node const> roots, Ops& ops) const;

 private:
  Node add(Entry e);

  std::vector<Entry> _nodes;
  std::vector<Node>  _leaves;
};

template <typename T, typename Ops>
std::vector<T> PreimageDag::evaluate(std::span<Node const> roots, Ops& ops) const {
  std::vector<char> needed(_nodes.size(), 0);
  std::vector<Node> stack(roots.begin(), roots.end());
  while (!stack.empty()) {
    Node x = stack.back();
    stack.pop_back();
    if (needed[x]) {
      continue;
    }
    needed[x]      = 1;
    Entry const& e = _nodes[x];
    if (e.kind == Kind::Mul) {
      stack.push_back(e.a);
      stack.push_back(e.b);
    } else if (e.kind == Kind::Inv || e.kind == Kind::Pow) {
      stack.push_back(e.a);
    }
  }
  std::vector<std::optional<T>> memo(_nodes.size());
  for (std::size_t x = 0; x < _nodes.size(); ++x) {
    if (!needed[x]) {
      continue;
    }
    Entry const& e = _nodes[x];
    switch (e.kind) {
      case Kind::Identity:
        memo[x] = ops.identity();
        break;
      case Kind::Leaf:
        memo[x] = ops.leaf(e.a);
        break;
      case Kind::Mul:
        memo[x] = ops.mul(*memo[e.a], *memo[e.b]);
        break;
      case Kind::Inv:
        memo[x] = ops.inv(*memo[e.a]);
        break;
      case Kind::Pow:
        memo[x] = ops.pow(*memo[e.a], e.k);
        break;
    }
  }
  std::vector<T> out;
  out.reserve(roots.size());
  for (Node r : roots) {
    out.push_back(*memo[r]);
  }
  return out;
}

}  // namespace lpnq
