#include "lpnq/preimage.hpp"

#include "lpnq/errors.hpp"

namespace lpnq {

PreimageDag::PreimageDag() {
  _nodes.push_back({Kind::Identity, 0, 0, Integer(0)});
}

PreimageDag::Node PreimageDag::add(Entry e) {
  _nodes.push_back(std::move(e));
  return static_cast<Node>(_nodes.size() - 1);
}

PreimageDag::Node PreimageDag::leaf(int gen) {
  if (gen < 1) {
    throw Error("leaf generator numbers start at 1");
  }
  if (static_cast<std::size_t>(gen) >= _leaves.size()) {
    _leaves.resize(gen + 1, -1);
  }
  if (_leaves[gen] < 0) {
    _leaves[gen] = add({Kind::Leaf, gen, 0, Integer(0)});
  }
  return _leaves[gen];
}

PreimageDag::Node PreimageDag::multiply(Node x, Node y) {
  if (x == 0) {
    return y;
  }
  if (y == 0) {
    return x;
  }
  return add({Kind::Mul, x, y, Integer(0)});
}

PreimageDag::Node PreimageDag::inverse(Node x) {
  if (x == 0) {
    return 0;
  }
  if (_nodes[x].kind == Kind::Inv) {
    return _nodes[x].a;
  }
  return add({Kind::Inv, x, 0, Integer(0)});
}

PreimageDag::Node PreimageDag::power(Node x, Integer const& k) {
  if (x == 0 || k == 0) {
    return 0;
  }
  if (k == 1) {
    return x;
  }
  if (k == -1) {
    return inverse(x);
  }
  return add({Kind::Pow, x, 0, k});
}

PreimageDag::Node PreimageDag::conjugate(Node x, Node y) {
  return multiply(multiply(inverse(y), x), y);
}

PreimageDag::Node PreimageDag::product(std::span<Node const> xs) {
  Node acc = 0;
  for (Node x : xs) {
    acc = multiply(acc, x);
  }
  return acc;
}

namespace {

  struct ExpandOps {
    FreeWord identity() {
      return FreeWord();
    }
    FreeWord leaf(int g) {
      return FreeWord::generator(g);
    }
    FreeWord mul(FreeWord const& x, FreeWord const& y) {
      return x * y;
    }
    FreeWord inv(FreeWord const& x) {
      return lpnq::inverse(x);
    }
    FreeWord pow(FreeWord const& x, Integer const& k) {
      return lpnq::power(x, k);
    }
  };

}  // namespace

FreeWord PreimageDag::expand(Node x) const {
  ExpandOps ops;
  Node      roots[] = {x};
  return evaluate<FreeWord>(std::span<Node const>(roots), ops).front();
}

}  // namespace lpnq
