#include "lpnq/integer.hpp"

#include "lpnq/errors.hpp"

namespace lpnq {

Integer floor_div(Integer const& a, Integer const& b) {
  if (b == 0) {
    throw Error("division by zero");
  }
  Integer q = a / b;
  Integer r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) {
    --q;
  }
  return q;
}

Integer floor_mod(Integer const& a, Integer const& b) {
  Integer bb = abs(b);
  Integer r  = a % bb;
  if (r < 0) {
    r += bb;
  }
  return r;
}

ExtendedGcd extended_gcd(Integer const& a, Integer const& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q   = old_r / r;
    Integer tmp = old_r - q * r;
    old_r       = r;
    r           = tmp;
    tmp         = old_s - q * s;
    old_s       = s;
    s           = tmp;
    tmp         = old_t - q * t;
    old_t       = t;
    t           = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

Integer mod_inverse(Integer const& a, Integer const& m) {
  auto e = extended_gcd(floor_mod(a, m), m);
  if (e.g != 1) {
    throw Error("no modular inverse of " + to_string(a) + " mod "
                + to_string(m));
  }
  return floor_mod(e.s, m);
}

std::string to_string(Integer const& x) {
  return x.str();
}

}  // namespace lpnq
