#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace lpnq {

using Integer = boost::multiprecision::cpp_int;

// Quotient rounded towards negative infinity.
Integer floor_div(Integer const& a, Integer const& b);
// Remainder in [0, |b|).
Integer floor_mod(Integer const& a, Integer const& b);

struct ExtendedGcd {
  Integer g;  // non-negative
  Integer s;
  Integer t;  // g == s*a + t*b
};

ExtendedGcd extended_gcd(Integer const& a, Integer const& b);

// Inverse of a modulo m, in [0, m). Throws if gcd(a, m) != 1.
Integer mod_inverse(Integer const& a, Integer const& m);

std::string to_string(Integer const& x);

}  // namespace lpnq
