#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace amf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs_int(const Int& a) { return boost::multiprecision::abs(a); }

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_int(const Rat& r) { return den(r) == 1; }

inline Int pow_int(Int base, unsigned long e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// p-adic valuation of a nonzero integer.
inline long valuation(Int a, const Int& p) {
  if (a == 0) return -1;  // callers treat v(0) as +infinity; sentinel
  long v = 0;
  a = abs_int(a);
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

// Extends v_p to nonzero rationals.
inline long valuation(const Rat& a, const Int& p) {
  if (a == 0) return -1;
  return valuation(num(a), p) - valuation(den(a), p);
}

inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::string to_string(const Int& a) { return a.str(); }

inline std::string to_string(const Rat& a) {
  if (is_int(a)) return num(a).str();
  return num(a).str() + "/" + den(a).str();
}

}  // namespace amf
