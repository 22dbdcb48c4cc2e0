// Exact rational scalars and small utility types shared by all modules.
#pragma once

#include <gmpxx.h>

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bqkz {

using Rat = mpq_class;
using IVec = std::vector<long>;

// x^n for integer n (negative allowed, x != 0 then).
inline Rat ratPow(const Rat& x, long n) {
  if (n == 0) return Rat(1);
  if (x == 0) {
    if (n > 0) return Rat(0);
    throw std::domain_error("ratPow: 0 raised to negative power");
  }
  unsigned long e = n > 0 ? (unsigned long)n : (unsigned long)(-n);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), e);
  Rat out(num, den);
  out.canonicalize();
  if (n < 0) out = Rat(1) / out;
  return out;
}

// Parses "p/q" or "p" (optionally signed). Throws on malformed input.
inline Rat parseRat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational string");
  for (char c : s)
    if (!(std::isdigit((unsigned char)c) || c == '/' || c == '-' || c == '+'))
      throw std::invalid_argument("malformed rational: " + s);
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string ratStr(const Rat& r) { return r.get_str(); }

inline IVec ivAdd(const IVec& a, const IVec& b) {
  IVec c(a);
  for (size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

inline IVec ivSub(const IVec& a, const IVec& b) {
  IVec c(a);
  for (size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

inline IVec ivNeg(const IVec& a) {
  IVec c(a);
  for (auto& x : c) x = -x;
  return c;
}

inline IVec ivScale(const IVec& a, long s) {
  IVec c(a);
  for (auto& x : c) x *= s;
  return c;
}

inline bool ivZero(const IVec& a) {
  for (long x : a)
    if (x) return false;
  return true;
}

}  // namespace bqkz
