#ifndef REALDYN_RATIONAL_HPP
#define REALDYN_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <string>

namespace realdyn {

using Rat = mpq_class;
using Int = mpz_class;

inline double to_double(const Rat& q) { return q.get_d(); }

// Every finite double is a dyadic rational; the conversion is exact.
inline Rat rat_from_double(double x) {
  Rat q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

// "3", "-5/7", "0.25", "1e-3" -> exact rational.
Rat rat_from_string(const std::string& s);

inline Rat rat_pow(Rat base, unsigned long e) {
  Rat r(1);
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline int sign(const Rat& q) { return sgn(q); }

}  // namespace realdyn

#endif
