#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lieforge {

// All arithmetic in the library is exact. Rat is the only scalar type;
// there is no floating point anywhere.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

}  // namespace lieforge
