#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace mosaic {

// Exact arithmetic over Q. mpq_class keeps values canonical:
// lowest terms, denominator > 0.
using Int = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Factorial as an exact integer; n is small everywhere in this project.
inline Int factorial(unsigned n) {
    Int f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace mosaic
