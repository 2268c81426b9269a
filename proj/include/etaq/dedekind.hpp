#pragma once

// Exact Dedekind sums and the eta multiplier system.
//
// For gamma = (a b; c d) in SL2(Z) with c > 0,
//   eta(gamma z) = eps(gamma) (cz+d)^{1/2} eta(z),
//   eps(gamma) = exp(pi*i*((a+d)/(12c) - s(d,c) - 1/4)),
// where s(d,c) is the Dedekind sum. We carry eps as an exponent t of
// zeta_24 = exp(2 pi i / 24):
//   t = (a+d)/c - 12 s(d,c) - 3,
// which is always an integer. c <= 0 is reduced to c > 0 via gamma -> -gamma
// and the principal branch of the square root.

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

#include "etaq/matrix2.hpp"
#include "etaq/numtheory.hpp"

namespace etaq {

using boost::multiprecision::cpp_int;
using cpp_rat = boost::multiprecision::cpp_rational;

// s(h, k) for k > 0, gcd(h,k) = 1; computed by reciprocity
//   s(h,k) + s(k,h) = -1/4 + (h/k + k/h + 1/(hk)) / 12
// together with s(h mod k, k) = s(h,k) and s(h,1) = 0.
inline cpp_rat dedekind_sum(i64 h, i64 k) {
  if (k <= 0) throw std::domain_error("dedekind_sum: k <= 0");
  h %= k;
  if (h < 0) h += k;
  cpp_rat s = 0;
  i64 sign = 1;
  while (h > 0) {
    // s(h,k) = -1/4 + (h^2 + k^2 + 1)/(12 h k) - s(k mod h, h)
    cpp_int num = cpp_int(h) * h + cpp_int(k) * k + 1;
    s += sign * (cpp_rat(num, cpp_int(12) * h * k) - cpp_rat(1, 4));
    sign = -sign;
    i64 t = k % h;
    k = h;
    h = t;
  }
  return s;
}

// Exponent t in [0,24) with eps(gamma) = zeta_24^t for any gamma in SL2(Z).
inline int eta_eps_exponent(const Mat2& g) {
  if (g.det() != 1) throw std::domain_error("eta_eps_exponent: det != 1");
  if (g.c == 0) {
    // gamma = (1 b; 0 1) or (-1 b; 0 -1)
    if (g.d == 1) return (int)(((g.b % 24) + 24) % 24);
    // eta(z - b) = zeta_24^{-b} eta(z) and (cz+d)^{1/2} = (-1)^{1/2} = i
    return (int)((((-g.b - 6) % 24) + 24) % 24);
  }
  if (g.c < 0) {
    // eps(gamma) = eps(-gamma) * zeta_24^6 (principal branch flip)
    Mat2 m{-g.a, -g.b, -g.c, -g.d};
    return (eta_eps_exponent(m) + 6) % 24;
  }
  cpp_rat t = cpp_rat(g.a + g.d, g.c) - 12 * dedekind_sum(g.d, g.c) - 3;
  if (boost::multiprecision::denominator(t) != 1)
    throw std::logic_error("eta_eps_exponent: non-integer exponent");
  cpp_int n = boost::multiprecision::numerator(t) % 24;
  int r = (int)n;
  return ((r % 24) + 24) % 24;
}

}  // namespace etaq
