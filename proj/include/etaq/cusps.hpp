#pragma once

// Cusps of Gamma_0(N): representatives a/c with c | N and a mod gcd(c, N/c),
// the width h_s = N/gcd(c^2, N), and the scaling matrix gamma_s with
// gamma_s * infinity = a/c.

#include <stdexcept>
#include <string>
#include <vector>

#include "etaq/matrix2.hpp"
#include "etaq/numtheory.hpp"

namespace etaq {

struct Cusp {
  i64 a = 1, c = 0;  // the point a/c; c = 0 encodes infinity
  i64 N = 1;
  i64 width = 1;  // h_s

  bool is_infinity() const { return c == 0; }

  std::string str() const {
    if (c == 0) return "oo";
    return std::to_string(a) + "/" + std::to_string(c);
  }
};

inline i64 cusp_width(i64 N, i64 c) {
  if (c == 0) return 1;
  i64 c2 = (i64)((i128)c * c % N);
  i64 g = c2 == 0 ? N : (i64)gcd_u64((u64)N, (u64)c2);
  return N / g;
}

inline Cusp make_cusp(i64 N, i64 a, i64 c) {
  if (c < 0) {
    a = -a;
    c = -c;
  }
  if (std::gcd(a, c) != 1 && !(c == 0 && (a == 1 || a == -1)))
    throw std::invalid_argument("cusp: gcd(a,c) != 1");
  return Cusp{c == 0 ? 1 : a, c, N, cusp_width(N, c)};
}

// gamma_s in SL2(Z) with first column (a, c), i.e. gamma_s * infinity = a/c.
// For infinity the identity is used.
inline Mat2 cusp_gamma(const Cusp& s) {
  if (s.is_infinity()) return Mat2{1, 0, 0, 1};
  i64 x, y;
  i64 g = ext_gcd(s.a, s.c, x, y);
  if (g == -1) {
    x = -x;
    y = -y;
  } else if (g != 1) {
    throw std::logic_error("cusp_gamma: gcd != 1");
  }
  // a*x + c*y = 1; gamma = (a -y; c x) has det a*x + c*y = 1
  return Mat2{s.a, -y, s.c, x};
}

// One representative per Gamma_0(N)-class: for each c | N, phi(gcd(c, N/c))
// values of a mod gcd(c, N/c), shifted by multiples of the gcd to make
// gcd(a, c) = 1. Ordered by (c, a) for determinism. The class of infinity
// appears as c = N (1/N is equivalent to infinity).
inline std::vector<Cusp> cusp_representatives(i64 N) {
  if (N < 1) throw std::invalid_argument("cusp_representatives: N < 1");
  std::vector<Cusp> out;
  for (i64 c = 1; c <= N; ++c) {
    if (N % c) continue;
    i64 g = (i64)gcd_u64((u64)c, (u64)(N / c));
    for (i64 a0 = 1; a0 <= g; ++a0) {
      if (std::gcd(a0, g) != 1) continue;
      i64 a = a0;
      while (std::gcd(a, c) != 1) a += g;
      out.push_back(make_cusp(N, a, c));
    }
  }
  return out;
}

// Number of cusps, Sum_{c|N} phi(gcd(c, N/c)).
inline i64 cusp_count(i64 N) {
  i64 n = 0;
  for (i64 c = 1; c <= N; ++c)
    if (N % c == 0) n += (i64)euler_phi((u64)gcd_u64((u64)c, (u64)(N / c)));
  return n;
}

}  // namespace etaq
