#pragma once

// 2x2 integer matrices and the decomposition used for expanding eta(delta z)
// at a cusp: (delta 0; 0 1) * gamma = gamma' * (A B; 0 D) with gamma' in
// SL2(Z), A = gcd(c, delta), D = delta / A, 0 <= B < D.

#include <ostream>
#include <stdexcept>

#include "etaq/numtheory.hpp"

namespace etaq {

struct Mat2 {
  i64 a = 1, b = 0, c = 0, d = 1;

  i64 det() const { return a * d - b * c; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }

  friend bool operator==(const Mat2&, const Mat2&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << '[' << m.a << ' ' << m.b << "; " << m.c << ' ' << m.d << ']';
  }
};

// gamma in SL2(Z) with lower-left entry c and lower-right d; completes to a
// full matrix. Requires gcd(c,d)=1.
inline Mat2 complete_to_sl2(i64 c, i64 d) {
  i64 x, y;
  i64 g = ext_gcd(c, d, x, y);
  if (g != 1 && g != -1) throw std::domain_error("complete_to_sl2: gcd(c,d) != 1");
  if (g == -1) {
    x = -x;
    y = -y;
  }
  // a*d - b*c = 1 with (a,b) = (y, -x)
  Mat2 m{y, -x, c, d};
  if (m.det() != 1) throw std::logic_error("complete_to_sl2: det != 1");
  return m;
}

struct UpperTri {
  Mat2 gamma_prime;  // in SL2(Z)
  i64 A, B, D;       // upper-triangular factor (A B; 0 D), 0 <= B < D
};

// Decompose (delta 0; 0 1) * gamma = gamma' * (A B; 0 D).
inline UpperTri decompose_delta_gamma(i64 delta, const Mat2& gamma) {
  if (gamma.det() != 1) throw std::domain_error("decompose: gamma not in SL2(Z)");
  i64 A = gcd_u64((u64)(gamma.c < 0 ? -gamma.c : gamma.c), (u64)delta);
  if (A == 0) A = delta;  // c == 0
  i64 D = delta / A;
  // Need B with delta | (A*d - B*c) where (c,d) is gamma's bottom row,
  // 0 <= B < D. Since gcd(c/A, D) = 1, B = (d * A) * inv(c) exists mod D.
  i64 c = gamma.c, d = gamma.d;
  i64 B;
  if (D == 1) {
    B = 0;
  } else {
    i64 cA = ((c / A) % D + D) % D;
    i64 inv = (i64)invmod((u64)cA, (u64)D);
    B = (i64)(((i128)((d % D + D) % D) * inv) % D);
  }
  Mat2 gp{gamma.a * D, gamma.b * A - gamma.a * B, c / A, (d * A - c * B) / delta};
  if (gp.det() != 1) throw std::logic_error("decompose: gamma' not in SL2(Z)");
  Mat2 left{delta, 0, 0, 1};
  Mat2 right{A, B, 0, D};
  if (!(left * gamma == gp * right)) throw std::logic_error("decompose: identity fails");
  return {gp, A, B, D};
}

}  // namespace etaq
