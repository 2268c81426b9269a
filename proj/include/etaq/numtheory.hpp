#pragma once

// Elementary integer arithmetic used everywhere else: gcd/extended gcd,
// overflow-safe modular arithmetic, deterministic Miller-Rabin below 2^64,
// the extended Kronecker symbol, and small-number factorization.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace etaq {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// ax + by = gcd(a, b), gcd >= 0
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  i64 x1, y1;
  i64 g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline u64 invmod(u64 a, u64 m) {
  i64 x, y;
  i64 g = ext_gcd((i64)(a % m), (i64)m, x, y);
  if (g != 1) throw std::domain_error("invmod: not a unit");
  i64 r = x % (i64)m;
  if (r < 0) r += (i64)m;
  return (u64)r;
}

// Deterministic Miller-Rabin, valid for all n < 2^64.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Extended Kronecker symbol (a/n), defined for all integers.
inline int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (n & 1) == 0) return 0;
  int v = 0;
  while ((n & 1) == 0) n >>= 1, ++v;
  // (a/2)^v
  static const int two_table[8] = {0, 1, 0, -1, 0, -1, 0, 1};  // (a/2) by a mod 8
  int r = 1;
  if (v & 1) r = two_table[((a % 8) + 8) % 8];
  if (n < 0) {
    n = -n;
    if (a < 0) r = -r;
  }
  // now n odd, positive; Jacobi loop
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      i64 nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) r = -r;
    }
    std::swap(a, n);
    if ((a % 4) == 3 && (n % 4) == 3) r = -r;
    a %= n;
  }
  return n == 1 ? r : 0;
}

// Kronecker symbol of a rational argument u/v over odd-ish n: symbols depend
// only on the square class, so (u/v / n) := (u*v / n).
inline int kronecker_rational(i64 u, i64 v, i64 n) { return kronecker(u * v, n); }

// Trial-division factorization; fine for the level-sized numbers here.
inline std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> f;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) n /= p, ++e;
      f.push_back({p, e});
    }
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

inline u64 euler_phi(u64 n) {
  u64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

// Squarefree part, sign preserved. squarefree_part(48) = 3, squarefree_part(-8) = -2.
inline i64 squarefree_part(i64 n) {
  if (n == 0) return 0;
  i64 sign = n < 0 ? -1 : 1;
  u64 m = (u64)(n < 0 ? -n : n);
  i64 r = 1;
  for (auto [p, e] : factorize(m))
    if (e & 1) r *= (i64)p;
  return sign * r;
}

inline u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

inline i64 lcm_i64(i64 a, i64 b) { return std::lcm(a, b); }

}  // namespace etaq
