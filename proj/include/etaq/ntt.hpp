#pragma once

// Number-theoretic transform convolution for u64 coefficients modulo an
// arbitrary m < 2^63. Works over one or two fixed NTT-friendly primes:
// a single prime when (m-1)^2 * n fits below it, otherwise both primes
// followed by CRT in 128-bit.

#include <stdexcept>
#include <vector>

#include "etaq/numtheory.hpp"

namespace etaq {
namespace ntt {

// p = c * 2^k + 1 primes with large power-of-two part and known generators.
constexpr u64 P1 = 4179340454199820289ull;  // 29 * 2^57 + 1, generator 3
constexpr u64 P2 = 1945555039024054273ull;  // 27 * 2^56 + 1, generator 5
constexpr u64 G1 = 3, G2 = 5;

inline void transform(std::vector<u64>& a, bool inverse, u64 p, u64 g) {
  size_t n = a.size();
  if (n == 0 || (n & (n - 1))) throw std::domain_error("ntt: size not a power of two");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    u64 w = powmod(g, (p - 1) / len, p);
    if (inverse) w = invmod(w, p);
    for (size_t i = 0; i < n; i += len) {
      u64 wn = 1;
      for (size_t k = 0; k < len / 2; ++k) {
        u64 u = a[i + k], v = mulmod(a[i + k + len / 2], wn, p);
        a[i + k] = u + v >= p ? u + v - p : u + v;
        a[i + k + len / 2] = u >= v ? u - v : u + p - v;
        wn = mulmod(wn, w, p);
      }
    }
  }
  if (inverse) {
    u64 ninv = invmod((u64)n, p);
    for (auto& x : a) x = mulmod(x, ninv, p);
  }
}

inline std::vector<u64> convolve_prime(const std::vector<u64>& a, const std::vector<u64>& b,
                                       u64 p, u64 g) {
  size_t rlen = a.size() + b.size() - 1;
  size_t n = 1;
  while (n < rlen) n <<= 1;
  std::vector<u64> fa(n, 0), fb(n, 0);
  for (size_t i = 0; i < a.size(); ++i) fa[i] = a[i] % p;
  for (size_t i = 0; i < b.size(); ++i) fb[i] = b[i] % p;
  transform(fa, false, p, g);
  transform(fb, false, p, g);
  for (size_t i = 0; i < n; ++i) fa[i] = mulmod(fa[i], fb[i], p);
  transform(fa, true, p, g);
  fa.resize(rlen);
  return fa;
}

// Convolution of residue vectors mod m. Exact as long as the true integer
// coefficients (each < n * (m-1)^2) are recovered, which one prime handles
// when n*(m-1)^2 < P1 and two primes handle whenever n*(m-1)^2 < P1*P2.
inline std::vector<u64> convolve_mod(const std::vector<u64>& a, const std::vector<u64>& b,
                                     u64 m) {
  if (a.empty() || b.empty()) return {};
  size_t n = std::min(a.size(), b.size());
  // exactness bound: n * (m-1)^2 must stay below P1*P2
  if (m > 1) {
    u128 cap = (u128)P1 * P2;
    if ((u128)(m - 1) * (m - 1) > cap / n)
      throw std::domain_error("ntt::convolve_mod: modulus too large for exact CRT");
  }
  bool single = false;
  if (m - 1 < (1ull << 31)) {
    u128 bound = (u128)(m - 1) * (m - 1) * n;
    single = bound < P1;
  }
  auto r1 = convolve_prime(a, b, P1, G1);
  if (single) {
    for (auto& x : r1) x %= m;
    return r1;
  }
  auto r2 = convolve_prime(a, b, P2, G2);
  // CRT: x = r1 + P1 * ((r2 - r1) * inv(P1) mod P2), x < P1*P2 ~ 2^123
  const u64 p1_inv_p2 = invmod(P1 % P2, P2);
  std::vector<u64> out(r1.size());
  for (size_t i = 0; i < r1.size(); ++i) {
    u64 d = r2[i] >= r1[i] % P2 ? r2[i] - r1[i] % P2 : r2[i] + P2 - r1[i] % P2;
    u64 t = mulmod(d, p1_inv_p2, P2);
    u128 x = (u128)t * P1 + r1[i];
    out[i] = (u64)(x % m);
  }
  return out;
}

}  // namespace ntt
}  // namespace etaq
