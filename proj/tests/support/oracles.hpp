#pragma once

// Independent brute-force oracles used only by tests.

#include <complex>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "etaq/numtheory.hpp"

namespace testsupport {

using etaq::i64;
using etaq::u64;

// ---- coset enumeration over P^1(Z/N) ----
// Points (c:d) with gcd(c,d,N)=1 modulo unit scaling; their count equals
// mu_N = [SL2 : Gamma_0(N)], and the orbits under d -> d + n*c (and negation)
// correspond to the cusps of Gamma_0(N).

inline std::vector<std::pair<i64, i64>> p1_points(i64 N) {
  std::set<std::pair<i64, i64>> seen;
  std::vector<std::pair<i64, i64>> pts;
  std::vector<i64> units;
  for (i64 u = 0; u < N; ++u)
    if (std::gcd(u, N) == 1) units.push_back(u);
  for (i64 c = 0; c < N; ++c)
    for (i64 d = 0; d < N; ++d) {
      if (std::gcd(std::gcd(c, d), N) != 1) continue;
      std::pair<i64, i64> canon{N, N};
      for (i64 u : units) canon = std::min(canon, {u * c % N, u * d % N});
      if (seen.insert(canon).second) pts.push_back(canon);
    }
  return pts;
}

inline i64 mu_by_coset_enumeration(i64 N) { return (i64)p1_points(N).size(); }

inline i64 cusp_count_by_orbits(i64 N) {
  auto pts = p1_points(N);
  std::map<std::pair<i64, i64>, size_t> idx;
  std::vector<i64> units;
  for (i64 u = 0; u < N; ++u)
    if (std::gcd(u, N) == 1) units.push_back(u);
  auto canon = [&](i64 c, i64 d) {
    c = ((c % N) + N) % N;
    d = ((d % N) + N) % N;
    std::pair<i64, i64> best{N, N};
    for (i64 u : units) best = std::min(best, {u * c % N, u * d % N});
    return best;
  };
  for (size_t i = 0; i < pts.size(); ++i) idx[pts[i]] = i;
  // union-find over the T-action (c:d) -> (c : d + c)
  std::vector<size_t> par(pts.size());
  for (size_t i = 0; i < par.size(); ++i) par[i] = i;
  std::function<size_t(size_t)> find = [&](size_t x) {
    return par[x] == x ? x : par[x] = find(par[x]);
  };
  for (size_t i = 0; i < pts.size(); ++i) {
    auto [c, d] = pts[i];
    size_t jn = idx.at(canon(c, d + c));
    par[find(i)] = find(jn);
  }
  std::set<size_t> roots;
  for (size_t i = 0; i < pts.size(); ++i) roots.insert(find(i));
  return (i64)roots.size();
}

// ---- combinatorial enumerations ----

// partitions of n (exact, small n)
inline i64 partition_count(i64 n) {
  if (n < 0) return 0;
  std::vector<i64> p((size_t)n + 1, 0);
  p[0] = 1;
  for (i64 part = 1; part <= n; ++part)
    for (i64 s = part; s <= n; ++s) p[(size_t)s] += p[(size_t)(s - part)];
  return p[(size_t)n];
}

// overpartitions of n: final occurrence of each part may be overlined
inline i64 overpartition_count(i64 n) {
  if (n < 0) return 0;
  if (n == 0) return 1;
  // generating function prod (1+q^k)/(1-q^k)
  std::vector<i64> a((size_t)n + 1, 0);
  a[0] = 1;
  for (i64 k = 1; k <= n; ++k) {
    // multiply by (1+q^k)
    for (i64 s = n; s >= k; --s) a[(size_t)s] += a[(size_t)(s - k)];
    // divide ... easier: multiply by 1/(1-q^k) = forward prefix
    for (i64 s = k; s <= n; ++s) a[(size_t)s] += a[(size_t)(s - k)];
  }
  return a[(size_t)n];
}

// p_24(n): partitions with parts in 24 colors
inline i64 p24_count(i64 n) {
  if (n < 0) return 0;
  std::vector<i64> a((size_t)n + 1, 0);
  a[0] = 1;
  for (int color = 0; color < 24; ++color)
    for (i64 k = 1; k <= n; ++k)
      for (i64 s = k; s <= n; ++s) a[(size_t)s] += a[(size_t)(s - k)];
  return a[(size_t)n];
}

// B_3(n): triples of 3-core partitions summing to n, via the generating
// function prod (1-q^{3k})^9 / (1-q^k)^3
inline i64 b3_count(i64 n) {
  if (n < 0) return 0;
  std::vector<i64> a((size_t)n + 1, 0);
  a[0] = 1;
  for (int rep = 0; rep < 3; ++rep)
    for (i64 k = 1; k <= n; ++k)
      for (i64 s = k; s <= n; ++s) a[(size_t)s] += a[(size_t)(s - k)];
  for (int rep = 0; rep < 9; ++rep)
    for (i64 k = 3; k <= n; k += 3)
      for (i64 s = n; s >= k; --s) a[(size_t)s] -= a[(size_t)(s - k)];
  return a[(size_t)n];
}

// ---- numeric eta ----

inline std::complex<double> eta_numeric(std::complex<double> z) {
  const double tau = 6.283185307179586476925286766559;
  std::complex<double> q = std::exp(std::complex<double>(0, tau) * z);
  std::complex<double> s = 1;
  for (i64 k = 1; k <= 400; ++k) {
    double sg = (k & 1) ? -1.0 : 1.0;
    s += sg * (std::pow(q, (double)(k * (3 * k - 1) / 2)) +
               std::pow(q, (double)(k * (3 * k + 1) / 2)));
  }
  return std::exp(std::complex<double>(0, tau / 24.0) * z) * s;
}

}  // namespace testsupport
