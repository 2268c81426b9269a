#pragma once

// Eta-quotients eta^X(z) = prod eta(delta z)^{r_delta} and their invariants:
// weight numerator k (weight k/2), level N, quadratic character (as a
// squarefree class for the Kronecker symbol) and the character order m.

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "etaq/numtheory.hpp"
#include "etaq/rational.hpp"

namespace etaq {

struct EtaQuotient {
  // sorted by delta, distinct deltas, r != 0
  std::vector<std::pair<i64, i64>> factors;

  i64 k() const {  // weight numerator: weight is k/2
    i64 s = 0;
    for (auto& [d, r] : factors) s += r;
    return s;
  }

  i64 sum_rdelta() const {
    i64 s = 0;
    for (auto& [d, r] : factors) s += r * d;
    return s;
  }

  bool holomorphic_weight_integral() const { return k() % 2 == 0; }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [d, r] : factors) {
      if (!first) os << ",";
      first = false;
      os << d << ":" << r;
    }
    return os.str();
  }
};

inline EtaQuotient parse_eta_quotient(const std::string& text) {
  EtaQuotient X;
  std::map<i64, i64> fac;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto pos = item.find(':');
    if (pos == std::string::npos)
      throw std::invalid_argument("eta-quotient: expected 'delta:r' in '" + item + "'");
    size_t used1 = 0, used2 = 0;
    i64 d, r;
    try {
      d = std::stoll(item.substr(0, pos), &used1);
      r = std::stoll(item.substr(pos + 1), &used2);
    } catch (const std::exception&) {
      throw std::invalid_argument("eta-quotient: malformed pair '" + item + "'");
    }
    if (used1 != pos || used2 != item.size() - pos - 1)
      throw std::invalid_argument("eta-quotient: malformed pair '" + item + "'");
    if (d <= 0) throw std::invalid_argument("eta-quotient: delta must be positive");
    if (r == 0) throw std::invalid_argument("eta-quotient: zero exponent for delta " +
                                            std::to_string(d));
    if (fac.count(d))
      throw std::invalid_argument("eta-quotient: duplicate delta " + std::to_string(d));
    fac[d] = r;
  }
  if (fac.empty()) throw std::invalid_argument("eta-quotient: empty");
  X.factors.assign(fac.begin(), fac.end());
  if (X.sum_rdelta() % 24 != 0)
    throw std::invalid_argument("eta-quotient: sum of r_delta*delta is not 0 mod 24");
  return X;
}

struct EtaInvariants {
  i64 k;                // weight numerator (weight k/2)
  i64 N;                // level
  i64 char_class;       // squarefree integer t: chi(d) = kronecker(t, d)
  int m;                // order of chi (1 or 2)
  bool half_integral;   // k odd
};

// Level: the smallest multiple of every delta (and of 4, when k is odd) such
// that N * sum(r_delta/delta) is divisible by 24. The character is
// chi(d) = (2s/d) for odd k and (4s/d) for even k, with s = prod delta^r;
// s may be a rational, handled through its square class.
inline EtaInvariants invariants(const EtaQuotient& X) {
  EtaInvariants inv;
  inv.k = X.k();
  inv.half_integral = (inv.k % 2) != 0;
  i64 base = inv.half_integral ? 4 : 1;
  for (auto& [d, r] : X.factors) base = lcm_i64(base, d);
  // need 24 | N * sum(r/delta); with N = base*t, find minimal t
  // sum(r/delta) = S/base exactly (base is a common multiple of the deltas)
  i64 S = 0;
  for (auto& [d, r] : X.factors) S += r * (base / d);
  // want 24 | base*t*S/base = t*S  =>  t = 24/gcd(24,S)
  i64 g = std::gcd((i64)24, S < 0 ? -S : S);
  inv.N = base * (24 / g);

  // square class of 2s or 4s: product of primes appearing to odd exponent
  std::map<i64, i64> ex;
  auto add_factor = [&](i64 n, i64 mult) {
    for (auto& [p, e] : factorize((u64)n)) ex[(i64)p] += (i64)e * mult;
  };
  if (inv.half_integral)
    add_factor(2, 1);
  // (even k: factor 4 is a square, contributes nothing)
  for (auto& [d, r] : X.factors)
    if (d > 1) add_factor(d, r);
  i64 cls = 1;
  for (auto& [p, e] : ex)
    if (((e % 2) + 2) % 2 == 1) cls *= p;
  inv.char_class = cls;
  inv.m = cls == 1 ? 1 : 2;
  return inv;
}

// Order of vanishing at the cusp a/c in the q_{h_s} variable (Ligozat):
//   ord_s = (h_s/24) * sum gcd(c,delta)^2 r_delta / delta,
// with infinity treated as c = N.
inline Rat ord_at_cusp_c(const EtaQuotient& X, i64 N, i64 c) {
  if (c == 0) c = N;  // infinity
  i64 c2modN = (i64)((i128)c * c % N);
  i64 g2 = c2modN == 0 ? N : (i64)gcd_u64((u64)N, (u64)c2modN);
  i64 hs = N / g2;
  Rat sum(0);
  for (auto& [d, r] : X.factors) {
    i64 gc = (i64)gcd_u64((u64)(c < 0 ? -c : c), (u64)d);
    sum = sum + Rat(gc * gc * r, d);
  }
  return Rat(hs, 24) * sum;
}

}  // namespace etaq
