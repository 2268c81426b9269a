#pragma once
// Dense power-series passes over Z/m with byte/halfword/word storage.
//
// Everything here works on a flat coefficient table a[0..n) and applies one
// sparse factor at a time: multiplication by, or division by, a series
// 1 + sum_e c_e q^e with small integer coefficients c_e (pentagonal products
// and theta series have |c_e| <= 2).  Division is the in-place linear
// recurrence a[i] += sum_k sgn_k a[i - lag_k], solved with a cache-tiled
// divide-and-conquer so large tables (hundreds of millions of terms) stay at
// memory-bandwidth speed.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "etaq/eta_quotient.hpp"
#include "etaq/numtheory.hpp"

namespace etaq::dense {

// Sparse series tail: list of (exponent e > 0, coefficient c != 0), ascending
// in e; the implicit constant term is 1.
using Terms = std::vector<std::pair<i64, int>>;

// prod_{k>=1} (1 - q^{delta k}) - 1, truncated below exponent n (pentagonal
// number theorem).
inline Terms euler_terms(i64 delta, i64 n) {
  Terms t;
  for (i64 k = 1;; ++k) {
    i64 e1 = delta * (k * (3 * k - 1) / 2);
    if (e1 >= n) break;
    int c = (k & 1) ? -1 : 1;
    t.push_back({e1, c});
    i64 e2 = delta * (k * (3 * k + 1) / 2);
    if (e2 < n) t.push_back({e2, c});
  }
  return t;
}

// phi(-q) - 1 = sum_{k>=1} 2(-1)^k q^{k^2}; 1/phi(-q) generates
// overpartitions.
inline Terms theta_neg_terms(i64 n) {
  Terms t;
  for (i64 k = 1; k * k < n; ++k) t.push_back({k * k, (k & 1) ? -2 : 2});
  return t;
}

namespace detail {

// Flatten terms into unit-weight lag entries (one entry per unit of |c|),
// optionally negating every coefficient.  Order (hence ascending lags) is
// preserved.
inline void unit_lags(const Terms& terms, bool negate, std::vector<i64>& lags,
                      std::vector<int8_t>& sgn) {
  for (auto [e, c] : terms) {
    if (e <= 0 || c == 0) throw std::invalid_argument("series term must have e>0, c!=0");
    int8_t s = ((c > 0) != negate) ? int8_t(1) : int8_t(-1);
    for (int i = 0; i < (c > 0 ? c : -c); ++i) {
      lags.push_back(e);
      sgn.push_back(s);
    }
  }
}

template <typename T>
void check_modulus(uint32_t m) {
  if (m < 2) throw std::invalid_argument("modulus must be >= 2");
  // Residue sums below use one conditional subtraction, so 2(m-1) must fit T.
  if ((u64)(m - 1) > ((u64(1) << (8 * sizeof(T) - 1)) - 1))
    throw std::invalid_argument("modulus too large for table element type");
}

// Solves a[i] = rhs[i] + sum_k sgn_k a[i - lag_k] in place (rhs arrives in a),
// i.e. divides a by 1 - sum_k sgn_k q^{lag_k}.  Lags must be ascending.
template <typename T>
struct SparseSolver {
  const i64* lags;
  const int8_t* sgn;
  size_t nlags;
  T m;  // element-width so the hot loops stay vectorized

  static constexpr i64 kBlock = i64(1) << 18;  // output tile in elements

  // Adds contributions of the finalized prefix a[0..h) into a[h..n).
  void cross(T* a, i64 h, i64 n) const {
    for (i64 t = h; t < n; t += kBlock) {
      i64 te = t + kBlock < n ? t + kBlock : n;
      for (size_t k = 0; k < nlags; ++k) {
        i64 L = lags[k];
        if (L >= te) break;
        i64 j0 = t > L ? t : L;
        i64 j1 = L + h < te ? L + h : te;  // source index j-L must stay < h
        if (j0 >= j1) continue;
        // Source [0,h) and destination [h,n) never overlap, so restrict is
        // sound and lets the element-wide loops vectorize.
        const T* __restrict__ s = a + (j0 - L);
        T* __restrict__ d = a + j0;
        i64 len = j1 - j0;
        const T mm = m;
        // Element-width arithmetic (2(m-1) fits T, enforced by check_modulus)
        // keeps these loops vectorizable.
        if (sgn[k] > 0) {
          for (i64 i = 0; i < len; ++i) {
            T v = (T)(d[i] + s[i]);
            d[i] = v >= mm ? (T)(v - mm) : v;
          }
        } else {
          for (i64 i = 0; i < len; ++i) {
            T v = (T)(d[i] + (T)(mm - s[i]));
            d[i] = v >= mm ? (T)(v - mm) : v;
          }
        }
      }
    }
  }

  void solve(T* a, i64 n) const {
    if (n <= 512) {
      for (i64 i = 1; i < n; ++i) {
        u64 acc = a[i];
        for (size_t k = 0; k < nlags && lags[k] <= i; ++k) {
          T x = a[i - lags[k]];
          acc += sgn[k] > 0 ? (u64)x : (u64)(m - x);
        }
        a[i] = (T)(acc % m);
      }
      return;
    }
    i64 h = n / 2;
    solve(a, h);
    cross(a, h, n);
    solve(a + h, n - h);
  }
};

}  // namespace detail

// In place: a <- a / (1 + sum_e c_e q^e) over Z/m.
template <typename T>
void divide_by_series(std::vector<T>& a, const Terms& terms, uint32_t m) {
  detail::check_modulus<T>(m);
  std::vector<i64> lags;
  std::vector<int8_t> sgn;
  detail::unit_lags(terms, /*negate=*/true, lags, sgn);
  detail::SparseSolver<T> s{lags.data(), sgn.data(), lags.size(), (T)m};
  s.solve(a.data(), (i64)a.size());
}

// In place: a <- a * (1 + sum_e c_e q^e) over Z/m, one streaming pass per unit
// of coefficient mass into a fresh buffer.
template <typename T>
void multiply_by_series(std::vector<T>& a, const Terms& terms, uint32_t m) {
  detail::check_modulus<T>(m);
  std::vector<i64> lags;
  std::vector<int8_t> sgn;
  detail::unit_lags(terms, /*negate=*/false, lags, sgn);
  i64 n = (i64)a.size();
  const T mt = (T)m;
  std::vector<T> y(a);  // constant term 1
  for (size_t k = 0; k < lags.size(); ++k) {
    i64 L = lags[k];
    if (L >= n) break;
    const T* __restrict__ s = a.data();
    T* __restrict__ d = y.data() + L;
    i64 len = n - L;
    if (sgn[k] > 0) {
      for (i64 i = 0; i < len; ++i) {
        T v = (T)(d[i] + s[i]);
        d[i] = v >= mt ? (T)(v - mt) : v;
      }
    } else {
      for (i64 i = 0; i < len; ++i) {
        T v = (T)(d[i] + (T)(mt - s[i]));
        d[i] = v >= mt ? (T)(v - mt) : v;
      }
    }
  }
  a.swap(y);
}

// Dense table of prod_delta (prod_k (1 - q^{delta k}))^{r_delta} mod m to
// length len; entry t is the coefficient of q^{E+t} of the eta-quotient,
// E = sum r_delta delta / 24.
template <typename T>
std::vector<T> dense_eta_table(const EtaQuotient& X, uint32_t m, i64 len) {
  detail::check_modulus<T>(m);
  if (len <= 0) throw std::invalid_argument("table length must be positive");
  std::vector<T> a(len, T(0));
  a[0] = T(1 % m);
  for (auto [delta, r] : X.factors) {
    Terms t = euler_terms(delta, len);
    for (i64 i = 0; i < r; ++i) multiply_by_series(a, t, m);
    for (i64 i = 0; i > r; --i) divide_by_series(a, t, m);
  }
  return a;
}

}  // namespace etaq::dense
