#pragma once

// Truncated q-expansions with fractional exponents over a coefficient ring.
//
// Exponents are exact rationals stored as scaled integers: a series carries a
// denominator `den` and a sorted sparse term list (e, c) meaning c * q^(e/den).
// `prec` is the exclusive bound on scaled exponents for which coefficients are
// known; everything below prec and absent is exactly zero (up to lazy zeros of
// the coefficient ring, which normalize() clears).

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "etaq/ntt.hpp"
#include "etaq/numtheory.hpp"
#include "etaq/rational.hpp"
#include "etaq/residue.hpp"

namespace etaq {

template <class Ring>
class QSeries {
 public:
  using value = typename Ring::value;

  Ring R;
  i64 den = 1;
  i64 prec = 0;
  std::vector<std::pair<i64, value>> t;

  QSeries() = default;
  QSeries(Ring r, i64 d, i64 p) : R(r), den(d), prec(p) {
    if (d <= 0) throw std::domain_error("QSeries: denominator <= 0");
  }

  static QSeries one(Ring r, i64 d, i64 p) {
    QSeries s(r, d, p);
    if (p > 0) s.t.emplace_back(0, r.one());
    return s;
  }
  static QSeries monomial(Ring r, i64 d, i64 p, i64 e, value c) {
    QSeries s(r, d, p);
    if (e < p) s.t.emplace_back(e, std::move(c));
    return s;
  }

  Rat precision() const { return Rat(prec, den); }
  bool empty_terms() const { return t.empty(); }

  void set_coeff(i64 e, value c) {
    auto it = std::lower_bound(t.begin(), t.end(), e,
                               [](const auto& a, i64 x) { return a.first < x; });
    if (it != t.end() && it->first == e)
      it->second = std::move(c);
    else
      t.insert(it, {e, std::move(c)});
  }

  value coeff(const Rat& e) const {
    if (e.den != 0 && den % e.den == 0) {
      i64 es = e.num * (den / e.den);
      if (es >= prec) throw std::domain_error("QSeries::coeff: beyond precision");
      auto it = std::lower_bound(t.begin(), t.end(), es,
                                 [](const auto& a, i64 x) { return a.first < x; });
      if (it != t.end() && it->first == es) return it->second;
    } else {
      if ((i128)e.num * den >= (i128)prec * e.den)
        throw std::domain_error("QSeries::coeff: beyond precision");
    }
    return R.zero();
  }

  // Drop coefficients that are exact zeros of the ring.
  void normalize() {
    std::vector<std::pair<i64, value>> out;
    out.reserve(t.size());
    for (auto& p : t)
      if (!R.is_zero(p.second)) out.push_back(std::move(p));
    t = std::move(out);
  }

  // Leading (lowest-exponent) term with a provably nonzero coefficient.
  std::optional<std::pair<Rat, value>> lead() const {
    for (auto& [e, c] : t)
      if (!R.is_zero(c)) return std::make_pair(Rat(e, den), c);
    return std::nullopt;
  }

  QSeries rescaled(i64 newden) const {
    if (newden % den) throw std::domain_error("QSeries::rescaled: not a multiple");
    i64 f = newden / den;
    QSeries s(R, newden, sat_mul(prec, f));
    s.t.reserve(t.size());
    for (auto& [e, c] : t) s.t.emplace_back(e * f, c);
    return s;
  }

  QSeries truncated(i64 newprec) const {
    QSeries s(R, den, std::min(prec, newprec));
    for (auto& [e, c] : t)
      if (e < s.prec) s.t.emplace_back(e, c);
    return s;
  }

  // Multiply by c * q^(sn/sd).
  QSeries shifted(i64 sn, i64 sd = 1) const {
    i64 d2 = lcm_i64(den, sd);
    QSeries s = rescaled(d2);
    i64 off = sn * (d2 / sd);
    for (auto& p : s.t) p.first += off;
    s.prec = sat_add(s.prec, off);
    return s;
  }

  QSeries scaled(const value& c) const {
    QSeries s(R, den, prec);
    s.t.reserve(t.size());
    for (auto& [e, v] : t) s.t.emplace_back(e, R.mul(v, c));
    return s;
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b) { return combine(a, b, false); }
  friend QSeries operator-(const QSeries& a, const QSeries& b) { return combine(a, b, true); }
  QSeries operator-() const {
    QSeries s(R, den, prec);
    s.t.reserve(t.size());
    for (auto& [e, c] : t) s.t.emplace_back(e, R.neg(c));
    return s;
  }

  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    i64 d = lcm_i64(a.den, b.den);
    QSeries x = a.rescaled(d), y = b.rescaled(d);
    i64 lx = x.t.empty() ? x.prec : x.t.front().first;
    i64 ly = y.t.empty() ? y.prec : y.t.front().first;
    i64 p = std::min(sat_add(lx, y.prec), sat_add(ly, x.prec));
    QSeries s(x.R, d, p);
    s.t = mul_terms(x.R, x.t, y.t, p);
    return s;
  }

  // Multiplicative inverse; leading coefficient must be a unit of the ring.
  // Newton iteration, so the ModRing dense path gets NTT multiplication.
  QSeries inverse() const {
    auto l = lead();
    if (!l) throw std::domain_error("QSeries::inverse: zero series");
    i64 e0 = l->first.num * (den / l->first.den);
    i64 P = prec - e0;  // relative precision
    if (P <= 0) throw std::domain_error("QSeries::inverse: no relative precision");
    // F = q^(-e0) * this, constant term c0.
    std::vector<std::pair<i64, value>> F;
    F.reserve(t.size());
    for (auto& [e, c] : t)
      if (e >= e0 && !(e == e0 && R.is_zero(c))) F.emplace_back(e - e0, c);
    std::vector<std::pair<i64, value>> g{{0, R.inv(l->second)}};
    for (i64 p = 1; p < P;) {
      i64 p2 = std::min(2 * p, P);
      // g <- g*(2 - F*g) mod q^p2
      std::vector<std::pair<i64, value>> Ft;
      for (auto& [e, c] : F) {
        if (e >= p2) break;
        Ft.emplace_back(e, c);
      }
      auto fg = mul_terms(R, Ft, g, p2);
      // 2 - fg
      std::vector<std::pair<i64, value>> two_minus;
      two_minus.reserve(fg.size() + 1);
      bool has0 = false;
      for (auto& [e, c] : fg) {
        if (e == 0) {
          two_minus.emplace_back(0, R.sub(R.add(R.one(), R.one()), c));
          has0 = true;
        } else {
          two_minus.emplace_back(e, R.neg(c));
        }
      }
      if (!has0) two_minus.insert(two_minus.begin(), {0, R.add(R.one(), R.one())});
      g = mul_terms(R, g, two_minus, p2);
      p = p2;
    }
    QSeries s(R, den, P - e0);
    s.t.reserve(g.size());
    for (auto& [e, c] : g)
      if (!R.is_zero(c)) s.t.emplace_back(e - e0, c);
    return s;
  }

  QSeries pow(i64 k) const {
    if (k == 0) {
      // precision of f^0 given f known to relative precision P
      i64 e0 = t.empty() ? prec : t.front().first;
      return one(R, den, prec - e0);
    }
    if (k < 0) return inverse().pow(-k);
    QSeries base = *this, acc = base;
    k -= 1;
    while (k > 0) {
      if (k & 1) acc = acc * base;
      if (k >>= 1) base = base * base;
    }
    return acc;
  }

  std::string str(const char* var = "q") const {
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : t) {
      if (R.is_zero(c)) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << R.to_string(c) << ")";
      if (e != 0) {
        os << "*" << var << "^";
        Rat r(e, den);
        if (r.den == 1)
          os << r.num;
        else
          os << "(" << r << ")";
      }
    }
    if (first) os << "0";
    os << " + O(" << var << "^(" << Rat(prec, den) << "))";
    return os.str();
  }

 private:
  static i64 sat_add(i64 a, i64 b) {
    i128 s = (i128)a + b;
    const i64 cap = (i64)4e18;
    if (s > cap) return cap;
    if (s < -cap) return -cap;
    return (i64)s;
  }
  static i64 sat_mul(i64 a, i64 f) {
    i128 s = (i128)a * f;
    const i64 cap = (i64)4e18;
    if (s > cap) return cap;
    if (s < -cap) return -cap;
    return (i64)s;
  }

  static QSeries combine(const QSeries& a, const QSeries& b, bool sub) {
    i64 d = lcm_i64(a.den, b.den);
    QSeries x = a.rescaled(d), y = b.rescaled(d);
    QSeries s(x.R, d, std::min(x.prec, y.prec));
    size_t i = 0, j = 0;
    while (i < x.t.size() || j < y.t.size()) {
      i64 ex = i < x.t.size() ? x.t[i].first : s.prec;
      i64 ey = j < y.t.size() ? y.t[j].first : s.prec;
      i64 e = std::min(ex, ey);
      if (e >= s.prec) break;
      value c = s.R.zero();
      if (ex == e) c = x.t[i++].second;
      if (ey == e) c = sub ? s.R.sub(c, y.t[j++].second) : s.R.add(c, y.t[j++].second);
      if (!s.R.is_zero(c)) s.t.emplace_back(e, std::move(c));
    }
    return s;
  }

  // Sparse product of sorted term lists truncated below scaled exponent p.
  // For ModRing with large dense operands this switches to NTT convolution.
  static std::vector<std::pair<i64, value>> mul_terms(
      const Ring& R, const std::vector<std::pair<i64, value>>& a,
      const std::vector<std::pair<i64, value>>& b, i64 p) {
    if (a.empty() || b.empty()) return {};
    if constexpr (std::is_same_v<Ring, ModRing>) {
      if (a.size() >= 512 && b.size() >= 512) return mul_dense_mod(R, a, b, p);
    }
    std::map<i64, value> acc;
    for (auto& [ea, ca] : a) {
      if (ea + b.front().first >= p) break;
      for (auto& [eb, cb] : b) {
        i64 e = ea + eb;
        if (e >= p) break;
        auto it = acc.find(e);
        if (it == acc.end())
          acc.emplace(e, R.mul(ca, cb));
        else
          it->second = R.add(it->second, R.mul(ca, cb));
      }
    }
    std::vector<std::pair<i64, value>> out;
    out.reserve(acc.size());
    for (auto& [e, c] : acc)
      if (!R.is_zero(c)) out.emplace_back(e, std::move(c));
    return out;
  }

  static std::vector<std::pair<i64, u64>> mul_dense_mod(
      const ModRing& R, const std::vector<std::pair<i64, u64>>& a,
      const std::vector<std::pair<i64, u64>>& b, i64 p) {
    i64 la = a.front().first, lb = b.front().first;
    i64 na = std::min(a.back().first - la + 1, p - lb - la);
    i64 nb = std::min(b.back().first - lb + 1, p - la - lb);
    if (na <= 0 || nb <= 0) return {};
    std::vector<u64> da((size_t)na, 0), db((size_t)nb, 0);
    for (auto& [e, c] : a)
      if (e - la < na) da[(size_t)(e - la)] = c;
    for (auto& [e, c] : b)
      if (e - lb < nb) db[(size_t)(e - lb)] = c;
    auto dc = ntt::convolve_mod(da, db, R.m);
    std::vector<std::pair<i64, u64>> out;
    for (size_t i = 0; i < dc.size(); ++i) {
      i64 e = la + lb + (i64)i;
      if (e >= p) break;
      if (dc[i]) out.emplace_back(e, dc[i]);
    }
    return out;
  }
};

// Euler product prod_{n>=1} (1 - q^(step*n/den)) as a sparse series via the
// pentagonal number theorem, truncated below prec/den.
template <class Ring>
QSeries<Ring> euler_product(Ring R, i64 step, i64 den, i64 prec) {
  QSeries<Ring> s(R, den, prec);
  std::map<i64, typename Ring::value> acc;
  acc.emplace(0, R.one());
  for (i64 k = 1;; ++k) {
    i64 e1 = step * (k * (3 * k - 1) / 2);
    i64 e2 = step * (k * (3 * k + 1) / 2);
    if (e1 >= prec && e2 >= prec) break;
    auto c = (k & 1) ? R.neg(R.one()) : R.one();
    if (e1 < prec) acc.emplace(e1, c);
    if (e2 < prec) acc.emplace(e2, c);
  }
  s.t.assign(acc.begin(), acc.end());
  return s;
}

// eta(delta*z) truncated below q-exponent prec24/24: q^(delta/24) * Euler.
template <class Ring>
QSeries<Ring> eta_series(Ring R, i64 delta, i64 prec24) {
  return euler_product(R, 24 * delta, 24, prec24 - delta).shifted(delta, 24);
}

}  // namespace etaq
