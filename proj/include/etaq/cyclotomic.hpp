#pragma once

// Exact arithmetic in Q(zeta_M), zeta_M = exp(2 pi i / M).
//
// Elements are sparse sums c_e * zeta^e with e in [0, M) and rational c_e.
// Addition and multiplication just work on exponents mod M; equality / zero
// tests reduce modulo the cyclotomic polynomial Phi_M using a per-conductor
// table of x^e mod Phi_M (computed once and cached). This keeps the common
// path (building big product expansions) cheap and makes zero-testing exact.

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "etaq/numtheory.hpp"

namespace etaq {

using boost::multiprecision::cpp_int;
using cpp_rat = boost::multiprecision::cpp_rational;

namespace detail {

// Phi_M(x) = prod_{d | M} (x^d - 1)^{mu(M/d)}, built by repeated exact
// multiplication / division by (x^d - 1).
inline std::vector<cpp_int> cyclotomic_poly(i64 M) {
  auto mu = [](i64 n) -> int {
    int m = 1;
    for (i64 p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
      }
    if (n > 1) m = -m;
    return m;
  };
  std::vector<cpp_int> num{1};  // running product of (x^d - 1)^{+1} factors
  std::vector<i64> divs;        // divisors d with mu(M/d) == -1, divided later
  for (i64 d = 1; d <= M; ++d) {
    if (M % d) continue;
    int m = mu(M / d);
    if (m == 1) {
      // num *= x^d - 1
      std::vector<cpp_int> r(num.size() + d, 0);
      for (size_t i = 0; i < num.size(); ++i) {
        r[i + d] += num[i];
        r[i] -= num[i];
      }
      num = std::move(r);
    } else if (m == -1) {
      divs.push_back(d);
    }
  }
  for (i64 d : divs) {
    // exact division num /= (x^d - 1), top down
    std::vector<cpp_int> q(num.size() - d, 0);
    for (size_t i = num.size(); i-- > (size_t)d;) {
      cpp_int c = num[i];
      if (c == 0) continue;
      q[i - d] = c;
      num[i] = 0;
      num[i - d] += c;
    }
    for (auto& c : num)
      if (c != 0) throw std::logic_error("cyclotomic_poly: inexact division");
    num = std::move(q);
  }
  return num;  // monic, degree phi(M)
}

struct CycloContext {
  i64 M;
  i64 deg;                                   // phi(M)
  std::vector<std::vector<cpp_int>> redtab;  // x^{deg+i} mod Phi_M, i in [0, M-deg)

  explicit CycloContext(i64 M_) : M(M_) {
    auto phi_poly = cyclotomic_poly(M);
    deg = (i64)phi_poly.size() - 1;
    redtab.resize((size_t)(M - deg));
    // x^deg mod Phi = -(lower part of Phi)
    std::vector<cpp_int> cur((size_t)deg);
    for (i64 i = 0; i < deg; ++i) cur[(size_t)i] = -phi_poly[(size_t)i];
    redtab[0] = cur;
    for (i64 e = deg + 1; e < M; ++e) {
      std::vector<cpp_int> nxt((size_t)deg, 0);
      cpp_int top = cur[(size_t)(deg - 1)];
      for (i64 i = deg - 1; i > 0; --i) nxt[(size_t)i] = cur[(size_t)(i - 1)];
      if (top != 0)
        for (i64 i = 0; i < deg; ++i) nxt[(size_t)i] += top * redtab[0][(size_t)i];
      redtab[(size_t)(e - deg)] = nxt;
      cur = std::move(nxt);
    }
  }
};

inline std::shared_ptr<const CycloContext> cyclo_context(i64 M) {
  static std::mutex mtx;
  static std::map<i64, std::shared_ptr<const CycloContext>> cache;
  std::lock_guard<std::mutex> lk(mtx);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  auto ctx = std::make_shared<const CycloContext>(M);
  cache.emplace(M, ctx);
  return ctx;
}

}  // namespace detail

class Cyclotomic {
 public:
  Cyclotomic() : M_(1) {}
  explicit Cyclotomic(i64 M) : M_(M) {
    if (M < 1) throw std::domain_error("Cyclotomic: conductor < 1");
  }
  Cyclotomic(i64 M, const cpp_rat& c, i64 e = 0) : Cyclotomic(M) {
    if (c != 0) terms_[mod(e)] = c;
  }

  i64 conductor() const { return M_; }
  const std::map<i64, cpp_rat>& terms() const { return terms_; }

  static Cyclotomic root(i64 M, i64 e) { return Cyclotomic(M, 1, e); }

  // Reinterpret in a larger conductor M2 (M | M2).
  Cyclotomic lift(i64 M2) const {
    if (M2 % M_) throw std::domain_error("Cyclotomic::lift: conductor mismatch");
    Cyclotomic r(M2);
    i64 f = M2 / M_;
    for (auto& [e, c] : terms_) r.terms_[e * f] = c;
    return r;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    check(o);
    for (auto& [e, c] : o.terms_) addterm(e, c);
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    check(o);
    for (auto& [e, c] : o.terms_) addterm(e, -c);
    return *this;
  }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  Cyclotomic operator-() const {
    Cyclotomic r(M_);
    for (auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    a.check(b);
    Cyclotomic r(a.M_);
    for (auto& [e1, c1] : a.terms_)
      for (auto& [e2, c2] : b.terms_) r.addterm(e1 + e2, c1 * c2);
    return r;
  }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  // Inverse of a monomial c * zeta^e; used for leading coefficients of eta
  // products, which are always of this form.
  Cyclotomic monomial_inverse() const {
    if (terms_.size() != 1)
      throw std::domain_error("Cyclotomic: inverse only for monomials");
    auto& [e, c] = *terms_.begin();
    return Cyclotomic(M_, cpp_rat(1) / c, M_ - e);
  }

  bool is_zero() const {
    if (terms_.empty()) return true;
    auto ctx = detail::cyclo_context(M_);
    std::vector<cpp_rat> red((size_t)ctx->deg, 0);
    for (auto& [e, c] : terms_) {
      if (e < ctx->deg) {
        red[(size_t)e] += c;
      } else {
        auto& row = ctx->redtab[(size_t)(e - ctx->deg)];
        for (i64 i = 0; i < ctx->deg; ++i)
          if (row[(size_t)i] != 0) red[(size_t)i] += c * cpp_rat(row[(size_t)i]);
      }
    }
    for (auto& c : red)
      if (c != 0) return false;
    return true;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.M_ == b.M_) return (a - b).is_zero();
    i64 L = lcm_i64(a.M_, b.M_);
    return (a.lift(L) - b.lift(L)).is_zero();
  }

  std::complex<double> eval() const {
    std::complex<double> s = 0;
    const double tau = 6.283185307179586476925286766559;
    for (auto& [e, c] : terms_) {
      double x = (double)c.convert_to<double>();
      s += x * std::exp(std::complex<double>(0, tau * (double)e / (double)M_));
    }
    return s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms_) {
      cpp_rat cc = c;
      if (!first) {
        os << (cc < 0 ? " - " : " + ");
        if (cc < 0) cc = -cc;
      }
      first = false;
      if (e == 0) {
        os << cc;
      } else {
        if (cc != 1) os << cc << "*";
        os << "w" << M_ << "^" << e;
      }
    }
    return os.str();
  }

 private:
  i64 mod(i64 e) const { return ((e % M_) + M_) % M_; }
  void check(const Cyclotomic& o) const {
    if (M_ != o.M_) throw std::domain_error("Cyclotomic: conductor mismatch");
  }
  void addterm(i64 e, const cpp_rat& c) {
    if (c == 0) return;
    i64 k = mod(e);
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  i64 M_;
  std::map<i64, cpp_rat> terms_;
};

// Ring adapter for QSeries.
struct CycloRing {
  i64 M = 1;
  using value = Cyclotomic;
  explicit CycloRing(i64 M_ = 1) : M(M_) {}
  value zero() const { return Cyclotomic(M); }
  value one() const { return Cyclotomic(M, 1); }
  value from_int(i64 x) const { return Cyclotomic(M, x); }
  value add(const value& a, const value& b) const { return a + b; }
  value sub(const value& a, const value& b) const { return a - b; }
  value mul(const value& a, const value& b) const { return a * b; }
  value neg(const value& a) const { return -a; }
  value inv(const value& a) const { return a.monomial_inverse(); }
  bool is_zero(const value& a) const { return a.is_zero(); }
  bool eq(const value& a, const value& b) const { return a == b; }
  std::string to_string(const value& a) const { return a.str(); }
};

}  // namespace etaq
