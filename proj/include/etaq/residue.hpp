#pragma once

// Coefficient rings for q-series: exact integers (cpp_int) and Z/m with a
// runtime modulus. Rings are small stateful objects passed to QSeries; the
// interface is the handful of methods used there.

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <stdexcept>
#include <string>

#include "etaq/numtheory.hpp"

namespace etaq {

using boost::multiprecision::cpp_int;

struct IntRing {
  using value = cpp_int;
  value zero() const { return 0; }
  value one() const { return 1; }
  value from_int(i64 x) const { return x; }
  value add(const value& a, const value& b) const { return a + b; }
  value sub(const value& a, const value& b) const { return a - b; }
  value mul(const value& a, const value& b) const { return a * b; }
  value neg(const value& a) const { return -a; }
  value inv(const value& a) const {
    if (a == 1) return 1;
    if (a == -1) return -1;
    throw std::domain_error("IntRing: non-unit leading coefficient");
  }
  bool is_zero(const value& a) const { return a == 0; }
  bool eq(const value& a, const value& b) const { return a == b; }
  std::string to_string(const value& a) const { return a.str(); }
};

struct ModRing {
  u64 m = 2;
  using value = u64;
  explicit ModRing(u64 mod = 2) : m(mod) {
    if (m < 2) throw std::domain_error("ModRing: modulus < 2");
  }
  value zero() const { return 0; }
  value one() const { return 1 % m; }
  value from_int(i64 x) const {
    i64 r = x % (i64)m;
    if (r < 0) r += (i64)m;
    return (u64)r;
  }
  value from_cpp_int(const cpp_int& x) const {
    cpp_int r = x % m;
    if (r < 0) r += m;
    return (u64)r;
  }
  value add(value a, value b) const {
    u64 s = a + b;
    return s >= m ? s - m : s;
  }
  value sub(value a, value b) const { return a >= b ? a - b : a + m - b; }
  value mul(value a, value b) const { return mulmod(a, b, m); }
  value neg(value a) const { return a ? m - a : 0; }
  value inv(value a) const { return invmod(a, m); }
  bool is_zero(value a) const { return a == 0; }
  bool eq(value a, value b) const { return a == b; }
  std::string to_string(value a) const { return std::to_string(a); }
};

}  // namespace etaq
