#pragma once

// Small exact rational on int64, used for exponents, cusp orders and the
// Sturm/beta bookkeeping. Values stay tiny (denominators divide 24*level),
// so int64 with overflow-checked construction is enough.

#include <compare>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "etaq/numtheory.hpp"

namespace etaq {

struct Rat {
  i64 num = 0;
  i64 den = 1;

  Rat() = default;
  Rat(i64 n) : num(n), den(1) {}
  Rat(i64 n, i64 d) : num(n), den(d) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    normalize();
  }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i64 g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  friend Rat operator+(Rat a, Rat b) {
    i64 l = std::lcm(a.den, b.den);
    return Rat(a.num * (l / a.den) + b.num * (l / b.den), l);
  }
  friend Rat operator-(Rat a, Rat b) { return a + Rat(-b.num, b.den); }
  friend Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
  friend Rat operator/(Rat a, Rat b) {
    if (b.num == 0) throw std::domain_error("Rat: division by zero");
    return Rat(a.num * b.den, a.den * b.num);
  }
  Rat operator-() const { return Rat(-num, den); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    return (i128)a.num * b.den <=> (i128)b.num * a.den;
  }

  bool is_integer() const { return den == 1; }
  i64 floor() const { return num >= 0 ? num / den : -((-num + den - 1) / den); }
  i64 ceil() const { return -(-*this).floor(); }
  double to_double() const { return (double)num / (double)den; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    os << r.num;
    if (r.den != 1) os << '/' << r.den;
    return os;
  }
};

}  // namespace etaq
