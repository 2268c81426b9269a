#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "etaq/cyclotomic.hpp"
#include "etaq/dedekind.hpp"
#include "etaq/matrix2.hpp"
#include "etaq/ntt.hpp"
#include "etaq/numtheory.hpp"
#include "etaq/qseries.hpp"
#include "etaq/rational.hpp"
#include "etaq/residue.hpp"

using namespace etaq;

TEST_CASE("primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(1103));
  CHECK(is_prime(9749));
  CHECK(!is_prime(1));
  CHECK(!is_prime(1151 * 7));
  CHECK(is_prime(4179340454199820289ull));
  CHECK(is_prime(1945555039024054273ull));
  // counts below 10^4
  int cnt = 0;
  for (u64 n = 2; n < 10000; ++n) cnt += is_prime(n);
  CHECK(cnt == 1229);
}

TEST_CASE("kronecker symbol basics") {
  // (a/p) for odd prime p agrees with Euler's criterion
  for (u64 p : {3ull, 5ull, 7ull, 11ull, 13ull, 101ull}) {
    for (i64 a = -20; a <= 20; ++a) {
      i64 want;
      i64 am = ((a % (i64)p) + (i64)p) % (i64)p;
      if (am == 0)
        want = 0;
      else {
        u64 e = powmod((u64)am, (p - 1) / 2, p);
        want = e == 1 ? 1 : -1;
      }
      CHECK(kronecker(a, (i64)p) == want);
    }
  }
  // (2/n) mod 8 rule
  CHECK(kronecker(2, 7) == 1);
  CHECK(kronecker(2, 3) == -1);
  // multiplicativity in the bottom argument
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    i64 a = (i64)(rng() % 2001) - 1000;
    i64 m = (i64)(rng() % 500) + 1;
    i64 n = (i64)(rng() % 500) + 1;
    CHECK(kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n));
  }
}

TEST_CASE("rational arithmetic") {
  Rat a(3, 4), b(-5, 6);
  CHECK(a + b == Rat(-1, 12));
  CHECK(a * b == Rat(-5, 8));
  CHECK(a / b == Rat(-9, 10));
  CHECK(Rat(7, 3).floor() == 2);
  CHECK(Rat(-7, 3).floor() == -3);
  CHECK(Rat(-7, 3).ceil() == -2);
  CHECK(Rat(6, 3).is_integer());
  CHECK(Rat(1, 2) < Rat(2, 3));
}

TEST_CASE("sl2 completion and delta-gamma decomposition") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    i64 c = (i64)(rng() % 201) - 100;
    i64 d = (i64)(rng() % 201) - 100;
    if (std::gcd(c, d) != 1) continue;
    Mat2 g = complete_to_sl2(c, d);
    CHECK(g.det() == 1);
    CHECK(g.c == c);
    CHECK(g.d == d);
    for (i64 delta : {1, 2, 3, 4, 6, 8, 9, 12, 16, 24, 169}) {
      auto ut = decompose_delta_gamma(delta, g);
      CHECK(ut.A * ut.D == delta);
      CHECK(ut.B >= 0);
      CHECK(ut.B < ut.D);
      CHECK(ut.gamma_prime.det() == 1);
    }
  }
}

TEST_CASE("dedekind sums: classical values and reciprocity") {
  CHECK(dedekind_sum(1, 3) == cpp_rat(1, 18));
  CHECK(dedekind_sum(1, 5) == cpp_rat(1, 5));
  CHECK(dedekind_sum(2, 5) == cpp_rat(0));
  CHECK(dedekind_sum(1, 2) == cpp_rat(0));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    i64 k = (i64)(rng() % 400) + 1;
    i64 h = (i64)(rng() % 400) + 1;
    if (std::gcd(h, k) != 1) continue;
    cpp_rat lhs = dedekind_sum(h, k) + dedekind_sum(k, h);
    cpp_rat rhs = cpp_rat(-1, 4) + (cpp_rat(h, k) + cpp_rat(k, h) + cpp_rat(1, cpp_int(h) * k)) / 12;
    CHECK(lhs == rhs);
    // s(-h,k) = -s(h,k)
    CHECK(dedekind_sum(-h, k) == -dedekind_sum(h, k));
  }
}

// Numeric eta via the pentagonal series, accurate for Im(z) not too small.
static std::complex<double> eta_numeric(std::complex<double> z) {
  const double tau = 6.283185307179586476925286766559;
  std::complex<double> q = std::exp(std::complex<double>(0, tau) * z);
  std::complex<double> s = 1;
  for (i64 k = 1; k <= 200; ++k) {
    double sg = (k & 1) ? -1.0 : 1.0;
    s += sg * (std::pow(q, (double)(k * (3 * k - 1) / 2)) +
               std::pow(q, (double)(k * (3 * k + 1) / 2)));
  }
  return std::exp(std::complex<double>(0, tau / 24.0) * z) * s;
}

TEST_CASE("eta multiplier matches a numeric evaluation of eta") {
  const double tau = 6.283185307179586476925286766559;
  std::mt19937_64 rng(17);
  int tested = 0;
  while (tested < 60) {
    i64 c = (i64)(rng() % 41) - 20;
    i64 d = (i64)(rng() % 41) - 20;
    if ((c == 0 && (d != 1 && d != -1)) || std::gcd(c, d) != 1) continue;
    Mat2 g = complete_to_sl2(c, d);
    // random unimodular upper shear to vary a,b
    i64 n = (i64)(rng() % 9) - 4;
    g = g * Mat2{1, n, 0, 1};
    std::complex<double> z(0.137, 1.31);
    std::complex<double> gz = (std::complex<double>((double)g.a) * z + (double)g.b) /
                              (std::complex<double>((double)g.c) * z + (double)g.d);
    std::complex<double> lhs = eta_numeric(gz);
    int t = eta_eps_exponent(g);
    std::complex<double> eps = std::exp(std::complex<double>(0, tau * t / 24.0));
    std::complex<double> rhs =
        eps * std::sqrt(std::complex<double>((double)g.c) * z + (double)g.d) * eta_numeric(z);
    CHECK(std::abs(lhs - rhs) < 1e-9);
    ++tested;
  }
}

TEST_CASE("cyclotomic arithmetic and exact zero test") {
  // sum of all M-th roots of unity is 0
  for (i64 M : {2, 3, 4, 5, 6, 8, 12, 24, 36}) {
    Cyclotomic s(M);
    for (i64 e = 0; e < M; ++e) s += Cyclotomic::root(M, e);
    CHECK(s.is_zero());
  }
  // 1 + zeta_3 + zeta_3^2 = 0 but 1 + zeta_3 != 0
  Cyclotomic a = Cyclotomic(3, 1) + Cyclotomic::root(3, 1);
  CHECK(!a.is_zero());
  CHECK((a + Cyclotomic::root(3, 2)).is_zero());
  // zeta_8^2 = zeta_4 across conductors
  CHECK(Cyclotomic::root(8, 2) == Cyclotomic::root(4, 1));
  // (1+zeta_4)(1-zeta_4) = 2
  Cyclotomic one(4, 1), i4 = Cyclotomic::root(4, 1);
  CHECK((one + i4) * (one - i4) == Cyclotomic(4, 2));
  // monomial inverse
  Cyclotomic m(24, cpp_rat(3, 7), 5);
  CHECK((m * m.monomial_inverse()) == Cyclotomic(24, 1));
  // numeric embedding agrees
  auto v = (one + i4).eval();
  CHECK(std::abs(v - std::complex<double>(1, 1)) < 1e-12);
  // random sums: is_zero agrees with numeric evaluation at the embedding
  std::mt19937_64 rng(23);
  for (int it = 0; it < 50; ++it) {
    i64 M = 36;
    Cyclotomic x(M);
    for (int j = 0; j < 6; ++j)
      x += Cyclotomic(M, (i64)(rng() % 7) - 3, (i64)(rng() % M));
    bool numzero = std::abs(x.eval()) < 1e-9;
    CHECK(x.is_zero() == numzero);
  }
}

TEST_CASE("ntt convolution matches schoolbook") {
  std::mt19937_64 rng(31);
  for (u64 m : {2ull, 3ull, 5ull, 169ull, 2197ull, 1000000007ull, (1ull << 40) + 15}) {
    for (int it = 0; it < 5; ++it) {
      size_t na = 1 + rng() % 120, nb = 1 + rng() % 120;
      std::vector<u64> a(na), b(nb);
      for (auto& x : a) x = rng() % m;
      for (auto& x : b) x = rng() % m;
      std::vector<u64> want(na + nb - 1, 0);
      for (size_t i = 0; i < na; ++i)
        for (size_t j = 0; j < nb; ++j)
          want[i + j] = (want[i + j] + (u128)a[i] * b[j] % m) % m;
      CHECK(ntt::convolve_mod(a, b, m) == want);
    }
  }
}

TEST_CASE("qseries multiplication against brute-force convolution") {
  std::mt19937_64 rng(41);
  IntRing R;
  for (int it = 0; it < 30; ++it) {
    i64 p1 = 5 + (i64)(rng() % 40), p2 = 5 + (i64)(rng() % 40);
    QSeries<IntRing> a(R, 1, p1), b(R, 1, p2);
    for (i64 e = -3; e < p1; ++e)
      if (rng() % 2) a.set_coeff(e, cpp_int((i64)(rng() % 11) - 5));
    for (i64 e = -3; e < p2; ++e)
      if (rng() % 2) b.set_coeff(e, cpp_int((i64)(rng() % 11) - 5));
    a.normalize();
    b.normalize();
    QSeries<IntRing> c = a * b;
    // brute force
    std::map<i64, cpp_int> want;
    for (auto& [ea, ca] : a.t)
      for (auto& [eb, cb] : b.t) want[ea + eb] += ca * cb;
    for (auto& [e, cc] : c.t) {
      CHECK(e < c.prec);
      CHECK(want[e] == cc);
    }
    for (auto& [e, w] : want)
      if (e < c.prec && w != 0) CHECK(c.coeff(Rat(e)) == w);
  }
}

TEST_CASE("qseries inverse and pow") {
  IntRing R;
  // 1/(1-q) = sum q^n
  QSeries<IntRing> f(R, 1, 40);
  f.set_coeff(0, 1);
  f.set_coeff(1, -1);
  auto g = f.inverse();
  for (i64 n = 0; n < 40; ++n) CHECK(g.coeff(Rat(n)) == 1);
  CHECK((f * g).coeff(Rat(0)) == 1);
  CHECK((f * g).coeff(Rat(7)) == 0);
  // f^-2 * f^2 = 1
  auto h = f.pow(-2) * f.pow(2);
  for (i64 n = 1; n < 20; ++n) CHECK(h.coeff(Rat(n)) == 0);
  CHECK(h.coeff(Rat(0)) == 1);
  // inverse with fractional leading exponent and unit cyclotomic lead
  CycloRing C(12);
  QSeries<CycloRing> u(C, 12, 30);
  u.set_coeff(-5, Cyclotomic::root(12, 7));
  u.set_coeff(1, Cyclotomic(12, 3));
  u.set_coeff(4, Cyclotomic(12, cpp_rat(1), 2));
  auto ui = u.inverse();
  auto prod = u * ui;
  prod.normalize();
  auto l = prod.lead();
  REQUIRE(l.has_value());
  CHECK(l->first == Rat(0));
  CHECK(l->second == Cyclotomic(12, 1));
  CHECK(prod.t.size() == 1);
}

TEST_CASE("euler product matches direct expansion; eta series") {
  IntRing R;
  // direct prod_{n<=P} (1-q^n)
  i64 P = 60;
  QSeries<IntRing> direct = QSeries<IntRing>::one(R, 1, P);
  for (i64 n = 1; n < P; ++n) {
    QSeries<IntRing> f = QSeries<IntRing>::one(R, 1, P);
    f.set_coeff(n, -1);
    direct = direct * f;
    direct = direct.truncated(P);
  }
  auto pent = euler_product(R, 1, 1, P);
  for (i64 n = 0; n < P; ++n) CHECK(pent.coeff(Rat(n)) == direct.coeff(Rat(n)));
  // eta(2z) leads with q^(1/12)
  auto e2 = eta_series(R, 2, 100);
  auto l = e2.lead();
  REQUIRE(l.has_value());
  CHECK(l->first == Rat(1, 12));
  CHECK(l->second == 1);
  // 1/eta(z) shifted: partition generating function
  auto e1 = eta_series(R, 1, 24 * 30 + 1);
  auto pgen = e1.inverse().shifted(1, 24);
  i64 pvals[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135};
  for (i64 n = 0; n < 15; ++n) CHECK(pgen.coeff(Rat(n)) == pvals[n]);
}

TEST_CASE("modring series uses exact arithmetic in dense path") {
  ModRing R(2197);  // 13^3
  std::mt19937_64 rng(53);
  QSeries<ModRing> a(R, 1, 1500), b(R, 1, 1500);
  for (i64 e = 0; e < 1500; ++e) {
    a.set_coeff(e, rng() % 2197);
    b.set_coeff(e, rng() % 2197);
  }
  auto c = a * b;  // dense/NTT path (both operands >= 512 terms)
  // spot-check against direct sums
  for (i64 e : {0, 1, 7, 100, 777, 1499}) {
    u64 want = 0;
    for (i64 i = 0; i <= e; ++i)
      want = (want + (u128)(u64)a.coeff(Rat(i)) * (u64)b.coeff(Rat(e - i))) % 2197;
    CHECK((u64)c.coeff(Rat(e)) == want);
  }
}
