#pragma once

// Fourier expansions of eta-quotients at infinity and at arbitrary cusps.
//
// At a cusp s = a/c with scaling matrix gamma_s, each factor transforms as
//   eta(delta z)|gamma = D^{-1/2} eps_{gamma'} e^{2 pi i B/(24D)} q^{A/(24D)}
//                        prod_{n>=1} (1 - e^{2 pi i nB/D} q^{An/D}),
// where (delta 0; 0 1) gamma = gamma' (A B; 0 D). The positive scalar
// prod D^{-r/2} is recorded separately; coefficients live in Q(zeta_M) with
// M = lcm(24 D_delta). The series is produced in the local variable
// q_{h_s} = q^{1/h_s}, so its exponents are the n + r_s/4 of the standard
// cusp expansion.

#include <stdexcept>
#include <vector>

#include "etaq/cusps.hpp"
#include "etaq/cyclotomic.hpp"
#include "etaq/dedekind.hpp"
#include "etaq/eta_quotient.hpp"
#include "etaq/qseries.hpp"

namespace etaq {

template <class Ring>
QSeries<Ring> expand_at_infinity(const EtaQuotient& X, Ring R, i64 prec24) {
  // exponents are integers (multiples of 24 in the scaled-by-24 grid), but we
  // assemble on the /24 grid and let the factors cancel to integers
  i64 lead24 = X.sum_rdelta();  // 24 * leading exponent
  i64 rel = prec24 - lead24;    // relative precision budget in /24 units
  if (rel <= 0) throw std::domain_error("expand_at_infinity: precision below leading term");
  QSeries<Ring> acc = QSeries<Ring>::one(R, 24, rel);
  for (auto& [d, r] : X.factors) {
    auto f = eta_series(R, d, d + rel);
    acc = acc * f.pow(r);
  }
  return acc;
}

struct CuspExpansion {
  Cusp cusp;
  QSeries<CycloRing> series;  // in q_{h_s}; exponents are n + r_s/4
  i64 conductor = 1;
  cpp_rat scalar_sq = 1;  // dropped positive scalar is scalar_sq^{-1/2} = prod D^{-r/2}
  Rat lead = Rat(0);      // leading exponent (q_{h_s} units)
  Rat rs4 = Rat(0);       // fractional class of exponents mod 1; r_s = 4*rs4 when integral

  bool rs_integral() const { return (rs4 * Rat(4)).is_integer(); }
  i64 r_s() const {
    if (!rs_integral()) throw std::logic_error("cusp expansion: r_s not in {0,1,2,3}");
    return (rs4 * Rat(4)).num;
  }
};

// Expand eta^X | xi_s in q_{h_s} with all exponents < target_qh known.
inline CuspExpansion expand_at_cusp_to(const EtaQuotient& X, const Cusp& s, Rat target_qh) {
  Mat2 gamma = cusp_gamma(s);
  i64 h = s.width;

  struct Fac {
    i64 delta, r, A, B, D;
    int eps_t;  // zeta_24 exponent of eps_{gamma'}
  };
  std::vector<Fac> facs;
  i64 M = 24;
  Rat lead_qh(0);
  for (auto& [d, r] : X.factors) {
    auto ut = decompose_delta_gamma(d, gamma);
    Fac f{d, r, ut.A, ut.B, ut.D, eta_eps_exponent(ut.gamma_prime)};
    facs.push_back(f);
    M = lcm_i64(M, 24 * f.D);
    lead_qh = lead_qh + Rat(r * f.A * h, 24 * f.D);
  }
  CycloRing R(M);

  i64 den = 24;
  for (auto& f : facs) den = lcm_i64(den, 24 * f.D);  // hosts h*A*n/D and h*A/(24D)

  // relative precision budget above the total leading exponent, in scaled units
  Rat rel = target_qh - lead_qh;
  if (rel <= Rat(0)) rel = Rat(1, den);
  i64 rel_s = (rel * Rat(den)).ceil();

  QSeries<CycloRing> acc = QSeries<CycloRing>::one(R, den, rel_s);
  i64 pref = 0;  // zeta_M exponent of the root-of-unity prefactor
  for (auto& f : facs) {
    pref = ((pref + (i128)f.r * (f.eps_t * (M / 24) + f.B * (M / (24 * f.D)))) % M + M) % M;
    // prod (1 - zeta_D^{nB} q_{h}^{hAn/D}) to relative precision rel_s
    QSeries<CycloRing> P = QSeries<CycloRing>::one(R, den, rel_s);
    for (i64 n = 1;; ++n) {
      // binomial exponent h*A*n/D, scaled by den (24D | den, so this is exact)
      i64 e = (i64)((i128)h * f.A * n * den / f.D);
      if (e >= rel_s) break;
      QSeries<CycloRing> bin = QSeries<CycloRing>::one(R, den, rel_s);
      i64 rot = (i64)((i128)(n % f.D) * f.B % f.D) * (M / f.D);
      bin.set_coeff(e, -Cyclotomic::root(M, rot));
      P = (P * bin).truncated(rel_s);
    }
    acc = (acc * P.pow(f.r)).truncated(rel_s);
  }
  acc = acc.scaled(Cyclotomic::root(M, pref));
  acc.normalize();

  // shift by the total leading exponent
  acc = acc.shifted(lead_qh.num * (den / lead_qh.den), den);

  CuspExpansion out;
  out.cusp = s;
  out.conductor = M;
  for (auto& f : facs)
    for (i64 i = 0; i < (f.r < 0 ? -f.r : f.r); ++i)
      out.scalar_sq *= f.r > 0 ? cpp_rat(f.D) : cpp_rat(1, f.D);
  auto l = acc.lead();
  if (!l) throw std::logic_error("cusp expansion: vanishing expansion");
  out.lead = l->first;
  if (!(out.lead == lead_qh))
    throw std::logic_error("cusp expansion: leading exponent mismatch");
  out.rs4 = out.lead - Rat(out.lead.floor());
  // consistency: every exponent in the same class mod 1
  for (auto& [e, c] : acc.t)
    if (!(Rat(e, acc.den) - out.lead).is_integer())
      throw std::logic_error("cusp expansion: exponents not in a single class mod 1");
  out.series = std::move(acc);
  return out;
}

// The first `term_count` potentially nonzero terms: the exponent lattice step
// is the gcd of the per-factor steps h*A_delta/D_delta.
inline CuspExpansion expand_at_cusp(const EtaQuotient& X, const Cusp& s, i64 term_count) {
  Mat2 gamma = cusp_gamma(s);
  Rat lead(0), step(0);
  for (auto& [d, r] : X.factors) {
    auto ut = decompose_delta_gamma(d, gamma);
    lead = lead + Rat(r * ut.A * s.width, 24 * ut.D);
    Rat st(ut.A * s.width, ut.D);
    if (step == Rat(0))
      step = st;
    else
      step = Rat(std::gcd(step.num * st.den, st.num * step.den), step.den * st.den);
  }
  return expand_at_cusp_to(X, s, lead + step * Rat(term_count));
}

}  // namespace etaq
