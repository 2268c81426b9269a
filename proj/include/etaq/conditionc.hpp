#pragma once

// Condition C (sign coherence of principal-part coefficients at all cusps):
// there is a sign eps in {+1,-1} such that for every cusp s and every term
// with exponent n + r_s/4 < 0, nonzero coefficient, and ell not dividing
// 4n + r_s, one has ((4n+r_s)/ell) = eps * (h_s/ell). When no such term
// exists the condition holds trivially with eps = 0.

#include <optional>
#include <string>

#include "etaq/cusp_expansion.hpp"
#include "etaq/cusps.hpp"
#include "etaq/eta_quotient.hpp"

namespace etaq {

struct ConditionCResult {
  i64 ell = 0;
  int epsilon = 0;
  bool holds = false;
  // witness: a cusp term that rules out the remaining sign(s)
  std::optional<std::pair<Cusp, i64>> witness;  // (cusp, 4n + r_s)
};

inline ConditionCResult check_condition_c(const EtaQuotient& X, i64 ell, i64 level = 0) {
  if (ell < 3 || !is_prime((u64)ell))
    throw std::invalid_argument("condition C: ell must be an odd prime");
  i64 N = level ? level : invariants(X).N;
  ConditionCResult res;
  res.ell = ell;

  bool plus_ok = true, minus_ok = true;
  bool any_term = false;
  std::optional<std::pair<Cusp, i64>> last_term;

  for (const Cusp& s : cusp_representatives(N)) {
    Rat ord = ord_at_cusp_c(X, N, s.c);
    if (ord >= Rat(0)) continue;  // no principal part at this cusp
    CuspExpansion ce = expand_at_cusp_to(X, s, Rat(0));
    i64 hl = kronecker(s.width, ell);
    for (auto& [e, coef] : ce.series.t) {
      Rat x(e, ce.series.den);  // = n + r_s/4 < 0
      if (!(x >= ce.series.precision()) && x < Rat(0)) {
        Rat t4 = x * Rat(4);
        if (!t4.is_integer())
          throw std::logic_error("condition C: exponent 4x not an integer");
        i64 t = t4.num;  // = 4n + r_s
        if (t % ell == 0) continue;
        if (ce.series.R.is_zero(coef)) continue;
        any_term = true;
        i64 sym = kronecker(t, ell);
        if (sym != hl) plus_ok = false;
        if (sym != -hl) minus_ok = false;
        last_term = std::make_pair(s, t);
        if (!plus_ok && !minus_ok) {
          res.holds = false;
          res.epsilon = 0;
          res.witness = last_term;
          return res;
        }
      }
    }
  }

  if (!any_term) {
    res.holds = true;
    res.epsilon = 0;
  } else if (plus_ok) {
    res.holds = true;
    res.epsilon = 1;
    if (!minus_ok) res.witness = std::nullopt;
  } else {
    res.holds = true;
    res.epsilon = -1;
  }
  return res;
}

}  // namespace etaq
