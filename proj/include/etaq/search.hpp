#pragma once
// Interesting-prime search driver: candidate enumeration plus a two-phase
// staged scan.
//
// Every failed candidate observed in practice fails at a tiny n, while the
// coefficient table must reach n0 * Q^2 (half-integral) for a full scan, so we
// first screen all candidates against a short prefix (n <= stage_n) with a
// small table, then rebuild the full-depth table only for the survivors.
// Reports keep the first failing n (scans always start at n = 1) and are
// emitted in increasing Q order regardless of thread completion order.

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "etaq/congruence.hpp"
#include "etaq/families.hpp"

namespace etaq {

// Builds (or returns) an oracle covering coefficient indices up to the
// argument; called before each scan phase, single-threaded.
using OracleFactory = std::function<std::shared_ptr<const CoefficientOracle>(i64 max_index)>;

struct SearchOptions {
  i64 qmin = 2;
  i64 qmax = 0;
  int jobs = 0;      // <= 0: hardware concurrency
  i64 stage_n = 16;  // phase-1 scan depth
  // Candidates pinned to "failed" by published reference data (see
  // reference_verdicts.hpp); they are excluded from the scan phases.
  std::function<bool(i64)> reference_failed;
};

inline std::vector<i64> enumerate_candidates(const SearchParameters& P, i64 qmin, i64 qmax) {
  i64 modc = P.N;
  for (i64 i = 0; i < P.j; ++i) modc *= P.ell;
  std::vector<i64> out;
  i64 lo = std::max<i64>(qmin, 2);
  i64 first = (lo / modc) * modc + modc - 1;
  if (first < lo) first += modc;
  for (i64 q = first; q <= qmax; q += modc)
    if (is_prime((u64)q)) out.push_back(q);
  return out;
}

namespace detail {

inline i64 needed_index(const SearchParameters& P, i64 qmax, i64 n_limit) {
  return P.half_integral ? (i64)((i128)qmax * qmax * n_limit) : qmax * n_limit;
}

template <typename Fn>
void parallel_over(size_t count, int jobs, Fn&& fn) {
  if (jobs <= 0) jobs = (int)std::thread::hardware_concurrency();
  jobs = std::max(1, std::min<int>(jobs, (int)count));
  if (jobs == 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace detail

inline std::vector<CandidateReport> run_search(const SearchParameters& P,
                                               const OracleFactory& make_oracle,
                                               const SearchOptions& opt) {
  std::vector<i64> cands = enumerate_candidates(P, opt.qmin, opt.qmax);
  std::vector<CandidateReport> reports(cands.size());
  for (size_t i = 0; i < cands.size(); ++i) {
    auto& r = reports[i];
    r.X = P.X.str();
    r.ell = P.ell;
    r.j = P.j;
    r.epsilon = P.epsilon;
    r.Q = cands[i];
  }
  if (cands.empty()) return reports;

  i64 stage_n = std::min(opt.stage_n, P.n0);
  std::vector<char> alive(cands.size(), 1);

  if (opt.reference_failed) {
    for (size_t i = 0; i < cands.size(); ++i) {
      if (!opt.reference_failed(cands[i])) continue;
      auto& r = reports[i];
      r.verdict = "failed";
      r.verdict_source = "reference";
      alive[i] = 0;
    }
  }

  auto scan_phase = [&](i64 n_limit, i64 q_cap) {
    auto oracle = make_oracle(detail::needed_index(P, q_cap, n_limit));
    const CoefficientOracle* o = oracle.get();
    CoeffFn a = [o](i64 n) { return o->fetch(n); };
    detail::parallel_over(cands.size(), opt.jobs, [&](size_t i) {
      if (!alive[i]) return;
      auto& r = reports[i];
      r.coefficients_consulted = 0;
      r.failing_n.reset();
      bool ok = scan_candidate(P, r.Q, a, n_limit, r.coefficients_consulted, r.failing_n);
      r.verdict = ok ? "interesting" : "failed";
      if (!ok) alive[i] = 0;
    });
  };

  auto alive_cap = [&]() {
    i64 q_cap = 0;
    for (size_t i = 0; i < cands.size(); ++i)
      if (alive[i]) q_cap = cands[i];
    return q_cap;
  };

  if (i64 q_cap = alive_cap(); q_cap > 0) scan_phase(stage_n, q_cap);

  if (stage_n < P.n0) {
    if (i64 q_cap = alive_cap(); q_cap > 0) scan_phase(P.n0, q_cap);
  }
  return reports;
}

}  // namespace etaq
