// Acceptance gate: one PASS/FAIL line per criterion, exit 0 iff all pass.
//
// Criteria 1-3 and 8 exercise the library in-process; criteria 4-7 drive the
// etaq CLI binary (sibling of this executable unless overridden by argv[1])
// and parse its NDJSON output; criterion 9 reruns 4-7 and byte-compares the
// result files.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "etaq/conditionc.hpp"
#include "etaq/congruence.hpp"
#include "etaq/cusp_expansion.hpp"
#include "etaq/families.hpp"
#include "support/oracles.hpp"

using json = nlohmann::ordered_json;
using namespace etaq;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("criterion %d: %s - %s\n", criterion, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string g_cli = "./etaq";
std::string g_dir = "acceptance-out";

// Runs one CLI search and returns Q -> verdict, preserving the output file.
bool run_search(const std::string& args, const std::string& outfile) {
  std::string cmd = g_cli + " search " + args + " --out " + g_dir + "/" + outfile;
  std::fprintf(stderr, "# %s\n", cmd.c_str());
  return std::system(cmd.c_str()) == 0;
}

std::map<i64, std::string> read_verdicts(const std::string& outfile) {
  std::map<i64, std::string> v;
  std::ifstream in(g_dir + "/" + outfile);
  std::string line;
  while (std::getline(in, line)) {
    json rec = json::parse(line);
    if (rec["type"] == "candidate") v[rec["Q"].get<i64>()] = rec["verdict"].get<std::string>();
  }
  return v;
}

std::set<i64> with_verdict(const std::map<i64, std::string>& v, const std::string& verdict) {
  std::set<i64> out;
  for (auto& [q, s] : v)
    if (s == verdict) out.insert(q);
  return out;
}

void criterion1() {
  bool ok = true;
  std::string detail = "Condition C table";
  auto expect = [&](const char* eta, i64 ell, bool holds, int eps) {
    auto r = check_condition_c(parse_eta_quotient(eta), ell);
    if (r.holds != holds || (holds && r.epsilon != eps)) {
      ok = false;
      detail += " [mismatch " + std::string(eta) + " ell=" + std::to_string(ell) + " got eps=" +
                std::to_string(r.epsilon) + " holds=" + std::to_string(r.holds) + "]";
    }
  };
  const i64 ells[] = {5, 7, 11, 13, 17};
  const int eps_p[] = {1, -1, -1, 1, 1};
  for (int i = 0; i < 5; ++i) expect("24:-1", ells[i], true, eps_p[i]);
  expect("1:-2,2:1", 3, true, -1);
  expect("1:-2,2:1", 5, true, 1);
  const i64 ells24[] = {3, 5, 7, 11, 13};
  const int eps24[] = {-1, 1, -1, -1, 1};
  for (int i = 0; i < 5; ++i) expect("1:-24", ells24[i], true, eps24[i]);
  for (i64 ell : {3, 5, 7, 11, 13}) expect("1:-3,3:9", ell, true, 0);
  report(1, ok, detail);
}

void criterion2() {
  bool ok = index_mu(14400) == 34560 && sturm_bound(23, 14400, 2) == 33119;
  report(2, ok, "index_mu(14400) = 34560, sturm_bound(23,14400,2) = 33119");
}

void criterion3() {
  auto P = make_search_parameters(parse_eta_quotient("24:-1"), 5, 1, 1);
  report(3, P.beta == 0, "partition ell=5 machinery takes beta = 0 (got beta=" +
                             std::to_string(P.beta) + ", kappa=" + std::to_string(P.kappa) + ")");
}

void criterion4() {
  bool ran = run_search("--family overpartition --ell 3 --qmax 1103", "c4a.ndjson") &&
             run_search("--family overpartition --ell 3 --qmin 1104 --qmax 1871", "c4b.ndjson");
  auto va = read_verdicts("c4a.ndjson");
  auto vb = read_verdicts("c4b.ndjson");
  std::set<i64> want_int = {47, 191, 239, 383, 431, 479, 719, 863, 911, 1103};
  std::set<i64> want_fail = {1151, 1439, 1487, 1583, 1823, 1871};
  bool ok = ran && with_verdict(va, "interesting") == want_int &&
            with_verdict(va, "failed").empty() && with_verdict(vb, "failed") == want_fail &&
            with_verdict(vb, "interesting").empty();
  report(4, ok, "overpartition ell=3: interesting {47..1103} exactly, 1104-1871 all failed");
}

void criterion5() {
  bool ran = run_search("--family overpartition --ell 5 --qmax 500", "c5a.ndjson") &&
             run_search("--family overpartition --ell 5 --qmin 501 --qmax 719", "c5b.ndjson");
  auto va = read_verdicts("c5a.ndjson");
  auto vb = read_verdicts("c5b.ndjson");
  bool ok = ran && with_verdict(va, "interesting") == std::set<i64>{79, 239, 479} &&
            with_verdict(va, "failed").empty() && vb.count(719) && vb[719] == "failed";
  report(5, ok, "overpartition ell=5: interesting {79,239,479} up to 500, Q=719 failed");
}

void criterion6() {
  bool ok = true;
  for (i64 ell : {5, 7}) {
    std::string f = "c6-ell" + std::to_string(ell) + ".ndjson";
    ok = run_search("--family core3 --ell " + std::to_string(ell) + " --qmax 1000", f) && ok;
    auto v = read_verdicts(f);
    if (v.empty()) ok = false;
    for (auto& [q, s] : v)
      if (s != "interesting") ok = false;
  }
  report(6, ok, "core3 ell in {5,7}: every candidate prime <= 1000 interesting "
                "(pins the integral Hecke exponent to the paper's kappa-1)");
}

void criterion7() {
  bool ran = run_search("--family color24 --ell 13 --qmax 2963", "c7.ndjson");
  auto v = read_verdicts("c7.ndjson");
  bool ok = ran;
  for (i64 q : {103, 181, 233}) ok = ok && v.count(q) && v[q] == "failed";
  for (i64 q : {1741, 2963}) ok = ok && v.count(q) && v[q] == "interesting";
  report(7, ok, "color24 ell=13: {1741,2963} interesting, {103,181,233} failed");
}

// Deterministic 64-bit generator for the random corpus (fixed seed so the
// criterion is reproducible).
struct Rng {
  u64 s = 0x9e3779b97f4a7c15ull;
  u64 next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  i64 uniform(i64 lo, i64 hi) { return lo + (i64)(next() % (u64)(hi - lo + 1)); }
};

EtaQuotient random_quotient(Rng& rng, i64 max_level) {
  for (;;) {
    std::map<i64, i64> fac;
    int nf = (int)rng.uniform(1, 3);
    for (int i = 0; i < nf; ++i) {
      i64 d = rng.uniform(1, 12);
      fac[d] += rng.uniform(-3, 3);
    }
    i64 s = 0;
    for (auto& [d, r] : fac) s += d * r;
    fac[1] += (24 - s % 24) % 24;
    EtaQuotient X;
    for (auto& [d, r] : fac)
      if (r != 0) X.factors.push_back({d, r});
    if (X.factors.empty()) continue;
    std::sort(X.factors.begin(), X.factors.end());
    try {
      if (invariants(X).N <= max_level) return X;
    } catch (const std::exception&) {
    }
  }
}

void criterion8() {
  // (a) Ramanujan congruences from the built-in table.
  bool a_ok = true;
  {
    auto p5 = partition_table_mod(5 * 100000 + 4, 5);
    auto p7 = partition_table_mod(7 * 100000 + 5, 7);
    auto p11 = partition_table_mod(11 * 100000 + 6, 11);
    for (i64 n = 0; n <= 100000 && a_ok; ++n)
      a_ok = p5[(size_t)(5 * n + 4)] == 0 && p7[(size_t)(7 * n + 5)] == 0 &&
             p11[(size_t)(11 * n + 6)] == 0;
  }
  // (b) + (d): Ligozat leading order vs expansion at every cusp, and valence
  // balance, on 200 random quotients.
  bool b_ok = true, d_ok = true;
  Rng rng;
  std::vector<EtaQuotient> corpus;
  for (int i = 0; i < 200; ++i) corpus.push_back(random_quotient(rng, 60));
  for (const EtaQuotient& X : corpus) {
    EtaInvariants inv = invariants(X);
    Rat total(0);
    for (const Cusp& s : cusp_representatives(inv.N)) {
      Rat ord = ord_at_cusp_c(X, inv.N, s.c);
      total = total + ord;
      CuspExpansion ce = expand_at_cusp(X, s, 1);
      if (ce.lead != ord) b_ok = false;
    }
    if (total != Rat(inv.k * index_mu(inv.N), 24)) d_ok = false;
  }
  // (c) numerical cross-validation on 50 (X, cusp) pairs: compare the computed
  // expansion against a direct product of numerically transformed eta factors.
  bool c_ok = true;
  int pairs = 0;
  for (size_t xi = 0; xi < corpus.size() && pairs < 50; ++xi) {
    const EtaQuotient& X = corpus[xi];
    EtaInvariants inv = invariants(X);
    if (inv.N > 40) continue;
    auto reps = cusp_representatives(inv.N);
    const Cusp& s = reps[rng.next() % reps.size()];
    // 120 terms and Im z = 1.5 keep the truncation tail of wide-cusp series
    // (width up to 40 at level <= 40) well below the 1e-6 tolerance.
    CuspExpansion ce = expand_at_cusp(X, s, 120);
    std::complex<double> z(0.05 + 0.01 * (double)(rng.next() % 7), 1.5);
    Mat2 g = cusp_gamma(s);
    std::complex<double> czd = std::complex<double>((double)g.c) * z + (double)g.d;
    std::complex<double> gz = (std::complex<double>((double)g.a) * z + (double)g.b) / czd;
    // (eta^X | gamma)(z) = (cz+d)^{-k/2} eta^X(gamma z)
    std::complex<double> want = std::pow(czd, -(double)X.k() / 2.0);
    for (auto [d, r] : X.factors)
      want *= std::pow(testsupport::eta_numeric((double)d * gz), (double)r);
    // Evaluate the stored expansion, restore the dropped scalar_sq^{-1/2}.
    std::complex<double> got = 0.0;
    const double pi = std::acos(-1.0);
    std::complex<double> qh = std::exp(std::complex<double>(0, 2 * pi) * z /
                                       std::complex<double>((double)s.width));
    for (auto& [e, v] : ce.series.t)
      got += v.eval() * std::pow(qh, (double)e / (double)ce.series.den);
    got /= std::sqrt(ce.scalar_sq.convert_to<double>());
    double rel = std::abs(got - want) / std::abs(want);
    if (!(rel < 1e-6)) c_ok = false;
    ++pairs;
  }
  if (pairs < 50) c_ok = false;
  bool ok = a_ok && b_ok && c_ok && d_ok;
  std::ostringstream os;
  os << "partition substitute properties: Ramanujan congruences " << (a_ok ? "ok" : "BAD")
     << ", Ligozat-vs-expansion " << (b_ok ? "ok" : "BAD") << ", numeric cross-validation ("
     << pairs << " pairs) " << (c_ok ? "ok" : "BAD") << ", valence balance "
     << (d_ok ? "ok" : "BAD");
  report(8, ok, os.str());
}

void criterion9() {
  struct Rerun {
    std::string args, first, second;
  };
  std::vector<Rerun> runs = {
      {"--family overpartition --ell 3 --qmax 1103", "c4a.ndjson", "c4a.rerun.ndjson"},
      {"--family overpartition --ell 3 --qmin 1104 --qmax 1871", "c4b.ndjson",
       "c4b.rerun.ndjson"},
      {"--family overpartition --ell 5 --qmax 500", "c5a.ndjson", "c5a.rerun.ndjson"},
      {"--family overpartition --ell 5 --qmin 501 --qmax 719", "c5b.ndjson", "c5b.rerun.ndjson"},
      {"--family core3 --ell 5 --qmax 1000", "c6-ell5.ndjson", "c6-ell5.rerun.ndjson"},
      {"--family core3 --ell 7 --qmax 1000", "c6-ell7.ndjson", "c6-ell7.rerun.ndjson"},
      {"--family color24 --ell 13 --qmax 2963", "c7.ndjson", "c7.rerun.ndjson"},
  };
  bool ok = true;
  for (auto& r : runs) {
    if (!run_search(r.args, r.second)) {
      ok = false;
      continue;
    }
    std::ifstream f1(g_dir + "/" + r.first, std::ios::binary);
    std::ifstream f2(g_dir + "/" + r.second, std::ios::binary);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    if (!f1 || !f2 || s1.str().empty() || s1.str() != s2.str()) ok = false;
  }
  report(9, ok, "reruns of criteria 4-7 searches are byte-identical");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];
  std::system(("mkdir -p " + g_dir).c_str());
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  return g_failures == 0 ? 0 : 1;
}
