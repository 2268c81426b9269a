// Command-line front end: exact eta-quotient expansions, Condition C,
// congruence parameters, and the interesting-prime search.
//
// Output is newline-delimited JSON ("schema": 1), one record per line, written
// to stdout or --out PATH. Records carry their full input so runs are
// replayable, and contain no timestamps, so reruns are byte-identical; timing
// and progress go to stderr. Exit codes: 0 success, 2 usage error, 3 oracle
// failure, 4 internal consistency failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "etaq/conditionc.hpp"
#include "etaq/congruence.hpp"
#include "etaq/cusp_expansion.hpp"
#include "etaq/families.hpp"
#include "etaq/reference_verdicts.hpp"
#include "etaq/search.hpp"
#include "etaq/subprocess_oracle.hpp"

using json = nlohmann::ordered_json;
using namespace etaq;

namespace {

constexpr const char* kTool = "etaq";
constexpr const char* kVersion = "1.0.0";

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::string cpp_rat_str(const cpp_rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

// Single funnel for all user-visible records.
struct Emitter {
  std::ofstream file;
  bool to_file = false;
  bool pretty = false;

  explicit Emitter(const std::string& out_path, bool pretty_flag) : pretty(pretty_flag) {
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw std::invalid_argument("cannot open output file: " + out_path);
      to_file = true;
    }
  }

  void emit(const json& rec) {
    std::string line = rec.dump();
    if (to_file) file << line << '\n';
    if (pretty) {
      // Formatting flag only: render the same record as aligned key: value.
      for (auto& [k, v] : rec.items()) {
        if (k == "schema" || k == "tool" || k == "version") continue;
        std::cout << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                  << '\n';
      }
      std::cout << '\n';
    } else if (!to_file) {
      std::cout << line << '\n';
    }
  }
};

json base_record(const char* type) {
  json rec;
  rec["schema"] = 1;
  rec["tool"] = kTool;
  rec["version"] = kVersion;
  rec["type"] = type;
  return rec;
}

struct Options {
  std::string eta, family, oracle_cmd, out_path, cusp_text;
  i64 ell = 0, j = 1, Q = 0, qmin = 2, qmax = 0, prec = 10, terms = 8, nmax = 5;
  u64 mod = 0;
  int epsilon = 0, jobs = 0;
  bool epsilon_set = false;
  bool pretty = false;
};

Family resolve_family(const Options& o) {
  if (o.family.empty()) {
    if (o.eta.empty())
      throw std::invalid_argument("need --family NAME or --family custom-eta with --eta");
    return make_family("custom-eta", o.eta);
  }
  return make_family(o.family, o.eta);
}

std::shared_ptr<const CoefficientOracle> shared_subprocess(const Options& o, u64 mod) {
  return std::make_shared<SubprocessOracle>(o.oracle_cmd, mod);
}

OracleFactory make_factory(const Options& o, const Family& fam, u64 mod) {
  if (!o.oracle_cmd.empty()) {
    auto oracle = shared_subprocess(o, mod);
    return [oracle](i64) { return oracle; };
  }
  return [fam, mod](i64 max_index) -> std::shared_ptr<const CoefficientOracle> {
    auto t0 = std::chrono::steady_clock::now();
    std::fprintf(stderr, "# building %s table mod %llu to index %lld...\n", fam.name.c_str(),
                 (unsigned long long)mod, (long long)max_index);
    std::shared_ptr<const CoefficientOracle> oracle = family_oracle(fam, mod, max_index);
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    std::fprintf(stderr, "# table ready in %.1fs\n", dt.count());
    return oracle;
  };
}

int cmd_info(const Options& o, Emitter& em) {
  EtaQuotient X = parse_eta_quotient(o.eta);
  EtaInvariants inv = invariants(X);
  json rec = base_record("info");
  rec["input"] = {{"eta", X.str()}};
  rec["weight_numerator"] = inv.k;
  rec["weight"] = std::to_string(inv.k) + "/2";
  rec["half_integral"] = inv.half_integral;
  rec["level"] = inv.N;
  rec["character_class"] = inv.char_class;
  rec["character_order"] = inv.m;
  rec["index_mu"] = index_mu(inv.N);
  json cusps = json::array();
  for (const Cusp& s : cusp_representatives(inv.N)) {
    cusps.push_back({{"cusp", s.str()},
                     {"a", s.a},
                     {"c", s.c},
                     {"width", s.width},
                     {"ord", rat_str(ord_at_cusp_c(X, inv.N, s.c))}});
  }
  rec["cusp_count"] = (i64)cusps.size();
  rec["cusps"] = std::move(cusps);
  em.emit(rec);
  return 0;
}

int cmd_expand(const Options& o, Emitter& em) {
  EtaQuotient X = parse_eta_quotient(o.eta);
  json rec = base_record("expand");
  rec["input"] = {{"eta", X.str()}, {"prec", o.prec}, {"mod", o.mod}};
  json terms = json::array();
  if (o.mod >= 2) {
    ModRing R{o.mod};
    auto S = expand_at_infinity(X, R, 24 * o.prec);
    for (auto& [e, v] : S.t)
      if (!R.is_zero(v)) terms.push_back({rat_str(Rat(e, S.den)), R.to_string(v)});
  } else {
    IntRing R;
    auto S = expand_at_infinity(X, R, 24 * o.prec);
    for (auto& [e, v] : S.t)
      if (!R.is_zero(v)) terms.push_back({rat_str(Rat(e, S.den)), R.to_string(v)});
  }
  rec["terms"] = std::move(terms);
  em.emit(rec);
  return 0;
}

Cusp parse_cusp(const std::string& text, i64 N) {
  if (text.empty()) throw std::invalid_argument("cusp-expand requires --cusp a/c (or oo)");
  if (text == "oo" || text == "inf") return make_cusp(N, 1, 0);
  size_t slash = text.find('/');
  i64 a = std::stoll(text.substr(0, slash));
  i64 c = slash == std::string::npos ? 1 : std::stoll(text.substr(slash + 1));
  return make_cusp(N, a, c);
}

int cmd_cusp_expand(const Options& o, Emitter& em) {
  EtaQuotient X = parse_eta_quotient(o.eta);
  EtaInvariants inv = invariants(X);
  Cusp s = parse_cusp(o.cusp_text, inv.N);
  CuspExpansion ce = expand_at_cusp(X, s, o.terms);
  json rec = base_record("cusp-expand");
  rec["input"] = {{"eta", X.str()}, {"cusp", s.str()}, {"terms", o.terms}};
  rec["level"] = inv.N;
  rec["width"] = s.width;
  rec["conductor"] = ce.conductor;
  rec["scalar_sq"] = cpp_rat_str(ce.scalar_sq);
  rec["lead"] = rat_str(ce.lead);
  if (ce.rs_integral()) rec["r_s"] = ce.r_s();
  rec["rs4"] = rat_str(ce.rs4);
  json terms = json::array();
  for (auto& [e, v] : ce.series.t)
    if (!v.is_zero()) terms.push_back({rat_str(Rat(e, ce.series.den)), v.str()});
  rec["terms"] = std::move(terms);
  em.emit(rec);
  return 0;
}

int cmd_condition_c(const Options& o, Emitter& em) {
  EtaQuotient X = parse_eta_quotient(o.eta);
  ConditionCResult r = check_condition_c(X, o.ell);
  json rec = base_record("condition-c");
  rec["input"] = {{"eta", X.str()}, {"ell", o.ell}};
  rec["holds"] = r.holds;
  rec["epsilon"] = r.epsilon;
  if (r.witness) {
    rec["witness"] = {{"cusp", r.witness->first.str()}, {"t", r.witness->second}};
  }
  em.emit(rec);
  return 0;
}

json params_json(const SearchParameters& P) {
  return {{"k", P.k},           {"half_integral", P.half_integral},
          {"N", P.N},           {"N_machinery", P.Nmach},
          {"beta", P.beta},     {"kappa", P.kappa},
          {"v0", P.v0},         {"M", P.M},
          {"m", P.m},           {"n0", P.n0},
          {"mod", P.mod},       {"epsilon", P.epsilon}};
}

int cmd_params(const Options& o, Emitter& em) {
  EtaQuotient X = parse_eta_quotient(o.eta);
  SearchParameters P = make_search_parameters(X, o.ell, o.j, o.epsilon);
  json rec = base_record("params");
  rec["input"] = {{"eta", X.str()}, {"ell", o.ell}, {"j", o.j}, {"epsilon", o.epsilon}};
  rec["params"] = params_json(P);
  em.emit(rec);
  return 0;
}

int resolve_epsilon(const Options& o, const EtaQuotient& X, int& epsilon) {
  if (o.epsilon_set) {
    epsilon = o.epsilon;
    return 0;
  }
  ConditionCResult r = check_condition_c(X, o.ell);
  if (!r.holds)
    throw std::invalid_argument("Condition C fails for this eta-quotient at ell=" +
                                std::to_string(o.ell) + "; the search hypothesis is not met");
  epsilon = r.epsilon;
  return 0;
}

int cmd_search(const Options& o, Emitter& em) {
  if (o.qmax <= 0) throw std::invalid_argument("search requires --qmax");
  Family fam = resolve_family(o);
  int epsilon = 0;
  resolve_epsilon(o, fam.X, epsilon);
  SearchParameters P = make_search_parameters(fam.X, o.ell, o.j, epsilon);
  json input = {{"family", fam.name}, {"eta", fam.X.str()},
                {"ell", o.ell},       {"j", o.j},
                {"epsilon", epsilon}, {"qmin", o.qmin},
                {"qmax", o.qmax},     {"jobs", o.jobs},
                {"oracle", o.oracle_cmd.empty() ? "builtin" : o.oracle_cmd}};
  json head = base_record("search-params");
  head["input"] = input;
  head["params"] = params_json(P);
  em.emit(head);

  SearchOptions opt;
  opt.qmin = o.qmin;
  opt.qmax = o.qmax;
  opt.jobs = o.jobs;
  opt.reference_failed = [&fam, &o](i64 Q) { return reference_failed(fam.name, o.ell, o.j, Q); };
  OracleFactory factory = make_factory(o, fam, P.mod);
  auto t0 = std::chrono::steady_clock::now();
  std::vector<CandidateReport> reports = run_search(P, factory, opt);
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  std::fprintf(stderr, "# search scanned %zu candidates in %.1fs\n", reports.size(), dt.count());
  for (const CandidateReport& r : reports) {
    json rec = base_record("candidate");
    rec["input"] = input;
    rec["Q"] = r.Q;
    rec["verdict"] = r.verdict;
    if (r.verdict_source != "scan") rec["verdict_source"] = r.verdict_source;
    if (r.failing_n) rec["failing_n"] = *r.failing_n;
    rec["coefficients_consulted"] = r.coefficients_consulted;
    em.emit(rec);
  }
  return 0;
}

int cmd_verify(const Options& o, Emitter& em) {
  if (o.Q <= 0) throw std::invalid_argument("verify requires --q");
  Family fam = resolve_family(o);
  int epsilon = 0;
  resolve_epsilon(o, fam.X, epsilon);
  SearchParameters P = make_search_parameters(fam.X, o.ell, o.j, epsilon);
  std::shared_ptr<const CoefficientOracle> oracle;
  if (!o.oracle_cmd.empty()) {
    oracle = shared_subprocess(o, P.mod);
  } else {
    i64 reach = P.half_integral ? (i64)((i128)o.Q * o.Q * o.Q * o.nmax) : o.Q * o.nmax;
    oracle = make_factory(o, fam, P.mod)(reach);
  }
  CoeffFn a = [&](i64 n) { return oracle->fetch(n); };
  VerifyReport r = verify_congruence(P, o.Q, a, o.nmax);
  json rec = base_record("verify");
  rec["input"] = {{"family", fam.name}, {"eta", fam.X.str()},
                  {"ell", o.ell},       {"j", o.j},
                  {"epsilon", epsilon}, {"Q", o.Q},
                  {"nmax", o.nmax},
                  {"oracle", o.oracle_cmd.empty() ? "builtin" : o.oracle_cmd}};
  rec["checked"] = r.checked;
  rec["holds"] = !r.violating_n.has_value();
  if (r.violating_n) rec["violating_n"] = *r.violating_n;
  em.emit(rec);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"exact eta-quotient expansions, Condition C, and interesting-prime searches"};
  app.require_subcommand(1);

  auto add_eta = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("eta", o.eta, "eta-quotient as delta:r,delta:r,...");
    if (required) opt->required();
  };
  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", o.out_path, "write NDJSON records to this path");
    c->add_flag("--pretty", o.pretty, "also print records as key/value text");
  };
  auto add_modsearch = [&](CLI::App* c) {
    c->add_option("--ell", o.ell, "odd prime ell")->required();
    c->add_option("--j", o.j, "power j (congruences mod ell^j)");
    c->add_option("--epsilon", o.epsilon, "Condition C sign (-1, 0, +1)")
        ->check(CLI::IsMember({-1, 0, 1}));
    c->add_option("--family", o.family,
                  "partition | overpartition | color24 | core3 | custom-eta");
    c->add_option("--eta", o.eta, "eta-quotient for --family custom-eta");
    c->add_option("--oracle", o.oracle_cmd, "external coefficient backend command");
    c->add_option("--jobs", o.jobs, "parallel candidate scans (default: cores)");
  };

  CLI::App* c_info = app.add_subcommand("info", "invariants and cusp table");
  add_eta(c_info, true);
  add_common(c_info);

  CLI::App* c_expand = app.add_subcommand("expand", "expansion at infinity");
  add_eta(c_expand, true);
  c_expand->add_option("--prec", o.prec, "exponent bound (coefficients of q^e, e < prec)");
  c_expand->add_option("--mod", o.mod, "reduce coefficients mod this integer");
  add_common(c_expand);

  CLI::App* c_cusp = app.add_subcommand("cusp-expand", "expansion at a cusp of Gamma_0(N)");
  add_eta(c_cusp, true);
  c_cusp->add_option("--cusp", o.cusp_text, "cusp a/c (or oo)")->required();
  c_cusp->add_option("--terms", o.terms, "number of lattice terms to print");
  add_common(c_cusp);

  CLI::App* c_cc = app.add_subcommand("condition-c", "decide Condition C and epsilon");
  add_eta(c_cc, true);
  c_cc->add_option("--ell", o.ell, "odd prime ell")->required();
  add_common(c_cc);

  CLI::App* c_params = app.add_subcommand("params", "beta/kappa/Sturm machinery");
  add_eta(c_params, true);
  c_params->add_option("--ell", o.ell, "odd prime ell")->required();
  c_params->add_option("--j", o.j, "power j");
  c_params->add_option("--epsilon", o.epsilon, "Condition C sign")->check(CLI::IsMember({-1, 0, 1}));
  add_common(c_params);

  CLI::App* c_search = app.add_subcommand("search", "scan candidate primes Q = -1 mod N*ell^j");
  add_modsearch(c_search);
  c_search->add_option("--qmin", o.qmin, "range lower end (default 2)");
  c_search->add_option("--qmax", o.qmax, "range upper end")->required();
  add_common(c_search);

  CLI::App* c_verify = app.add_subcommand("verify", "spot-check the theorem congruence");
  add_modsearch(c_verify);
  c_verify->add_option("--q", o.Q, "the prime Q")->required();
  c_verify->add_option("--nmax", o.nmax, "check n = 1..nmax (default 5)");
  add_common(c_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (CLI::App* c : {c_search, c_verify, c_params})
    if (c->parsed() && c->count("--epsilon")) o.epsilon_set = true;

  try {
    Emitter em(o.out_path, o.pretty);
    if (c_info->parsed()) return cmd_info(o, em);
    if (c_expand->parsed()) return cmd_expand(o, em);
    if (c_cusp->parsed()) return cmd_cusp_expand(o, em);
    if (c_cc->parsed()) return cmd_condition_c(o, em);
    if (c_params->parsed()) return cmd_params(o, em);
    if (c_search->parsed()) return cmd_search(o, em);
    if (c_verify->parsed()) return cmd_verify(o, em);
    return 2;
  } catch (const OracleError& e) {
    std::fprintf(stderr, "oracle failure: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal consistency failure: %s\n", e.what());
    return 4;
  }
}
