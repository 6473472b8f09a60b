// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "gen.hpp"
#include "pcr/calculus.hpp"
#include "pcr/families.hpp"
#include "pcr/parse.hpp"
#include "pcr/prover.hpp"
#include "pcr/semantics.hpp"
#include "pcr/tmc.hpp"

namespace {

using namespace pcr;
using pcr::testing::Rng;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MachineSpec first1() { return machine_from_json(read_file(std::string(PCR_DATA_DIR) + "/machines/first1.json")); }

Outcome cost_example() {
  const std::size_t c = cost(parse_formula("R(p & q, p & q, p, 0, 1, 1)"));
  return {c == 5, "cost = " + std::to_string(c)};
}

Outcome validity_example() {
  const Formula f = parse_formula("(R(p) & R(~p)) => (R(q) | R(~q))");
  const bool valid = valid_pc(f);
  const SatResult neg = sat_pc(Formula::negation(f));
  return {valid && !neg.sat(), std::string("valid_pc = ") + (valid ? "1" : "0") + ", sat_pc(~F) = " +
                                   std::string(to_string(neg.status))};
}

Outcome solver_oracle() {
  Rng rng(3);
  std::size_t disagreements = 0, sat = 0, bad_witness = 0;
  for (int i = 0; i < 500; ++i) {
    const Formula f = testing::random_solver_formula(rng);
    const SatResult r = sat_pc(f);
    if (r.sat() != testing::naive_sat(f)) ++disagreements;
    if (r.sat()) {
      ++sat;
      if (!eval(f, *r.witness)) ++bad_witness;
    }
  }
  return {disagreements == 0 && bad_witness == 0,
          std::to_string(disagreements) + " disagreements, " + std::to_string(bad_witness) + " bad witnesses, " +
              std::to_string(sat) + "/500 satisfiable"};
}

Outcome proof_size_bound() {
  Rng rng(4);
  std::size_t failures = 0;
  double worst_d = 0, worst_e = 0;
  std::size_t max_cost = 0, r_steps = 0;
  for (int i = 0; i < 200; ++i) {
    const Sequent s = testing::random_valid_sequent(rng, 10);
    const ProveResult r = prove(s);
    const std::size_t c = cost(s);
    max_cost = std::max(max_cost, c);
    bool ok = r.valid() && check_pk(*r.proof).ok() && r.proof->conclusion == s;
    if (ok) {
      const double d = static_cast<double>(r.stats.counted_sequents) / static_cast<double>(std::size_t{1} << c);
      const double e = static_cast<double>(r.stats.max_line) / static_cast<double>(length(s));
      worst_d = std::max(worst_d, d);
      worst_e = std::max(worst_e, e);
      ok = r.stats.counted_sequents <= kLineBound << c && r.stats.max_line <= kLengthFactor * length(s) &&
           (r.stats.r_steps == 0 || (r.stats.r_drop_min == 1 && r.stats.r_drop_max == 1));
      r_steps += r.stats.r_steps;
    }
    if (!ok) ++failures;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu failures; max counted/2^c = %.2f (d = %zu), max max_line/length = %.2f (e = %zu), "
                "max cost %zu, %zu R-steps",
                failures, worst_d, kLineBound, worst_e, kLengthFactor, max_cost, r_steps);
  return {failures == 0, buf};
}

Formula formula_of_length(Rng& rng, std::size_t len) {
  testing::GenOptions opt;
  opt.max_depth = 6;
  opt.max_r = 2;
  for (int i = 0; i < 500; ++i) {
    Formula f = testing::random_formula(rng, opt);
    if (length(f) == len) return f;
  }
  Formula f = Formula::atom("p");
  while (length(f) < len) f = Formula::negation(f);
  return f;
}

Outcome e_constancy() {
  Rng rng(5);
  std::set<std::size_t> sizes[4];
  std::size_t rejected = 0;
  testing::GenOptions small;
  small.max_depth = 2;
  small.max_r = 1;
  for (std::size_t len = 1; len <= 50; ++len) {
    const Formula a = formula_of_length(rng, len);
    for (std::size_t cd = 0; cd <= 10; ++cd) {
      std::vector<Formula> c, d;
      for (std::size_t i = 0; i < cd; ++i) (i % 2 ? d : c).push_back(testing::random_formula(rng, small));
      for (int w = 0; w < 4; ++w) {
        const Proof p = derive_E(static_cast<EScheme>(w), a, c, d);
        if (!check_pk(p).ok()) ++rejected;
        sizes[w].insert(counted_size(p));
      }
    }
  }
  std::string detail = std::to_string(rejected) + " rejected;";
  bool constant = true;
  for (int w = 0; w < 4; ++w) {
    constant = constant && sizes[w].size() == 1 && *sizes[w].begin() == e_scheme_size(static_cast<EScheme>(w));
    detail += " K_E" + std::to_string(w + 1) + " = {";
    for (auto s : sizes[w]) detail += std::to_string(s) + (s == *sizes[w].rbegin() ? "" : ",");
    detail += "}";
  }
  return {rejected == 0 && constant, detail};
}

Outcome gprove_suite() {
  std::size_t proved = 0, checked = 0, valid = 0;
  const auto suite = testing::quantified_suite();
  for (const auto& text : suite) {
    const Sequent s = parse_sequent(text);
    if (valid_q_bruteforce(testing::closed_sequent_formula(s), 3)) ++valid;
    const ProveResult r = gprove(s);
    if (!r.valid()) continue;
    ++proved;
    if (check_g(*r.proof).ok() && r.proof->conclusion == s) ++checked;
  }
  const std::size_t n = suite.size();
  return {proved == n && checked == n && valid == n, std::to_string(proved) + "/" + std::to_string(n) + " proved, " +
                                                         std::to_string(checked) + " accepted by check_g, " +
                                                         std::to_string(valid) + " valid by brute force"};
}

Outcome wphp_validity() {
  const bool v1 = valid_q_bruteforce(wphp(1), 3);
  Rng rng(7);
  const Formula f2 = wphp(2);
  int holds = 0;
  for (int i = 0; i < 50; ++i) holds += eval(f2, testing::random_structure(rng, {}, 6)) ? 1 : 0;
  return {v1 && holds == 50,
          std::string("wphp(1) valid = ") + (v1 ? "1" : "0") + ", wphp(2) true on " + std::to_string(holds) + "/50"};
}

Outcome compiler_end_to_end() {
  const MachineSpec m = first1();
  const Compiled acc = compile(m, "10", 2);
  const auto run = simulate(acc.machine, "10", acc.enc.times() - 1);
  if (!run) return {false, "no accepting run of the normalized machine on 10"};
  const Structure w = witness_structure(acc.machine, "10", acc.enc, *run);
  const VerifyReport rep = verify_witness(acc, w);
  SolverLimits limits;
  const Pi1Result rej = sat_pi1(compile(m, "00", 1).formula, limits);
  std::ostringstream out;
  out << "\"10\", t=2: " << acc.block.universals.size() << " universals, "
      << (rep.exhaustive ? "exhaustive " : "sampled ") << rep.checked << " checked, " << rep.violations
      << " violations";
  if (!rep.exhaustive) out << " (+" << rep.guarded_checked << " guarded, " << rep.guarded_violations << " violations)";
  out << "; \"00\", t=1: " << to_string(rej.status);
  return {rep.ok() && rej.status == SatStatus::Unsat, out.str()};
}

Outcome linearity() {
  const MachineSpec m = first1();
  std::ostringstream out;
  bool ok = true;
  std::size_t previous = 0;
  for (std::size_t n : {4, 8, 16, 32}) {
    std::string x;
    for (std::size_t i = 0; i < n; ++i) x += i % 3 == 0 ? '1' : '0';
    const std::size_t len = length(compile(m, x).formula);
    out << (previous ? ", " : "") << n << ":" << len;
    if (previous) {
      const double ratio = static_cast<double>(len) / static_cast<double>(previous);
      ok = ok && ratio <= 2.2;
      char buf[32];
      std::snprintf(buf, sizeof buf, " (x%.3f)", ratio);
      out << buf;
    }
    previous = len;
  }
  return {ok, out.str()};
}

Outcome circuits() {
  std::size_t mismatches = 0, worst_gates = 0;
  double worst_ratio = 0;
  for (std::size_t n = 1; n <= 1024; ++n) {
    const Circuit c = decoder_circuit(n);
    worst_ratio = std::max(worst_ratio, static_cast<double>(c.gate_count()) / static_cast<double>(n));
    if (c.gate_count() > kDecoderFactor * n) ++worst_gates;
    if (n > 64) continue;
    for (std::size_t v = 0; v < (std::size_t{1} << c.inputs); ++v) {
      std::vector<bool> in(c.inputs);
      for (std::size_t b = 0; b < c.inputs; ++b) in[b] = (v >> b) & 1;
      const auto out = c.evaluate(in);
      for (std::size_t i = 1; i <= n; ++i)
        if (out[i - 1] != (v == i)) ++mismatches;
    }
  }
  for (std::size_t m = 1; m <= 10; ++m) {
    const Circuit c = increment_circuit(m);
    for (std::size_t v = 0; v < (std::size_t{1} << m); ++v) {
      std::vector<bool> in(m);
      for (std::size_t b = 0; b < m; ++b) in[b] = (v >> b) & 1;
      const auto out = c.evaluate(in);
      const std::size_t sum = v + 1;
      for (std::size_t b = 0; b <= m; ++b)
        if (out[b] != (((sum >> b) & 1) != 0)) ++mismatches;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu mismatches, %zu decoders over c_alpha*n (c_alpha = %zu, max gates/n = %.2f)",
                mismatches, worst_gates, kDecoderFactor, worst_ratio);
  return {mismatches == 0 && worst_gates == 0, buf};
}

Outcome round_trip() {
  Rng rng(11);
  testing::GenOptions opt;
  opt.max_depth = 5;
  opt.max_r = 3;
  opt.nullary_r = true;
  opt.quantifiers = true;
  std::size_t failures = 0;
  std::set<Kind> kinds;
  bool nullary = false, nested = false;
  std::function<void(const Formula&, unsigned)> visit = [&](const Formula& f, unsigned qdepth) {
    kinds.insert(f.kind());
    if (f.kind() == Kind::RApp && f.children().empty()) nullary = true;
    const unsigned d = qdepth + (f.is_quantifier() ? 1 : 0);
    if (d >= 2) nested = true;
    for (const auto& c : f.children()) visit(c, d);
  };
  for (int i = 0; i < 1000; ++i) {
    const Formula f = testing::random_formula(rng, opt);
    visit(f, 0);
    try {
      if (!(parse_formula(to_string(f)) == f)) ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
  const bool coverage = kinds.size() == 8 && nullary && nested;
  return {failures == 0 && coverage, std::to_string(failures) + " failures, " + std::to_string(kinds.size()) +
                                         "/8 node kinds, nullary R " + (nullary ? "yes" : "no") +
                                         ", nested quantifiers " + (nested ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"cost example", cost_example},
      {"validity example", validity_example},
      {"solver oracle equivalence", solver_oracle},
      {"prover size and line bounds", proof_size_bound},
      {"E-scheme constancy", e_constancy},
      {"quantified prover suite", gprove_suite},
      {"WPHP validity", wphp_validity},
      {"machine compiler end to end", compiler_end_to_end},
      {"compiled length linearity", linearity},
      {"circuit oracles", circuits},
      {"print/parse round trip", round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
