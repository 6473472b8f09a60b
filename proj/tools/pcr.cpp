// Command-line front end. Exit codes: 0 success or positive answer, 1 negative
// answer, 2 usage or input error, 3 budget exceeded.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "pcr/calculus.hpp"
#include "pcr/constants.hpp"
#include "pcr/families.hpp"
#include "pcr/parse.hpp"
#include "pcr/prover.hpp"
#include "pcr/semantics.hpp"
#include "pcr/tmc.hpp"

namespace {

using namespace pcr;
using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kBudget = 3 };

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

Formula read_formula(const std::string& path) { return parse_formula(read_file(path)); }

void print_witness(const Structure& s) { std::cout << to_json(s) << '\n'; }

std::string version_text() {
  std::ostringstream out;
  out << "pcr " << kVersion << '\n';
  out << "d = " << kLineBound << '\n';
  out << "e = " << kLengthFactor << '\n';
  out << "K_E = [";
  for (auto e : {EScheme::E1, EScheme::E2, EScheme::E3, EScheme::E4})
    out << (e == EScheme::E1 ? "" : ", ") << to_string(e) << ": " << e_scheme_size(e);
  out << "]\n";
  out << "c_alpha = " << kDecoderFactor << '\n';
  for (const auto& mc : kMachineConstants) out << "C_M(" << mc.machine << ") = " << mc.c_m << '\n';
  return out.str();
}

std::string stats_json(const ProverStats& s) {
  Json j;
  j["counted_sequents"] = s.counted_sequents;
  if (s.cost_at_root) {
    j["cost"] = *s.cost_at_root;
    j["bound"] = kLineBound << *s.cost_at_root;
  } else {
    j["cost"] = nullptr;
    j["bound"] = nullptr;
  }
  j["max_line"] = s.max_line;
  return j.dump(2);
}

int run_prove(const std::string& file, const std::string& out, const std::string& stats, bool quantified) {
  const Sequent s = parse_as_sequent(read_file(file));
  if (!quantified && !s.is_quantifier_free()) throw InputError("prove takes quantifier-free sequents; use gprove");
  ProveResult r = quantified ? gprove(s) : prove(s);
  if (!r.valid()) {
    std::cout << "NOT_VALID\n";
    print_witness(*r.counterexample);
    return kNegative;
  }
  write_output(out, proof_to_json(*r.proof, 1));
  if (!stats.empty()) write_output(stats, stats_json(r.stats));
  if (!out.empty() && out != "-") std::cout << "PROVED " << r.stats.counted_sequents << " counted sequents\n";
  return kOk;
}

int run_check(const std::string& file, bool quantified) {
  Proof p;
  try {
    p = proof_from_json(read_file(file));
  } catch (const MalformedProof& e) {
    std::cerr << "malformed proof: " << e.what() << '\n';
    return kUsage;
  }
  const CheckResult r = quantified ? check_g(p) : check_pk(p);
  if (r.ok()) {
    std::cout << "OK\n";
    return kOk;
  }
  std::cout << "INVALID\n";
  for (const auto& e : r.errors) std::cout << e.path << " [" << to_string(e.rule) << "]: " << e.message << '\n';
  return kNegative;
}

int run_sat_pi1(const std::string& file, const SolverLimits& limits, unsigned jobs) {
  const Pi1Result r = sat_pi1(read_formula(file), limits, jobs);
  std::cout << (r.status == SatStatus::BudgetExceeded ? "BUDGET_EXCEEDED" : to_string(r.status)) << '\n';
  if (r.status == SatStatus::BudgetExceeded) {
    std::cout << r.budget_reason << '\n';
    return kBudget;
  }
  if (r.witness) print_witness(*r.witness);
  return r.status == SatStatus::Sat ? kOk : kNegative;
}

int run_valid(const std::string& file) {
  auto parsed = parse_formula_or_sequent(read_file(file));
  if (auto* s = std::get_if<Sequent>(&parsed)) {
    if (!s->is_quantifier_free()) throw InputError("valid takes quantifier-free sequents");
    if (sequent_valid(*s)) {
      std::cout << "VALID\n";
      return kOk;
    }
    std::cout << "INVALID\n";
    print_witness(*counterexample(*s));
    return kNegative;
  }
  const Formula& f = std::get<Formula>(parsed);
  if (f.is_quantifier_free()) {
    const SatResult r = sat_pc(Formula::negation(f));
    std::cout << (r.sat() ? "INVALID" : "VALID") << '\n';
    if (r.witness) print_witness(*r.witness);
    return r.sat() ? kNegative : kOk;
  }
  const bool valid = valid_q_bruteforce(f);
  std::cout << (valid ? "VALID" : "INVALID") << '\n';
  return valid ? kOk : kNegative;
}

int run_simulate(const std::string& file, const std::string& input, std::size_t max_steps) {
  const MachineSpec m = machine_from_json(read_file(file));
  auto run = simulate(m, input, max_steps);
  if (!run) {
    std::cout << "REJECT\n";
    return kNegative;
  }
  std::cout << "ACCEPT in " << run->size() - 1 << " steps\n";
  for (std::size_t i = 0; i < run->size(); ++i) {
    const auto& c = (*run)[i];
    std::cout << i << ' ' << c.state << ' ' << c.head << ' ' << c.tape << '\n';
  }
  return kOk;
}

int run_bench_size(const std::string& file, const std::vector<std::size_t>& sizes) {
  const MachineSpec m = machine_from_json(read_file(file));
  std::cout << "n\tlength\tlength/n\tgrowth\n";
  std::size_t previous = 0;
  for (std::size_t n : sizes) {
    std::string x(n, '0');
    if (n > 0) x[0] = '1';
    const std::size_t len = length(compile(m, x).formula);
    std::cout << n << '\t' << len << '\t' << (n ? static_cast<double>(len) / static_cast<double>(n) : 0.0) << '\t';
    if (previous)
      std::cout << static_cast<double>(len) / static_cast<double>(previous);
    else
      std::cout << '-';
    std::cout << '\n';
    previous = len;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativized propositional calculus toolkit"};
  app.require_subcommand(0, 1);
  unsigned jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads for parallel stages")->check(CLI::PositiveNumber);
  bool show_version = false;
  app.add_flag("--version", show_version, "Print version and calibrated constants");

  std::string file, out, stats, structure, input;
  std::size_t time_exp = 0, max_steps = 0, wphp_n = 1;
  bool quantified = false;
  SolverLimits limits;
  std::vector<std::size_t> sizes{4, 8, 16, 32};

  auto* parse_cmd = app.add_subcommand("parse", "Print the canonical form of a formula or sequent");
  parse_cmd->add_option("file", file)->required();
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula or sequent in a structure");
  eval_cmd->add_option("file", file)->required();
  eval_cmd->add_option("--structure", structure, "Structure JSON")->required();
  auto* sat_cmd = app.add_subcommand("sat", "Satisfiability of a quantifier-free formula");
  sat_cmd->add_option("file", file)->required();
  auto* valid_cmd = app.add_subcommand("valid", "Validity of a formula or sequent");
  valid_cmd->add_option("file", file)->required();
  auto* pi1_cmd = app.add_subcommand("sat-pi1", "Satisfiability of a Pi1 formula by expansion");
  pi1_cmd->add_option("file", file)->required();
  pi1_cmd->add_option("--max-universal", limits.max_universal_vars, "log2 of the expansion budget");
  pi1_cmd->add_option("--max-strings", limits.max_oracle_strings, "Distinct oracle strings allowed");
  pi1_cmd->add_option("--max-decisions", limits.max_structures, "Search decisions allowed");
  auto* prove_cmd = app.add_subcommand("prove", "PK(R) proof of a quantifier-free sequent");
  auto* gprove_cmd = app.add_subcommand("gprove", "G(R) proof of a sequent");
  for (auto* cmd : {prove_cmd, gprove_cmd}) {
    cmd->add_option("file", file)->required();
    cmd->add_option("--out", out, "Proof JSON output (default stdout)");
    cmd->add_option("--stats", stats, "Stats JSON output");
  }
  auto* check_cmd = app.add_subcommand("check", "Check a proof file");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_flag("--quantified", quantified, "Allow the G(R) quantifier rules");
  auto* compile_cmd = app.add_subcommand("compile-tm", "Compile a machine and input to a Pi1 formula");
  compile_cmd->add_option("machine", file)->required();
  compile_cmd->add_option("--input", input, "Input bits");
  compile_cmd->add_option("--time-exp", time_exp, "Time exponent t (default |input|)");
  compile_cmd->add_option("--out", out, "Formula output (default stdout)");
  auto* sim_cmd = app.add_subcommand("simulate", "Search for an accepting run");
  sim_cmd->add_option("machine", file)->required();
  sim_cmd->add_option("--input", input, "Input bits");
  sim_cmd->add_option("--max-steps", max_steps, "Step bound")->required();
  auto* family_cmd = app.add_subcommand("family", "Generate benchmark formulas");
  auto* wphp_cmd = family_cmd->add_subcommand("wphp", "Weak pigeonhole principle");
  family_cmd->require_subcommand(1);
  wphp_cmd->add_option("--n", wphp_n, "Hole bits")->required()->check(CLI::PositiveNumber);
  wphp_cmd->add_option("--out", out, "Formula output (default stdout)");
  auto* bench_cmd = app.add_subcommand("bench-size", "Formula length against input length");
  bench_cmd->add_option("machine", file)->required();
  bench_cmd->add_option("--inputs", sizes, "Input lengths")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (show_version) {
      std::cout << version_text();
      return kOk;
    }
    if (*parse_cmd) {
      auto parsed = parse_formula_or_sequent(read_file(file));
      std::visit([](const auto& v) { std::cout << to_string(v) << '\n'; }, parsed);
      return kOk;
    }
    if (*eval_cmd) {
      const Structure s = structure_from_json(read_file(structure));
      auto parsed = parse_formula_or_sequent(read_file(file));
      const bool v = std::visit([&](const auto& x) { return eval(x, s); }, parsed);
      std::cout << (v ? 1 : 0) << '\n';
      return kOk;
    }
    if (*sat_cmd) {
      const Formula f = read_formula(file);
      if (!f.is_quantifier_free()) throw InputError("sat takes quantifier-free formulas; use sat-pi1");
      const SatResult r = sat_pc(f);
      std::cout << (r.sat() ? "SAT" : "UNSAT") << '\n';
      if (r.witness) print_witness(*r.witness);
      return r.sat() ? kOk : kNegative;
    }
    if (*valid_cmd) return run_valid(file);
    if (*pi1_cmd) return run_sat_pi1(file, limits, jobs);
    if (*prove_cmd) return run_prove(file, out, stats, false);
    if (*gprove_cmd) return run_prove(file, out, stats, true);
    if (*check_cmd) return run_check(file, quantified);
    if (*compile_cmd) {
      const Compiled c = compile(machine_from_json(read_file(file)), input, time_exp);
      write_output(out, to_string(c.formula));
      if (!out.empty() && out != "-")
        std::cout << "length " << length(c.formula) << ", " << c.block.universals.size() << " universal variables, t = "
                  << c.enc.t << '\n';
      return kOk;
    }
    if (*sim_cmd) return run_simulate(file, input, max_steps);
    if (*wphp_cmd) {
      write_output(out, to_string(wphp(static_cast<unsigned>(wphp_n))));
      return kOk;
    }
    if (*bench_cmd) return run_bench_size(file, sizes);
    std::cout << app.help();
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "syntax error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
