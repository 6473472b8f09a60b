// Structures, evaluation, and the satisfiability/validity deciders.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "pcr/formula.hpp"

namespace pcr {

// Truth values for atoms plus a finite oracle set. Strings not listed are not
// in the oracle.
struct Structure {
  std::map<std::string, bool> atoms;
  std::set<std::string> oracle;

  bool contains(const std::string& s) const { return oracle.count(s) != 0; }
  friend bool operator==(const Structure&, const Structure&) = default;
};

// {"atoms": {"p": 1}, "oracle": ["010", ""]}
std::string to_json(const Structure& s);
Structure structure_from_json(const std::string& text);

class EvalError : public Error {
 public:
  explicit EvalError(const std::string& atom)
      : Error("unassigned atom '" + atom + "'"), atom_(atom) {}
  const std::string& atom() const noexcept { return atom_; }

 private:
  std::string atom_;
};

bool eval(const Formula& f, const Structure& s);

// The formula ~G1 | ... | ~Gm | D1 | ... | Dk; an empty sequent gives 0.
Formula sequent_formula(const Sequent& s);
bool eval(const Sequent& s, const Structure& st);

enum class SatStatus { Sat, Unsat, BudgetExceeded };
std::string_view to_string(SatStatus s);

struct SatResult {
  SatStatus status = SatStatus::Unsat;
  std::optional<Structure> witness;

  bool sat() const noexcept { return status == SatStatus::Sat; }
};

// Certificate search for quantifier-free formulas. Atom assignments are tried
// in lexicographic order; oracle strings are decided lazily, one unknown per
// distinct argument string, "out" before "in".
SatResult sat_pc(const Formula& f);
bool valid_pc(const Formula& f);
bool sequent_valid(const Sequent& s);
// A structure falsifying a quantifier-free sequent, if there is one.
std::optional<Structure> counterexample(const Sequent& s);

struct SolverLimits {
  // Expansion may visit at most 2^max_universal_vars universal assignments.
  unsigned max_universal_vars = 22;
  std::size_t max_oracle_strings = 4096;
  // Cap on backtracking decisions in the oracle search.
  std::size_t max_structures = 50'000'000;
};

struct Pi1Stats {
  std::size_t universal_vars = 0;
  std::size_t conjuncts = 0;
  std::uint64_t assignments = 0;  // expansion leaves visited
  std::size_t constraints = 0;
  std::size_t oracle_strings = 0;
  std::size_t cnf_vars = 0;
  std::size_t cnf_clauses = 0;
  std::uint64_t decisions = 0;
};

struct Pi1Result {
  SatStatus status = SatStatus::Unsat;
  std::optional<Structure> witness;
  Pi1Stats stats;
  std::string budget_reason;
};

// A Pi1 formula split into its universal block and quantifier-free matrix.
// Bound variables are renamed apart where they clash.
struct Prenex {
  std::vector<std::string> universals;
  Formula matrix;
};
Prenex prenex_pi1(const Formula& f);

// Expansion solver for Pi1 (or quantifier-free) formulas. Free atoms are
// existential unknowns next to the oracle bits. The matrix is split into its
// top-level conjuncts, each expanded over the universals it mentions;
// assignments that already make a conjunct true are pruned. The remaining
// constraints are decided by DPLL with unit propagation.
//
// `jobs` > 1 expands conjuncts in parallel; results do not depend on it.
Pi1Result sat_pi1(const Formula& f, const SolverLimits& limits = {}, unsigned jobs = 1);

// Exhaustive validity check for closed formulas whose R applications all have
// the same arity m <= max_arity: every subset of {0,1}^m is tried.
bool valid_q_bruteforce(const Formula& f, unsigned max_arity = 4);

// Oracle membership with dense bitmaps for short strings.
class OracleIndex {
 public:
  explicit OracleIndex(const std::set<std::string>& oracle);
  bool contains(std::span<const bool> bits) const;
  bool contains_index(std::size_t length, std::uint64_t index) const;

 private:
  static constexpr std::size_t kDenseMax = 24;
  std::vector<std::vector<bool>> dense_;  // by length
  std::unordered_set<std::string> sparse_;
};

// Evaluates a quantifier-free formula on 64 assignments at once. Lane i of
// inputs[v] is the value of variable `vars[v]` in assignment i.
class BatchEvaluator {
 public:
  BatchEvaluator(const Formula& f, std::vector<std::string> vars);

  std::uint64_t eval(std::span<const std::uint64_t> inputs, const OracleIndex& oracle) const;
  const std::vector<std::string>& vars() const noexcept { return vars_; }
  std::size_t instruction_count() const noexcept { return code_.size(); }

 private:
  enum class Op : unsigned char { Var, Const, Not, And, Or, RApp };
  struct Instr {
    Op op;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::vector<std::uint32_t> args;
  };
  std::vector<std::string> vars_;
  std::vector<Instr> code_;
};

}  // namespace pcr
