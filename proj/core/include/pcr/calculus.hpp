// PK(R) and G(R) proof objects, the strict checker, and the E1-E4 derivations.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcr/formula.hpp"

namespace pcr {

enum class RuleTag {
  AxId, AxTrue, AxFalse, AxRSubst,
  WeakL, WeakR, ExchL, ExchR, ContrL, ContrR,
  NotL, NotR, AndL, AndR, OrL, OrR, Cut,
  AllL, AllR, ExL, ExR,
};
std::string_view to_string(RuleTag t);
std::optional<RuleTag> rule_from_string(std::string_view s);
bool is_quantifier_rule(RuleTag t);
// Number of premises the rule takes.
std::size_t premise_count(RuleTag t);

struct RuleParams {
  std::size_t index = 0;               // ExchL/ExchR: swap positions index, index+1
  std::optional<Formula> cut;          // Cut: the cut formula (inferred if absent)
  std::string var;                     // AllL/ExR: bound variable (optional)
  std::optional<Formula> instance;     // AllL/ExR: instantiation formula
  std::string eigen;                   // AllR/ExL: eigenvariable
  std::optional<std::size_t> position;  // AxRSubst: substituted argument (inferred if absent)

  friend bool operator==(const RuleParams&, const RuleParams&) = default;
};

struct Proof {
  Sequent conclusion;
  RuleTag rule = RuleTag::AxId;
  RuleParams params;
  std::vector<Proof> premises;

  friend bool operator==(const Proof&, const Proof&) = default;
};

struct CheckError {
  std::string path;  // "root", "root.0", "root.0.1", ...
  RuleTag rule;
  std::string message;
};

struct CheckResult {
  std::vector<CheckError> errors;  // pre-order
  bool ok() const noexcept { return errors.empty(); }
};

// PK(R): quantifier rules and quantified formulas are rejected.
CheckResult check_pk(const Proof& p);
// G(R): PK(R) plus the four quantifier rules.
CheckResult check_g(const Proof& p);

// Nodes other than weakenings and exchanges.
std::size_t counted_size(const Proof& p);
std::size_t node_count(const Proof& p);
// Largest length() of any conclusion in the tree.
std::size_t max_line_length(const Proof& p);

// Extends the conclusion of `p` to `target` with weakenings and adjacent
// exchanges. Each cedent of the conclusion must be a sub-multiset of the
// corresponding target cedent.
Proof weaken_to(Proof p, const Sequent& target);

// Cut on `a` with conclusion `context`. `left` must weaken to
// context.antecedent |- context.succedent, a and `right` to
// a, context.antecedent |- context.succedent.
Proof cut_on(Proof left, Proof right, const Formula& a, const Sequent& context);

enum class EScheme { E1, E2, E3, E4 };
std::string_view to_string(EScheme e);

// E1: A, R(C,A,D) |- R(C,1,D)
// E2: A, R(C,1,D) |- R(C,A,D)
// E3: R(C,A,D) |- A, R(C,0,D)
// E4: R(C,0,D) |- A, R(C,A,D)
Proof derive_E(EScheme which, const Formula& a, const std::vector<Formula>& c,
               const std::vector<Formula>& d);
// counted_size of derive_E(which, ...), the same for all arguments.
std::size_t e_scheme_size(EScheme which);

// Proof files: {"conclusion": "<sequent>", "rule": "<tag>", "params": {...},
// "premises": [...]}.
class MalformedProof : public Error {
 public:
  using Error::Error;
};
std::string proof_to_json(const Proof& p, int indent = -1);
Proof proof_from_json(const std::string& text);

}  // namespace pcr
