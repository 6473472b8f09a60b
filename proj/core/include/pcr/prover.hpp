// Completeness procedures: PK(R) proofs for valid quantifier-free sequents by
// recursion on cost, and G(R) proofs for quantified sequents by expansion.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pcr/calculus.hpp"
#include "pcr/semantics.hpp"

namespace pcr {

struct ProverStats {
  std::size_t counted_sequents = 0;
  std::size_t max_line = 0;
  std::optional<std::size_t> cost_at_root;  // absent for quantified input
  std::size_t recursion_depth = 0;
  std::size_t r_steps = 0;
  // Smallest and largest cost drop from a conclusion to an R-case premise.
  std::size_t r_drop_min = 0;
  std::size_t r_drop_max = 0;
};

struct ProveResult {
  std::optional<Proof> proof;
  // Set when the sequent is not valid; falsifies it.
  std::optional<Structure> counterexample;
  ProverStats stats;

  bool valid() const noexcept { return proof.has_value(); }
};

// Lines per proof are at most kLineBound * 2^cost(S), and each line has length
// at most kLengthFactor * length(S).
inline constexpr std::size_t kLineBound = 21;
inline constexpr std::size_t kLengthFactor = 4;

ProveResult prove(const Sequent& s);

// A formula occurrence: index into the succedent or the antecedent.
struct Occurrence {
  bool succedent = true;
  std::size_t index = 0;
};

// Costs of the premises prove() generates when decomposing `target`.
std::vector<std::size_t> premise_costs(const Sequent& s, Occurrence target);

// G(R) proofs. Quantifiers are removed outermost first (succedent scanned
// before antecedent); existential succedent and universal antecedent
// formulas are expanded by instances 0 and 1, the other two by a fresh
// eigenvariable y0, y1, ... On a quantifier-free sequent this is prove().
ProveResult gprove(const Sequent& s);

}  // namespace pcr
