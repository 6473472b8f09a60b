// Random generators and independent oracles shared by the tests, the
// acceptance runner and the benchmarks.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pcr/formula.hpp"
#include "pcr/semantics.hpp"

namespace pcr::testing {

using Rng = std::mt19937_64;

struct GenOptions {
  std::vector<std::string> atoms{"p", "q", "r", "s"};
  unsigned max_depth = 4;
  unsigned max_arity = 3;
  unsigned max_r = 3;          // R occurrences per formula
  bool nullary_r = false;      // allow R()
  bool quantifiers = false;    // allow all/ex nodes
  bool uniform_arity = false;  // every R gets arity `max_arity`
};

Formula random_formula(Rng& rng, const GenOptions& opt);

// Formulas for the solver oracle: at most 4 atoms, 3 R occurrences and arity
// 3. One in three is a contradiction A & ~A' with A' equivalent to A.
Formula random_solver_formula(Rng& rng);

std::size_t r_count(const Formula& f);

// A formula equivalent to `f` under every structure, built by random
// truth-preserving rewrites.
Formula equivalent_variant(Rng& rng, const Formula& f, unsigned steps);

// A valid quantifier-free sequent with cost(s) <= max_cost.
Sequent random_valid_sequent(Rng& rng, std::size_t max_cost);

// Satisfiability by enumerating atom assignments and every subset of the
// strings any R occurrence could query under that assignment.
bool naive_sat(const Formula& f);

// Thirty valid closed quantified sequents of uniform arity <= 3, quantifier
// depth <= 2 and at most three quantifiers.
std::vector<std::string> quantified_suite();

// Universal closure of the sequent formula, for valid_q_bruteforce.
Formula closed_sequent_formula(const Sequent& s);

// A random structure over the given atoms whose oracle is a random subset of
// {0,1}^arity.
Structure random_structure(Rng& rng, const std::vector<std::string>& atoms, std::size_t arity);

}  // namespace pcr::testing
