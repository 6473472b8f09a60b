// Small DPLL solver: watched-literal unit propagation and chronological
// backtracking, no clause learning.

#pragma once

#include <cstdint>
#include <vector>

namespace pcr::detail {

// Literal encoding: 2 * var + (negated ? 1 : 0).
inline int make_lit(int var, bool negated) { return 2 * var + (negated ? 1 : 0); }
inline int lit_var(int lit) { return lit >> 1; }
inline bool lit_negated(int lit) { return lit & 1; }

class Dpll {
 public:
  enum class Result { Sat, Unsat, Budget };

  int new_var(bool decision = true);
  int var_count() const { return static_cast<int>(value_.size()); }
  std::size_t clause_count() const { return clauses_.size(); }
  void add_clause(std::vector<int> lits);

  Result solve(std::uint64_t max_decisions);
  bool model(int var) const { return value_[var] == 1; }
  std::uint64_t decisions() const { return decisions_; }

 private:
  int lit_value(int lit) const {  // -1 unassigned, 0 false, 1 true
    int v = value_[lit_var(lit)];
    return v < 0 ? -1 : (v ^ (lit & 1));
  }
  bool enqueue(int lit);
  bool propagate();
  void undo_to(std::size_t trail_size);
  int pick() const;

  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watches_;  // by literal
  std::vector<signed char> value_;
  std::vector<bool> decision_var_;
  std::vector<int> trail_;
  std::vector<std::size_t> trail_lim_;
  std::vector<bool> flipped_;
  std::vector<int> pending_units_;
  std::size_t qhead_ = 0;
  std::uint64_t decisions_ = 0;
  bool empty_clause_ = false;
};

}  // namespace pcr::detail
