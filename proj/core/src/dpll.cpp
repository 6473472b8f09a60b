#include "dpll.hpp"

#include <algorithm>

namespace pcr::detail {

int Dpll::new_var(bool decision) {
  value_.push_back(-1);
  decision_var_.push_back(decision);
  watches_.emplace_back();
  watches_.emplace_back();
  return static_cast<int>(value_.size()) - 1;
}

void Dpll::add_clause(std::vector<int> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 0; i + 1 < lits.size(); ++i)
    if (lit_var(lits[i]) == lit_var(lits[i + 1])) return;  // tautology
  if (lits.empty()) {
    empty_clause_ = true;
    return;
  }
  if (lits.size() == 1) {
    pending_units_.push_back(lits[0]);
    return;
  }
  const int idx = static_cast<int>(clauses_.size());
  watches_[lits[0]].push_back(idx);
  watches_[lits[1]].push_back(idx);
  clauses_.push_back(std::move(lits));
}

bool Dpll::enqueue(int lit) {
  int v = lit_value(lit);
  if (v == 1) return true;
  if (v == 0) return false;
  value_[lit_var(lit)] = lit_negated(lit) ? 0 : 1;
  trail_.push_back(lit);
  return true;
}

bool Dpll::propagate() {
  while (qhead_ < trail_.size()) {
    const int false_lit = trail_[qhead_++] ^ 1;
    auto& ws = watches_[false_lit];
    std::size_t keep = 0;
    bool conflict = false;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const int ci = ws[i];
      if (conflict) {
        ws[keep++] = ci;
        continue;
      }
      auto& c = clauses_[ci];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (lit_value(c[0]) == 1) {
        ws[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (lit_value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[keep++] = ci;
      if (!enqueue(c[0])) conflict = true;
    }
    ws.resize(keep);
    if (conflict) return false;
  }
  return true;
}

void Dpll::undo_to(std::size_t trail_size) {
  while (trail_.size() > trail_size) {
    value_[lit_var(trail_.back())] = -1;
    trail_.pop_back();
  }
  qhead_ = std::min(qhead_, trail_size);
}

int Dpll::pick() const {
  int fallback = -1;
  for (int v = 0; v < var_count(); ++v) {
    if (value_[v] >= 0) continue;
    if (decision_var_[v]) return v;
    if (fallback < 0) fallback = v;
  }
  return fallback;
}

Dpll::Result Dpll::solve(std::uint64_t max_decisions) {
  if (empty_clause_) return Result::Unsat;
  for (int lit : pending_units_)
    if (!enqueue(lit)) return Result::Unsat;
  if (!propagate()) return Result::Unsat;
  for (;;) {
    const int v = pick();
    if (v < 0) return Result::Sat;
    if (++decisions_ > max_decisions) return Result::Budget;
    trail_lim_.push_back(trail_.size());
    flipped_.push_back(false);
    enqueue(make_lit(v, true));
    while (!propagate()) {
      for (;;) {
        if (trail_lim_.empty()) return Result::Unsat;
        const std::size_t start = trail_lim_.back();
        const int decision = trail_[start];
        const bool was_flipped = flipped_.back();
        trail_lim_.pop_back();
        flipped_.pop_back();
        undo_to(start);
        if (!was_flipped) {
          trail_lim_.push_back(trail_.size());
          flipped_.push_back(true);
          enqueue(decision ^ 1);
          break;
        }
      }
    }
  }
}

}  // namespace pcr::detail
