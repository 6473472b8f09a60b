// Expansion solver for Pi1 formulas.

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "dpll.hpp"
#include "pcr/semantics.hpp"

namespace pcr {

namespace {

class PrenexBuilder {
 public:
  explicit PrenexBuilder(const Formula& f) {
    collect_names(f, names_);
    claimed_ = free_atoms(f);
  }

  Formula pull(const Formula& f, bool positive, std::vector<std::string>& vars) {
    if (f.is_quantifier_free()) return f;
    switch (f.kind()) {
      case Kind::Not:
        return Formula::negation(pull(f.child(), !positive, vars));
      case Kind::And:
      case Kind::Or: {
        Formula l = pull(f.left(), positive, vars);
        Formula r = pull(f.right(), positive, vars);
        return f.kind() == Kind::And ? Formula::conj(l, r) : Formula::disj(l, r);
      }
      case Kind::Forall:
      case Kind::Exists: {
        const bool universal = (f.kind() == Kind::Forall) == positive;
        if (!universal) throw Error("sat_pi1: formula is not in the Pi1 class");
        std::string name = f.name();
        Formula body = f.body();
        if (claimed_.count(name)) {
          std::string fresh;
          for (std::size_t i = 1;; ++i) {
            fresh = name + "_" + std::to_string(i);
            if (!names_.count(fresh) && !claimed_.count(fresh)) break;
          }
          body = substitute(body, name, Formula::atom(fresh));
          name = fresh;
        }
        claimed_.insert(name);
        vars.push_back(name);
        return pull(body, positive, vars);
      }
      default:
        throw Error("sat_pi1: quantifier inside an R argument");
    }
  }

 private:
  std::set<std::string> names_;
  std::set<std::string> claimed_;
};

// Constant folding under a single variable binding. `var` may be empty, in
// which case only folding happens.
class Binder {
 public:
  Binder(const std::string& var, bool value) : var_(var), value_(value) {}

  Formula run(const Formula& f) {
    if (auto it = memo_.find(f.identity()); it != memo_.end()) return it->second;
    Formula out = step(f);
    memo_.emplace(f.identity(), out);
    return out;
  }

 private:
  Formula step(const Formula& f) {
    switch (f.kind()) {
      case Kind::Atom:
        return (!var_.empty() && f.name() == var_) ? Formula::constant(value_) : f;
      case Kind::Const:
        return f;
      case Kind::Not: {
        Formula a = run(f.child());
        if (a.is_const()) return Formula::constant(!a.bit());
        return a.identity() == f.child().identity() ? f : Formula::negation(a);
      }
      case Kind::And:
      case Kind::Or: {
        const bool is_and = f.kind() == Kind::And;
        Formula l = run(f.left());
        if (l.is_const(!is_and)) return l;
        Formula r = run(f.right());
        if (r.is_const(!is_and)) return r;
        if (l.is_const(is_and)) return r;
        if (r.is_const(is_and)) return l;
        if (l.identity() == f.left().identity() && r.identity() == f.right().identity()) return f;
        return is_and ? Formula::conj(l, r) : Formula::disj(l, r);
      }
      case Kind::RApp: {
        std::vector<Formula> args;
        bool changed = false;
        for (const auto& a : f.children()) {
          args.push_back(run(a));
          changed |= args.back().identity() != a.identity();
        }
        return changed ? Formula::rapp(std::move(args)) : f;
      }
      default:
        throw Error("sat_pi1: unexpected quantifier in matrix");
    }
  }

  const std::string& var_;
  bool value_;
  std::unordered_map<const void*, Formula> memo_;
};

Formula bind_var(const Formula& f, const std::string& var, bool value) { return Binder(var, value).run(f); }

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Kind::And) {
    flatten_and(f.left(), out);
    flatten_and(f.right(), out);
  } else {
    out.push_back(f);
  }
}

class Expander {
 public:
  Expander(const std::unordered_map<std::string, std::size_t>& rank, std::uint64_t budget,
           std::atomic<std::uint64_t>& leaves, std::atomic<bool>& stop)
      : rank_(rank), budget_(budget), leaves_(leaves), stop_(stop) {}

  void expand(const Formula& residual, std::vector<Formula>& out) {
    if (stop_.load(std::memory_order_relaxed)) return;
    if (residual.is_const(true)) {
      leaf();
      return;
    }
    const std::string* var = first_universal(residual);
    if (var == nullptr) {
      leaf();
      out.push_back(residual);
      return;
    }
    const std::string name = *var;
    for (bool b : {false, true}) expand(bind_var(residual, name, b), out);
  }

 private:
  void leaf() {
    if (leaves_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_) stop_.store(true);
  }

  const std::string* first_universal(const Formula& f) const {
    std::unordered_set<const void*> seen;
    const std::string* best = nullptr;
    std::size_t best_rank = 0;
    auto walk = [&](auto&& self, const Formula& g) -> void {
      if (!seen.insert(g.identity()).second) return;
      if (g.kind() == Kind::Atom) {
        auto it = rank_.find(g.name());
        if (it != rank_.end() && (best == nullptr || it->second < best_rank)) {
          best = &it->first;
          best_rank = it->second;
        }
        return;
      }
      for (const auto& c : g.children()) self(self, c);
    };
    walk(walk, f);
    return best;
  }

  const std::unordered_map<std::string, std::size_t>& rank_;
  std::uint64_t budget_;
  std::atomic<std::uint64_t>& leaves_;
  std::atomic<bool>& stop_;
};

struct BudgetExceeded {
  std::string reason;
};

class CnfBuilder {
 public:
  CnfBuilder(detail::Dpll& solver, std::size_t max_strings) : solver_(solver), max_strings_(max_strings) {
    true_var_ = solver_.new_var(false);
    solver_.add_clause({detail::make_lit(true_var_, false)});
  }

  int encode(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    int lit = build(f);
    memo_.emplace(f, lit);
    return lit;
  }

  const std::map<std::string, int>& strings() const { return strings_; }
  const std::map<std::string, int>& atoms() const { return atoms_; }

 private:
  int build(const Formula& f) {
    switch (f.kind()) {
      case Kind::Const:
        return detail::make_lit(true_var_, !f.bit());
      case Kind::Atom: {
        auto [it, fresh] = atoms_.emplace(f.name(), 0);
        if (fresh) it->second = solver_.new_var();
        return detail::make_lit(it->second, false);
      }
      case Kind::Not:
        return encode(f.child()) ^ 1;
      case Kind::And:
      case Kind::Or: {
        std::vector<int> ins{encode(f.left()), encode(f.right())};
        return f.kind() == Kind::And ? gate_and(ins) : gate_or(ins);
      }
      case Kind::RApp:
        return rapp(f);
      default:
        throw Error("sat_pi1: unexpected quantifier in constraint");
    }
  }

  int string_lit(const std::string& s) {
    auto [it, fresh] = strings_.emplace(s, 0);
    if (fresh) {
      if (strings_.size() > max_strings_)
        throw BudgetExceeded{"more than " + std::to_string(max_strings_) + " distinct oracle strings"};
      it->second = solver_.new_var();
    }
    return detail::make_lit(it->second, false);
  }

  int rapp(const Formula& f) {
    std::string fixed;
    std::vector<std::size_t> open;
    std::vector<int> open_lits;
    for (std::size_t i = 0; i < f.children().size(); ++i) {
      const Formula& a = f.children()[i];
      if (a.is_const()) {
        fixed.push_back(a.bit() ? '1' : '0');
      } else {
        fixed.push_back('?');
        open.push_back(i);
        open_lits.push_back(encode(a));
      }
    }
    if (open.empty()) return string_lit(fixed);
    if (open.size() > 20) throw BudgetExceeded{"R application with more than 20 undetermined arguments"};
    std::vector<int> cases;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << open.size()); ++v) {
      std::string s = fixed;
      std::vector<int> conj;
      for (std::size_t k = 0; k < open.size(); ++k) {
        const bool bit = (v >> k) & 1;
        s[open[k]] = bit ? '1' : '0';
        conj.push_back(bit ? open_lits[k] : open_lits[k] ^ 1);
      }
      conj.push_back(string_lit(s));
      cases.push_back(gate_and(conj));
    }
    return gate_or(cases);
  }

  int gate_and(const std::vector<int>& ins) {
    const int x = detail::make_lit(solver_.new_var(false), false);
    std::vector<int> big{x};
    for (int a : ins) {
      solver_.add_clause({x ^ 1, a});
      big.push_back(a ^ 1);
    }
    solver_.add_clause(std::move(big));
    return x;
  }

  int gate_or(const std::vector<int>& ins) {
    std::vector<int> neg;
    for (int a : ins) neg.push_back(a ^ 1);
    return gate_and(neg) ^ 1;
  }

  detail::Dpll& solver_;
  std::size_t max_strings_;
  int true_var_ = 0;
  std::unordered_map<Formula, int, FormulaHash> memo_;
  std::map<std::string, int> strings_;
  std::map<std::string, int> atoms_;
};

}  // namespace

Prenex prenex_pi1(const Formula& f) {
  Prenex p{{}, f};
  PrenexBuilder builder(f);
  p.matrix = builder.pull(f, true, p.universals);
  return p;
}

Pi1Result sat_pi1(const Formula& f, const SolverLimits& limits, unsigned jobs) {
  const FormulaClass cls = classify(f);
  if (cls != FormulaClass::Pi1 && cls != FormulaClass::QuantifierFree)
    throw Error("sat_pi1: unsupported formula class " + std::string(to_string(cls)));
  if (limits.max_universal_vars > 62) throw Error("sat_pi1: max_universal_vars must be at most 62");

  Pi1Result result;
  Prenex pre = prenex_pi1(f);
  result.stats.universal_vars = pre.universals.size();

  std::unordered_map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < pre.universals.size(); ++i) rank.emplace(pre.universals[i], i);

  std::vector<Formula> conjuncts;
  flatten_and(bind_var(pre.matrix, std::string(), false), conjuncts);
  result.stats.conjuncts = conjuncts.size();

  const std::uint64_t budget = std::uint64_t{1} << limits.max_universal_vars;
  std::atomic<std::uint64_t> leaves{0};
  std::atomic<bool> stop{false};
  std::vector<std::vector<Formula>> per_conjunct(conjuncts.size());

  auto work = [&](unsigned tid, unsigned stride) {
    Expander ex(rank, budget, leaves, stop);
    for (std::size_t i = tid; i < conjuncts.size(); i += stride) ex.expand(conjuncts[i], per_conjunct[i]);
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1 || conjuncts.size() < 2) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t, jobs);
    for (auto& th : pool) th.join();
  }
  result.stats.assignments = leaves.load();
  if (stop.load()) {
    result.status = SatStatus::BudgetExceeded;
    result.budget_reason = "more than 2^" + std::to_string(limits.max_universal_vars) + " universal assignments";
    return result;
  }

  std::vector<Formula> constraints;
  for (auto& v : per_conjunct)
    for (auto& c : v) constraints.push_back(std::move(c));
  result.stats.constraints = constraints.size();

  detail::Dpll solver;
  CnfBuilder cnf(solver, limits.max_oracle_strings);
  try {
    for (const auto& c : constraints) solver.add_clause({cnf.encode(c)});
  } catch (const BudgetExceeded& e) {
    result.status = SatStatus::BudgetExceeded;
    result.budget_reason = e.reason;
    return result;
  }
  result.stats.oracle_strings = cnf.strings().size();
  result.stats.cnf_vars = static_cast<std::size_t>(solver.var_count());
  result.stats.cnf_clauses = solver.clause_count();

  auto outcome = solver.solve(limits.max_structures);
  result.stats.decisions = solver.decisions();
  if (outcome == detail::Dpll::Result::Budget) {
    result.status = SatStatus::BudgetExceeded;
    result.budget_reason = "more than " + std::to_string(limits.max_structures) + " search decisions";
    return result;
  }
  if (outcome == detail::Dpll::Result::Unsat) {
    result.status = SatStatus::Unsat;
    return result;
  }

  Structure w;
  for (const auto& a : free_atoms(f)) w.atoms[a] = false;
  for (const auto& [name, var] : cnf.atoms()) w.atoms[name] = solver.model(var);
  for (const auto& [s, var] : cnf.strings())
    if (solver.model(var)) w.oracle.insert(s);
  for (const auto& c : constraints)
    if (!eval(c, w)) throw std::logic_error("sat_pi1: witness violates an expanded constraint");
  if (pre.universals.size() <= 16 && !eval(f, w))
    throw std::logic_error("sat_pi1: witness does not satisfy the formula");
  result.status = SatStatus::Sat;
  result.witness = std::move(w);
  return result;
}

}  // namespace pcr
