#include "pcr/prover.hpp"

#include <algorithm>

#include "build.hpp"
#include "decompose.hpp"

namespace pcr {

namespace detail {

namespace {

std::vector<Formula> without(const std::vector<Formula>& v, std::size_t i) {
  std::vector<Formula> out;
  out.reserve(v.size() - 1);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (k != i) out.push_back(v[k]);
  return out;
}

Formula replace_arg(const Formula& r, std::size_t arg, const Formula& by) {
  std::vector<Formula> args(r.children().begin(), r.children().end());
  args[arg] = by;
  return Formula::rapp(std::move(args));
}

std::vector<Formula> slice(const Formula& r, std::size_t from, std::size_t to) {
  return std::vector<Formula>(r.children().begin() + from, r.children().begin() + to);
}

void record_drop(ProverStats& stats, const Sequent& s, const std::vector<Sequent>& premises) {
  if (!s.is_quantifier_free()) return;
  const std::size_t c = cost(s);
  if (stats.r_steps++ == 0) {
    stats.r_drop_min = c;
    stats.r_drop_max = 0;
  }
  for (const auto& p : premises) {
    const std::size_t drop = c - cost(p);
    stats.r_drop_min = std::min(stats.r_drop_min, drop);
    stats.r_drop_max = std::max(stats.r_drop_max, drop);
  }
}

}  // namespace

Sequent to_edge(const Sequent& s, Occurrence occ) {
  if (occ.succedent) return Sequent{s.antecedent, append(without(s.succedent, occ.index), s.succedent[occ.index])};
  return Sequent{prepend(s.antecedent[occ.index], without(s.antecedent, occ.index)), s.succedent};
}

std::vector<Sequent> edge_premises(const Sequent& n, bool succedent, std::size_t arg) {
  const Formula& f = succedent ? n.succedent.back() : n.antecedent.front();
  const auto g = succedent ? n.antecedent : std::vector<Formula>(n.antecedent.begin() + 1, n.antecedent.end());
  const auto d = succedent ? std::vector<Formula>(n.succedent.begin(), n.succedent.end() - 1) : n.succedent;
  switch (f.kind()) {
    case Kind::Not:
      if (succedent) return {Sequent{prepend(f.child(), g), d}};
      return {Sequent{g, append(d, f.child())}};
    case Kind::And:
      if (succedent) return {Sequent{g, append(d, f.left())}, Sequent{g, append(d, f.right())}};
      return {Sequent{prepend(f.left(), prepend(f.right(), g)), d}};
    case Kind::Or:
      if (succedent) return {Sequent{g, append(append(d, f.left()), f.right())}};
      return {Sequent{prepend(f.left(), g), d}, Sequent{prepend(f.right(), g), d}};
    case Kind::RApp: {
      if (arg >= f.children().size() || f.children()[arg].is_const())
        throw Error("R argument " + std::to_string(arg) + " of '" + to_string(f) + "' is not decomposable");
      const Formula& a = f.children()[arg];
      const Formula r1 = replace_arg(f, arg, Formula::constant(true));
      const Formula r0 = replace_arg(f, arg, Formula::constant(false));
      if (succedent) return {Sequent{prepend(a, g), append(d, r1)}, Sequent{g, append(append(d, a), r0)}};
      return {Sequent{prepend(a, prepend(r1, g)), d}, Sequent{prepend(r0, g), append(d, a)}};
    }
    default:
      throw Error("'" + to_string(f) + "' is not decomposable");
  }
}

std::optional<Proof> decompose(const Sequent& s, Occurrence occ, std::size_t arg, const Recurse& recurse,
                               ProverStats& stats) {
  const Sequent n = to_edge(s, occ);
  const bool succ = occ.succedent;
  const Formula& f = succ ? n.succedent.back() : n.antecedent.front();
  const std::vector<Sequent> premises = edge_premises(n, succ, arg);

  std::vector<Proof> proofs;
  for (const auto& p : premises) {
    auto proof = recurse(p);
    if (!proof) return std::nullopt;
    proofs.push_back(std::move(*proof));
  }

  Proof out;
  switch (f.kind()) {
    case Kind::Not:
      out = succ ? not_r(std::move(proofs[0])) : not_l(std::move(proofs[0]));
      break;
    case Kind::And:
      out = succ ? and_r(std::move(proofs[0]), std::move(proofs[1])) : and_l(std::move(proofs[0]));
      break;
    case Kind::Or:
      out = succ ? or_r(std::move(proofs[0])) : or_l(std::move(proofs[0]), std::move(proofs[1]));
      break;
    default: {
      record_drop(stats, n, premises);
      const Formula& a = f.children()[arg];
      const auto c = slice(f, 0, arg);
      const auto d = slice(f, arg + 1, f.children().size());
      const Formula r1 = replace_arg(f, arg, Formula::constant(true));
      const Formula r0 = replace_arg(f, arg, Formula::constant(false));
      if (succ) {
        // P1: A, G |- D', R(1)   P2: G |- D', A, R(0)
        const auto& g = n.antecedent;
        const std::vector<Formula> d0(init(n.succedent).begin(), init(n.succedent).end());
        Proof q1 = cut_on(std::move(proofs[0]), derive_E(EScheme::E2, a, c, d), r1,
                          Sequent{prepend(a, g), append(d0, f)});
        Proof q2 = cut_on(std::move(proofs[1]), derive_E(EScheme::E4, a, c, d), r0,
                          Sequent{g, append(append(d0, a), f)});
        out = cut_on(std::move(q2), std::move(q1), a, n);
      } else {
        // P1: A, R(1), G' |- D   P2: R(0), G' |- D, A
        const auto& del = n.succedent;
        Proof q1 = cut_on(derive_E(EScheme::E1, a, c, d), std::move(proofs[0]), r1,
                          Sequent{prepend(a, n.antecedent), del});
        Proof q2 = cut_on(derive_E(EScheme::E3, a, c, d), std::move(proofs[1]), r0,
                          Sequent{n.antecedent, append(del, a)});
        out = cut_on(std::move(q2), std::move(q1), a, n);
      }
    }
  }
  return weaken_to(std::move(out), s);
}

}  // namespace detail

namespace {

struct Choice {
  Occurrence occ;
  std::size_t arg = 0;
};

bool is_connective(const Formula& f) {
  return f.kind() == Kind::Not || f.kind() == Kind::And || f.kind() == Kind::Or;
}

std::optional<std::size_t> first_open_arg(const Formula& f) {
  if (f.kind() != Kind::RApp) return std::nullopt;
  for (std::size_t i = 0; i < f.children().size(); ++i)
    if (!f.children()[i].is_const()) return i;
  return std::nullopt;
}

std::optional<Choice> choose(const Sequent& s) {
  for (std::size_t i = 0; i < s.succedent.size(); ++i)
    if (is_connective(s.succedent[i])) return Choice{{true, i}, 0};
  for (std::size_t i = 0; i < s.antecedent.size(); ++i)
    if (is_connective(s.antecedent[i])) return Choice{{false, i}, 0};
  for (std::size_t i = 0; i < s.succedent.size(); ++i)
    if (auto a = first_open_arg(s.succedent[i])) return Choice{{true, i}, *a};
  for (std::size_t i = 0; i < s.antecedent.size(); ++i)
    if (auto a = first_open_arg(s.antecedent[i])) return Choice{{false, i}, *a};
  return std::nullopt;
}

std::string oracle_string(const Formula& r) {
  std::string out;
  for (const auto& a : r.children()) out.push_back(a.bit() ? '1' : '0');
  return out;
}

class Prover {
 public:
  explicit Prover(ProverStats& stats) : stats_(stats) {}

  std::optional<Proof> run(const Sequent& s, std::size_t depth) {
    stats_.recursion_depth = std::max(stats_.recursion_depth, depth);
    if (auto base = axiom(s)) return base;
    auto choice = choose(s);
    if (!choice) {
      leaf_ = s;
      return std::nullopt;
    }
    detail::Recurse recurse = [&](const Sequent& p) { return run(p, depth + 1); };
    return detail::decompose(s, choice->occ, choice->arg, recurse, stats_);
  }

  // The irreducible sequent that failed, if any.
  const std::optional<Sequent>& failed_leaf() const { return leaf_; }

 private:
  static std::optional<Proof> axiom(const Sequent& s) {
    auto has = [](const std::vector<Formula>& v, const Formula& f) { return std::find(v.begin(), v.end(), f) != v.end(); };
    if (has(s.succedent, Formula::constant(true))) return weaken_to(detail::ax_true(), s);
    if (has(s.antecedent, Formula::constant(false))) return weaken_to(detail::ax_false(), s);
    for (const auto& f : s.succedent)
      if (has(s.antecedent, f)) return weaken_to(detail::ax_id(f), s);
    return std::nullopt;
  }

  ProverStats& stats_;
  std::optional<Sequent> leaf_;
};

Structure leaf_counterexample(const Sequent& root, const Sequent& leaf) {
  Structure w;
  for (const auto& a : free_atoms(root)) w.atoms[a] = false;
  for (const auto& f : leaf.antecedent) {
    if (f.kind() == Kind::Atom) w.atoms[f.name()] = true;
    if (f.kind() == Kind::RApp) w.oracle.insert(oracle_string(f));
  }
  return w;
}

}  // namespace

ProveResult prove(const Sequent& s) {
  if (!s.is_quantifier_free()) throw Error("prove: sequent must be quantifier-free");
  ProveResult result;
  Prover prover(result.stats);
  result.stats.cost_at_root = cost(s);
  result.proof = prover.run(s, 0);
  if (!result.proof) {
    Structure w = leaf_counterexample(s, *prover.failed_leaf());
    if (eval(s, w)) throw std::logic_error("prove: counterexample does not falsify the sequent");
    result.counterexample = std::move(w);
    return result;
  }
  result.stats.counted_sequents = counted_size(*result.proof);
  result.stats.max_line = max_line_length(*result.proof);
  return result;
}

std::vector<std::size_t> premise_costs(const Sequent& s, Occurrence target) {
  if (!s.is_quantifier_free()) throw CostError();
  const auto& cedent = target.succedent ? s.succedent : s.antecedent;
  if (target.index >= cedent.size()) throw Error("premise_costs: occurrence out of range");
  const Formula& f = cedent[target.index];
  std::size_t arg = 0;
  if (f.kind() == Kind::RApp) {
    auto a = first_open_arg(f);
    if (!a) throw Error("'" + to_string(f) + "' is not decomposable");
    arg = *a;
  }
  std::vector<std::size_t> out;
  for (const auto& p : detail::edge_premises(detail::to_edge(s, target), target.succedent, arg))
    out.push_back(cost(p));
  return out;
}

}  // namespace pcr
