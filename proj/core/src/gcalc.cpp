#include <algorithm>

#include "build.hpp"
#include "decompose.hpp"
#include "pcr/prover.hpp"

namespace pcr {

namespace {

using detail::make_node;

Formula instantiate(const Formula& q, const Formula& by) { return substitute(q.body(), q.name(), by); }

class GProver {
 public:
  GProver(const Sequent& root, ProverStats& stats) : stats_(stats) {
    for (const auto& f : root.antecedent) collect_names(f, names_);
    for (const auto& f : root.succedent) collect_names(f, names_);
  }

  std::optional<Proof> run(const Sequent& s, std::size_t depth) {
    stats_.recursion_depth = std::max(stats_.recursion_depth, depth);
    if (s.is_quantifier_free()) return core(s, depth);

    Occurrence occ;
    const Formula* target = nullptr;
    for (std::size_t i = 0; i < s.succedent.size() && !target; ++i)
      if (!s.succedent[i].is_quantifier_free()) {
        occ = {true, i};
        target = &s.succedent[i];
      }
    for (std::size_t i = 0; i < s.antecedent.size() && !target; ++i)
      if (!s.antecedent[i].is_quantifier_free()) {
        occ = {false, i};
        target = &s.antecedent[i];
      }

    detail::Recurse recurse = [&](const Sequent& p) { return run(p, depth + 1); };
    switch (target->kind()) {
      case Kind::Forall:
      case Kind::Exists:
        return quantifier_step(s, occ, depth);
      case Kind::RApp: {
        const auto args = target->children();
        const auto it = std::find_if(args.begin(), args.end(), [](const Formula& a) { return !a.is_quantifier_free(); });
        return detail::decompose(s, occ, static_cast<std::size_t>(it - args.begin()), recurse, stats_);
      }
      default:
        return detail::decompose(s, occ, 0, recurse, stats_);
    }
  }

  const std::optional<Sequent>& failed_core() const { return failed_; }

 private:
  std::optional<Proof> core(const Sequent& s, std::size_t depth) {
    ProveResult r = prove(s);
    if (!r.proof) {
      failed_ = s;
      return std::nullopt;
    }
    stats_.recursion_depth = std::max(stats_.recursion_depth, depth + r.stats.recursion_depth);
    if (r.stats.r_steps > 0) {
      stats_.r_drop_min = stats_.r_steps == 0 ? r.stats.r_drop_min : std::min(stats_.r_drop_min, r.stats.r_drop_min);
      stats_.r_drop_max = std::max(stats_.r_drop_max, r.stats.r_drop_max);
      stats_.r_steps += r.stats.r_steps;
    }
    return std::move(r.proof);
  }

  std::string fresh_eigen() {
    for (;;) {
      std::string y = "y" + std::to_string(next_eigen_++);
      if (!names_.count(y)) return y;
    }
  }

  std::optional<Proof> quantifier_step(const Sequent& s, Occurrence occ, std::size_t depth) {
    const Sequent n = detail::to_edge(s, occ);
    const bool succ = occ.succedent;
    const Formula f = succ ? n.succedent.back() : n.antecedent.front();
    const std::vector<Formula> g = succ ? n.antecedent : std::vector<Formula>(n.antecedent.begin() + 1, n.antecedent.end());
    const std::vector<Formula> d = succ ? std::vector<Formula>(n.succedent.begin(), n.succedent.end() - 1) : n.succedent;
    const bool expand = succ == (f.kind() == Kind::Exists);

    Proof out;
    if (expand) {
      const Formula zero = Formula::constant(false);
      const Formula one = Formula::constant(true);
      const Formula a0 = instantiate(f, zero);
      const Formula a1 = instantiate(f, one);
      auto params = [&](const Formula& b) {
        RuleParams p;
        p.var = f.name();
        p.instance = b;
        return p;
      };
      if (succ) {
        auto pi = run(Sequent{g, detail::append(detail::append(d, a0), a1)}, depth + 1);
        if (!pi) return std::nullopt;
        Proof p = make_node(Sequent{g, detail::append(detail::append(d, a0), f)}, RuleTag::ExR, {std::move(*pi)}, params(one));
        p = weaken_to(std::move(p), Sequent{g, detail::append(detail::append(d, f), a0)});
        p = make_node(Sequent{g, detail::append(detail::append(d, f), f)}, RuleTag::ExR, {std::move(p)}, params(zero));
        out = make_node(n, RuleTag::ContrR, {std::move(p)});
      } else {
        auto pi = run(Sequent{detail::prepend(a0, detail::prepend(a1, g)), d}, depth + 1);
        if (!pi) return std::nullopt;
        Proof p = make_node(Sequent{detail::prepend(f, detail::prepend(a1, g)), d}, RuleTag::AllL, {std::move(*pi)}, params(zero));
        p = weaken_to(std::move(p), Sequent{detail::prepend(a1, detail::prepend(f, g)), d});
        p = make_node(Sequent{detail::prepend(f, detail::prepend(f, g)), d}, RuleTag::AllL, {std::move(p)}, params(one));
        out = make_node(n, RuleTag::ContrL, {std::move(p)});
      }
    } else {
      const std::string y = fresh_eigen();
      const Formula ay = instantiate(f, Formula::atom(y));
      RuleParams params;
      params.eigen = y;
      Sequent premise = succ ? Sequent{g, detail::append(d, ay)} : Sequent{detail::prepend(ay, g), d};
      auto pi = run(premise, depth + 1);
      if (!pi) return std::nullopt;
      out = make_node(n, succ ? RuleTag::AllR : RuleTag::ExL, {std::move(*pi)}, params);
    }
    return weaken_to(std::move(out), s);
  }

  ProverStats& stats_;
  std::set<std::string> names_;
  std::size_t next_eigen_ = 0;
  std::optional<Sequent> failed_;
};

}  // namespace

ProveResult gprove(const Sequent& s) {
  if (s.is_quantifier_free()) return prove(s);
  ProveResult result;
  GProver prover(s, result.stats);
  result.proof = prover.run(s, 0);
  if (!result.proof) {
    const Sequent& core = *prover.failed_core();
    Structure w = *counterexample(core);
    for (const auto& a : free_atoms(s)) w.atoms.try_emplace(a, false);
    if (eval(s, w)) throw std::logic_error("gprove: counterexample does not falsify the sequent");
    result.counterexample = std::move(w);
    return result;
  }
  result.stats.counted_sequents = counted_size(*result.proof);
  result.stats.max_line = max_line_length(*result.proof);
  return result;
}

}  // namespace pcr
