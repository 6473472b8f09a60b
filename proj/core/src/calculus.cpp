#include "pcr/calculus.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <utility>

#include "build.hpp"
#include "pcr/parse.hpp"

namespace pcr {

namespace {

constexpr std::array<std::string_view, 21> kRuleNames{
    "AxId", "AxTrue", "AxFalse", "AxRSubst", "WeakL", "WeakR", "ExchL",
    "ExchR", "ContrL", "ContrR", "NotL", "NotR", "AndL", "AndR",
    "OrL", "OrR", "Cut", "AllL", "AllR", "ExL", "ExR",
};

using detail::append;
using detail::init;
using detail::make_node;
using detail::prepend;
using detail::tail;

std::vector<Formula> to_vec(std::span<const Formula> s) { return {s.begin(), s.end()}; }

bool has_quantifier(const Sequent& s) { return !s.is_quantifier_free(); }

std::string quoted(const Sequent& s) { return "'" + to_string(s) + "'"; }

class NodeChecker {
 public:
  explicit NodeChecker(bool quantified) : quantified_(quantified) {}

  void visit(const Proof& p, const std::string& path, std::vector<CheckError>& out) const {
    if (auto msg = local(p)) out.push_back({path, p.rule, *msg});
    for (std::size_t i = 0; i < p.premises.size(); ++i)
      visit(p.premises[i], path + "." + std::to_string(i), out);
  }

 private:
  std::optional<std::string> local(const Proof& p) const {
    if (!quantified_) {
      if (is_quantifier_rule(p.rule)) return "quantifier rule in PK(R) proof";
      if (has_quantifier(p.conclusion)) return "quantified formula in PK(R) proof";
    }
    if (p.premises.size() != premise_count(p.rule))
      return "rule takes " + std::to_string(premise_count(p.rule)) + " premise(s), found " +
             std::to_string(p.premises.size());
    try {
      return shape(p);
    } catch (const CaptureError& e) {
      return std::string("capture violation: ") + e.what();
    }
  }

  static std::optional<std::string> expect(const Proof& p, std::size_t i, const Sequent& want) {
    if (p.premises[i].conclusion == want) return std::nullopt;
    return "premise " + std::to_string(i) + " should be " + quoted(want) + " but is " +
           quoted(p.premises[i].conclusion);
  }

  static std::optional<std::string> check_ax(const Proof& p) {
    const Sequent& c = p.conclusion;
    const std::string bad = "not an instance of the AX scheme";
    if (c.antecedent.size() != 3 || c.succedent.size() != 1) return bad;
    const Formula& f0 = c.antecedent[0];
    if (f0.kind() != Kind::Or || f0.left().kind() != Kind::Not) return bad;
    const Formula& a = f0.left().child();
    const Formula& b = f0.right();
    if (!(c.antecedent[1] == Formula::disj(a, Formula::negation(b)))) return bad;
    const Formula& lhs = c.antecedent[2];
    const Formula& rhs = c.succedent[0];
    if (lhs.kind() != Kind::RApp || rhs.kind() != Kind::RApp) return bad;
    const auto la = lhs.children();
    const auto ra = rhs.children();
    if (la.size() != ra.size()) return bad;
    std::vector<std::size_t> diffs;
    for (std::size_t i = 0; i < la.size(); ++i)
      if (!(la[i] == ra[i])) diffs.push_back(i);
    auto substituted_at = [&](std::size_t i) { return la[i] == a && ra[i] == b; };
    if (p.params.position) {
      const std::size_t pos = *p.params.position;
      if (pos >= la.size() || !substituted_at(pos)) return bad + " at the given position";
      if (diffs.size() > 1 || (diffs.size() == 1 && diffs[0] != pos)) return bad;
      return std::nullopt;
    }
    if (diffs.size() == 1 && substituted_at(diffs[0])) return std::nullopt;
    if (diffs.empty() && a == b && std::any_of(la.begin(), la.end(), [&](const Formula& x) { return x == a; }))
      return std::nullopt;
    return bad;
  }

  static Formula instantiate(const Formula& q, const Formula& by) { return substitute(q.body(), q.name(), by); }

  std::optional<std::string> shape(const Proof& p) const {
    const Sequent& c = p.conclusion;
    const auto& g = c.antecedent;
    const auto& d = c.succedent;
    auto front_is = [&](Kind k) { return !g.empty() && g.front().kind() == k; };
    auto back_is = [&](Kind k) { return !d.empty() && d.back().kind() == k; };

    switch (p.rule) {
      case RuleTag::AxId:
        if (g.size() == 1 && d.size() == 1 && g[0] == d[0]) return std::nullopt;
        return "conclusion is not of the form A |- A";
      case RuleTag::AxTrue:
        if (g.empty() && d.size() == 1 && d[0].is_const(true)) return std::nullopt;
        return "conclusion is not |- 1";
      case RuleTag::AxFalse:
        if (d.empty() && g.size() == 1 && g[0].is_const(false)) return std::nullopt;
        return "conclusion is not 0 |-";
      case RuleTag::AxRSubst:
        return check_ax(p);
      case RuleTag::WeakL:
        if (g.empty()) return "empty antecedent";
        return expect(p, 0, Sequent{to_vec(tail(g)), d});
      case RuleTag::WeakR:
        if (d.empty()) return "empty succedent";
        return expect(p, 0, Sequent{g, to_vec(init(d))});
      case RuleTag::ExchL:
      case RuleTag::ExchR: {
        const bool left = p.rule == RuleTag::ExchL;
        const std::size_t i = p.params.index;
        auto v = left ? g : d;
        if (i + 1 >= v.size()) return "exchange index " + std::to_string(i) + " out of range";
        std::swap(v[i], v[i + 1]);
        return expect(p, 0, left ? Sequent{v, d} : Sequent{g, v});
      }
      case RuleTag::ContrL:
        if (g.empty()) return "empty antecedent";
        return expect(p, 0, Sequent{prepend(g.front(), g), d});
      case RuleTag::ContrR:
        if (d.empty()) return "empty succedent";
        return expect(p, 0, Sequent{g, append(d, d.back())});
      case RuleTag::NotL:
        if (!front_is(Kind::Not)) return "first antecedent formula is not a negation";
        return expect(p, 0, Sequent{to_vec(tail(g)), append(d, g.front().child())});
      case RuleTag::NotR:
        if (!back_is(Kind::Not)) return "last succedent formula is not a negation";
        return expect(p, 0, Sequent{prepend(d.back().child(), g), to_vec(init(d))});
      case RuleTag::AndL: {
        if (!front_is(Kind::And)) return "first antecedent formula is not a conjunction";
        std::vector<Formula> ant{g.front().left(), g.front().right()};
        ant.insert(ant.end(), g.begin() + 1, g.end());
        return expect(p, 0, Sequent{std::move(ant), d});
      }
      case RuleTag::AndR: {
        if (!back_is(Kind::And)) return "last succedent formula is not a conjunction";
        if (auto e = expect(p, 0, Sequent{g, append(init(d), d.back().left())})) return e;
        return expect(p, 1, Sequent{g, append(init(d), d.back().right())});
      }
      case RuleTag::OrL: {
        if (!front_is(Kind::Or)) return "first antecedent formula is not a disjunction";
        if (auto e = expect(p, 0, Sequent{prepend(g.front().left(), tail(g)), d})) return e;
        return expect(p, 1, Sequent{prepend(g.front().right(), tail(g)), d});
      }
      case RuleTag::OrR: {
        if (!back_is(Kind::Or)) return "last succedent formula is not a disjunction";
        auto succ = to_vec(init(d));
        succ.push_back(d.back().left());
        succ.push_back(d.back().right());
        return expect(p, 0, Sequent{g, std::move(succ)});
      }
      case RuleTag::Cut: {
        const Sequent& left = p.premises[0].conclusion;
        if (left.succedent.empty()) return "left premise has an empty succedent";
        const Formula& a = left.succedent.back();
        if (p.params.cut && !(*p.params.cut == a))
          return "cut formula '" + to_string(*p.params.cut) + "' does not match left premise";
        if (auto e = expect(p, 0, Sequent{g, append(d, a)})) return e;
        return expect(p, 1, Sequent{prepend(a, g), d});
      }
      case RuleTag::AllL:
      case RuleTag::ExR: {
        const bool left = p.rule == RuleTag::AllL;
        const Kind k = left ? Kind::Forall : Kind::Exists;
        if (left ? !front_is(k) : !back_is(k))
          return left ? "first antecedent formula is not universal" : "last succedent formula is not existential";
        const Formula& q = left ? g.front() : d.back();
        if (!p.params.var.empty() && p.params.var != q.name())
          return "bound variable is '" + q.name() + "', not '" + p.params.var + "'";
        if (!p.params.instance) return "missing instantiation formula";
        Formula inst = instantiate(q, *p.params.instance);
        return expect(p, 0, left ? Sequent{prepend(inst, tail(g)), d} : Sequent{g, append(init(d), inst)});
      }
      case RuleTag::AllR:
      case RuleTag::ExL: {
        const bool left = p.rule == RuleTag::ExL;
        const Kind k = left ? Kind::Exists : Kind::Forall;
        if (left ? !front_is(k) : !back_is(k))
          return left ? "first antecedent formula is not existential" : "last succedent formula is not universal";
        const Formula& q = left ? g.front() : d.back();
        if (!is_identifier(p.params.eigen)) return "missing or malformed eigenvariable";
        if (free_atoms(c).count(p.params.eigen))
          return "eigenvariable violation: '" + p.params.eigen + "' is free in the conclusion";
        Formula inst = instantiate(q, Formula::atom(p.params.eigen));
        return expect(p, 0, left ? Sequent{prepend(inst, tail(g)), d} : Sequent{g, append(init(d), inst)});
      }
    }
    return "unknown rule";
  }

  bool quantified_;
};

CheckResult run_check(const Proof& p, bool quantified) {
  CheckResult r;
  NodeChecker(quantified).visit(p, "root", r.errors);
  return r;
}

// Position of each element of `have` inside `want`, matching equal formulas
// in order. Returns the positions of `want` left unmatched in `missing`.
std::vector<std::size_t> embed(const std::vector<Formula>& have, const std::vector<Formula>& want,
                               std::vector<std::size_t>& missing) {
  std::vector<bool> used(want.size(), false);
  std::vector<std::size_t> pos;
  for (const auto& f : have) {
    std::size_t j = 0;
    while (j < want.size() && (used[j] || !(want[j] == f))) ++j;
    if (j == want.size()) throw Error("weaken_to: '" + to_string(f) + "' is not in the target cedent");
    used[j] = true;
    pos.push_back(j);
  }
  for (std::size_t j = 0; j < want.size(); ++j)
    if (!used[j]) missing.push_back(j);
  return pos;
}

}  // namespace

std::string_view to_string(RuleTag t) { return kRuleNames[static_cast<std::size_t>(t)]; }

std::optional<RuleTag> rule_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i)
    if (kRuleNames[i] == s) return static_cast<RuleTag>(i);
  return std::nullopt;
}

bool is_quantifier_rule(RuleTag t) {
  return t == RuleTag::AllL || t == RuleTag::AllR || t == RuleTag::ExL || t == RuleTag::ExR;
}

std::size_t premise_count(RuleTag t) {
  switch (t) {
    case RuleTag::AxId:
    case RuleTag::AxTrue:
    case RuleTag::AxFalse:
    case RuleTag::AxRSubst:
      return 0;
    case RuleTag::AndR:
    case RuleTag::OrL:
    case RuleTag::Cut:
      return 2;
    default:
      return 1;
  }
}

CheckResult check_pk(const Proof& p) { return run_check(p, false); }
CheckResult check_g(const Proof& p) { return run_check(p, true); }

std::size_t counted_size(const Proof& p) {
  std::size_t n = 0;
  switch (p.rule) {
    case RuleTag::WeakL:
    case RuleTag::WeakR:
    case RuleTag::ExchL:
    case RuleTag::ExchR:
      break;
    default:
      n = 1;
  }
  for (const auto& q : p.premises) n += counted_size(q);
  return n;
}

std::size_t node_count(const Proof& p) {
  std::size_t n = 1;
  for (const auto& q : p.premises) n += node_count(q);
  return n;
}

std::size_t max_line_length(const Proof& p) {
  std::size_t m = length(p.conclusion);
  for (const auto& q : p.premises) m = std::max(m, max_line_length(q));
  return m;
}

Proof weaken_to(Proof p, const Sequent& target) {
  // Antecedent: weaken missing formulas in at the front, then bubble into place.
  {
    std::vector<std::size_t> missing;
    std::vector<std::size_t> pos = embed(p.conclusion.antecedent, target.antecedent, missing);
    for (auto it = missing.rbegin(); it != missing.rend(); ++it) {
      Sequent c{prepend(target.antecedent[*it], p.conclusion.antecedent), p.conclusion.succedent};
      p = make_node(std::move(c), RuleTag::WeakL, {std::move(p)});
      pos.insert(pos.begin(), *it);
    }
    for (std::size_t pass = 0; pass < pos.size(); ++pass) {
      for (std::size_t i = 0; i + 1 < pos.size(); ++i) {
        if (pos[i] < pos[i + 1]) continue;
        std::swap(pos[i], pos[i + 1]);
        auto ant = p.conclusion.antecedent;
        if (ant[i] == ant[i + 1]) continue;
        std::swap(ant[i], ant[i + 1]);
        RuleParams params;
        params.index = i;
        Sequent c{std::move(ant), p.conclusion.succedent};
        p = make_node(std::move(c), RuleTag::ExchL, {std::move(p)}, params);
      }
    }
  }
  {
    std::vector<std::size_t> missing;
    std::vector<std::size_t> pos = embed(p.conclusion.succedent, target.succedent, missing);
    for (std::size_t j : missing) {
      Sequent c{p.conclusion.antecedent, append(p.conclusion.succedent, target.succedent[j])};
      p = make_node(std::move(c), RuleTag::WeakR, {std::move(p)});
      pos.push_back(j);
    }
    for (std::size_t pass = 0; pass < pos.size(); ++pass) {
      for (std::size_t i = 0; i + 1 < pos.size(); ++i) {
        if (pos[i] < pos[i + 1]) continue;
        std::swap(pos[i], pos[i + 1]);
        auto succ = p.conclusion.succedent;
        if (succ[i] == succ[i + 1]) continue;
        std::swap(succ[i], succ[i + 1]);
        RuleParams params;
        params.index = i;
        Sequent c{p.conclusion.antecedent, std::move(succ)};
        p = make_node(std::move(c), RuleTag::ExchR, {std::move(p)}, params);
      }
    }
  }
  return p;
}

Proof cut_on(Proof left, Proof right, const Formula& a, const Sequent& context) {
  left = weaken_to(std::move(left), Sequent{context.antecedent, append(context.succedent, a)});
  right = weaken_to(std::move(right), Sequent{prepend(a, context.antecedent), context.succedent});
  RuleParams params;
  params.cut = a;
  return make_node(context, RuleTag::Cut, {std::move(left), std::move(right)}, params);
}

std::string_view to_string(EScheme e) {
  static constexpr std::array<std::string_view, 4> names{"E1", "E2", "E3", "E4"};
  return names[static_cast<std::size_t>(e)];
}

Proof derive_E(EScheme which, const Formula& a, const std::vector<Formula>& c, const std::vector<Formula>& d) {
  using detail::ax_false;
  using detail::ax_id;
  using detail::ax_true;
  using detail::not_r;
  using detail::or_r;

  auto r_with = [&](const Formula& mid) {
    std::vector<Formula> args = c;
    args.push_back(mid);
    args.insert(args.end(), d.begin(), d.end());
    return Formula::rapp(std::move(args));
  };
  const Formula one = Formula::constant(true);
  const Formula zero = Formula::constant(false);
  const Formula ra = r_with(a);
  const Formula not_a = Formula::negation(a);

  // AX instance substituting x by y: ~x|y, x|~y, R(..x..) |- R(..y..).
  auto ax = [&](const Formula& x, const Formula& y) {
    const Formula f1 = Formula::disj(Formula::negation(x), y);
    const Formula f2 = Formula::disj(x, Formula::negation(y));
    RuleParams params;
    params.position = c.size();
    return std::make_tuple(make_node(Sequent{{f1, f2, r_with(x)}, {r_with(y)}}, RuleTag::AxRSubst, {}, params),
                           f1, f2);
  };

  switch (which) {
    case EScheme::E1: {  // A, R(A) |- R(1)
      const Formula r1 = r_with(one);
      auto [axiom, f1, f2] = ax(a, one);
      Proof p1 = or_r(weaken_to(ax_true(), Sequent{{}, {not_a, one}}));                 // |- ~A|1
      Proof p2 = or_r(not_r(weaken_to(ax_id(a), Sequent{{one, a}, {a}})));              // A |- A|~1
      Proof s1 = cut_on(std::move(p1), std::move(axiom), f1, Sequent{{f2, ra}, {r1}});
      return cut_on(std::move(p2), std::move(s1), f2, Sequent{{a, ra}, {r1}});
    }
    case EScheme::E2: {  // A, R(1) |- R(A)
      const Formula r1 = r_with(one);
      auto [axiom, f1, f2] = ax(one, a);
      Proof p1 = or_r(weaken_to(not_r(weaken_to(ax_id(a), Sequent{{one, a}, {a}})),
                                Sequent{{a}, {Formula::negation(one), a}}));        // A |- ~1|A
      Proof p2 = or_r(weaken_to(ax_true(), Sequent{{}, {one, not_a}}));              // |- 1|~A
      Proof s1 = cut_on(std::move(p2), std::move(axiom), f2, Sequent{{f1, r1}, {ra}});
      return cut_on(std::move(p1), std::move(s1), f1, Sequent{{a, r1}, {ra}});
    }
    case EScheme::E3: {  // R(A) |- A, R(0)
      const Formula r0 = r_with(zero);
      auto [axiom, f1, f2] = ax(a, zero);
      Proof p1 = or_r(weaken_to(not_r(ax_id(a)), Sequent{{}, {a, not_a, zero}}));      // |- A, ~A|0
      Proof p2 = or_r(weaken_to(not_r(ax_false()), Sequent{{}, {a, Formula::negation(zero)}}));  // |- A|~0
      Proof s1 = cut_on(std::move(p2), std::move(axiom), f2, Sequent{{f1, ra}, {a, r0}});
      return cut_on(std::move(p1), std::move(s1), f1, Sequent{{ra}, {a, r0}});
    }
    case EScheme::E4: {  // R(0) |- A, R(A)
      const Formula r0 = r_with(zero);
      auto [axiom, f1, f2] = ax(zero, a);
      Proof p1 = or_r(weaken_to(not_r(ax_false()), Sequent{{}, {Formula::negation(zero), a}}));  // |- ~0|A
      Proof p2 = or_r(weaken_to(not_r(ax_id(a)), Sequent{{}, {a, zero, not_a}}));      // |- A, 0|~A
      Proof s1 = cut_on(std::move(p2), std::move(axiom), f2, Sequent{{f1, r0}, {a, ra}});
      return cut_on(std::move(p1), std::move(s1), f1, Sequent{{r0}, {a, ra}});
    }
  }
  throw std::logic_error("derive_E: unknown scheme");
}

std::size_t e_scheme_size(EScheme which) {
  static constexpr std::array<std::size_t, 4> sizes{8, 8, 9, 9};
  return sizes[static_cast<std::size_t>(which)];
}

}  // namespace pcr
