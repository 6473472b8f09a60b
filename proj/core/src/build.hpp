// Proof node constructors shared by the derivations and the provers. Each
// builder takes premises in rule order and computes the conclusion.

#pragma once

#include <utility>

#include "pcr/calculus.hpp"

namespace pcr::detail {

inline Proof make_node(Sequent conclusion, RuleTag rule, std::vector<Proof> premises,
                       RuleParams params = {}) {
  Proof p;
  p.conclusion = std::move(conclusion);
  p.rule = rule;
  p.params = std::move(params);
  p.premises = std::move(premises);
  return p;
}

inline std::vector<Formula> prepend(const Formula& f, std::span<const Formula> rest) {
  std::vector<Formula> out;
  out.reserve(rest.size() + 1);
  out.push_back(f);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

inline std::vector<Formula> append(std::span<const Formula> rest, const Formula& f) {
  std::vector<Formula> out(rest.begin(), rest.end());
  out.push_back(f);
  return out;
}

inline std::span<const Formula> tail(const std::vector<Formula>& v) {
  return std::span<const Formula>(v).subspan(1);
}

inline std::span<const Formula> init(const std::vector<Formula>& v) {
  return std::span<const Formula>(v).first(v.size() - 1);
}

inline Proof ax_id(const Formula& a) { return make_node(Sequent{{a}, {a}}, RuleTag::AxId, {}); }
inline Proof ax_true() { return make_node(Sequent{{}, {Formula::constant(true)}}, RuleTag::AxTrue, {}); }
inline Proof ax_false() { return make_node(Sequent{{Formula::constant(false)}, {}}, RuleTag::AxFalse, {}); }

// A, G |- D  =>  G |- D, ~A
inline Proof not_r(Proof p) {
  const Sequent& s = p.conclusion;
  Sequent c{std::vector<Formula>(tail(s.antecedent).begin(), tail(s.antecedent).end()),
            append(s.succedent, Formula::negation(s.antecedent.front()))};
  return make_node(std::move(c), RuleTag::NotR, {std::move(p)});
}

// G |- D, A  =>  ~A, G |- D
inline Proof not_l(Proof p) {
  const Sequent& s = p.conclusion;
  Sequent c{prepend(Formula::negation(s.succedent.back()), s.antecedent),
            std::vector<Formula>(init(s.succedent).begin(), init(s.succedent).end())};
  return make_node(std::move(c), RuleTag::NotL, {std::move(p)});
}

// G |- D, A, B  =>  G |- D, A|B
inline Proof or_r(Proof p) {
  const auto& d = p.conclusion.succedent;
  std::vector<Formula> succ(d.begin(), d.end() - 2);
  succ.push_back(Formula::disj(d[d.size() - 2], d.back()));
  Sequent c{p.conclusion.antecedent, std::move(succ)};
  return make_node(std::move(c), RuleTag::OrR, {std::move(p)});
}

// A, B, G |- D  =>  A&B, G |- D
inline Proof and_l(Proof p) {
  const auto& g = p.conclusion.antecedent;
  std::vector<Formula> ant{Formula::conj(g[0], g[1])};
  ant.insert(ant.end(), g.begin() + 2, g.end());
  Sequent c{std::move(ant), p.conclusion.succedent};
  return make_node(std::move(c), RuleTag::AndL, {std::move(p)});
}

// G |- D, A and G |- D, B  =>  G |- D, A&B
inline Proof and_r(Proof a, Proof b) {
  const Sequent& s = a.conclusion;
  Sequent c{s.antecedent,
            append(init(s.succedent), Formula::conj(s.succedent.back(), b.conclusion.succedent.back()))};
  return make_node(std::move(c), RuleTag::AndR, {std::move(a), std::move(b)});
}

// A, G |- D and B, G |- D  =>  A|B, G |- D
inline Proof or_l(Proof a, Proof b) {
  const Sequent& s = a.conclusion;
  Sequent c{prepend(Formula::disj(s.antecedent.front(), b.conclusion.antecedent.front()), tail(s.antecedent)),
            s.succedent};
  return make_node(std::move(c), RuleTag::OrL, {std::move(a), std::move(b)});
}

}  // namespace pcr::detail
