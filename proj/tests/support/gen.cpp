#include "gen.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "pcr/parse.hpp"

namespace pcr::testing {

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

class FormulaGen {
 public:
  FormulaGen(Rng& rng, const GenOptions& opt) : rng_(rng), opt_(opt), r_left_(opt.max_r) {}

  Formula gen(unsigned depth) {
    if (depth == 0 || coin(rng_, 0.25)) return leaf();
    std::vector<int> choices{0, 1, 2};
    if (r_left_ > 0) choices.insert(choices.end(), {3, 3});
    if (opt_.quantifiers) choices.push_back(4);
    switch (choices[pick(rng_, choices.size())]) {
      case 0:
        return Formula::negation(gen(depth - 1));
      case 1:
        return Formula::conj(gen(depth - 1), gen(depth - 1));
      case 2:
        return Formula::disj(gen(depth - 1), gen(depth - 1));
      case 3: {
        --r_left_;
        std::size_t arity = opt_.uniform_arity ? opt_.max_arity : pick(rng_, opt_.max_arity + 1);
        if (arity == 0 && !opt_.nullary_r && !opt_.uniform_arity) arity = 1;
        std::vector<Formula> args;
        for (std::size_t i = 0; i < arity; ++i) args.push_back(gen(depth - 1));
        return Formula::rapp(std::move(args));
      }
      default: {
        static const char* vars[] = {"x", "y", "z"};
        const std::string v = vars[pick(rng_, 3)];
        bound_.push_back(v);
        Formula body = gen(depth - 1);
        bound_.pop_back();
        return coin(rng_) ? Formula::forall(v, body) : Formula::exists(v, body);
      }
    }
  }

 private:
  Formula leaf() {
    if (coin(rng_, 0.15)) return Formula::constant(coin(rng_));
    if (opt_.nullary_r && r_left_ > 0 && coin(rng_, 0.1)) {
      --r_left_;
      return Formula::rapp({});
    }
    if (!bound_.empty() && coin(rng_, 0.5)) return Formula::atom(bound_[pick(rng_, bound_.size())]);
    return Formula::atom(opt_.atoms[pick(rng_, opt_.atoms.size())]);
  }

  Rng& rng_;
  const GenOptions& opt_;
  unsigned r_left_;
  std::vector<std::string> bound_;
};

Formula rewrite_root(Rng& rng, const Formula& f) {
  const Formula one = Formula::constant(true);
  const Formula zero = Formula::constant(false);
  std::vector<Formula> options{Formula::negation(Formula::negation(f)), Formula::conj(f, one), Formula::disj(f, zero),
                               Formula::conj(f, f)};
  if (f.kind() == Kind::And) {
    options.push_back(Formula::conj(f.right(), f.left()));
    options.push_back(Formula::negation(Formula::disj(Formula::negation(f.left()), Formula::negation(f.right()))));
  }
  if (f.kind() == Kind::Or) {
    options.push_back(Formula::disj(f.right(), f.left()));
    options.push_back(Formula::negation(Formula::conj(Formula::negation(f.left()), Formula::negation(f.right()))));
  }
  if (f.kind() == Kind::Not && f.body().kind() == Kind::Not) options.push_back(f.body().body());
  return options[pick(rng, options.size())];
}

Formula rewrite(Rng& rng, const Formula& f) {
  const auto kids = f.children();
  if (kids.empty() || f.is_quantifier() || coin(rng, 0.4)) return rewrite_root(rng, f);
  std::vector<Formula> args(kids.begin(), kids.end());
  const std::size_t i = pick(rng, args.size());
  args[i] = rewrite(rng, args[i]);
  switch (f.kind()) {
    case Kind::Not:
      return Formula::negation(args[0]);
    case Kind::And:
      return Formula::conj(args[0], args[1]);
    case Kind::Or:
      return Formula::disj(args[0], args[1]);
    default:
      return Formula::rapp(std::move(args));
  }
}

// Bit 0: the formula may be false; bit 1: it may be true. R occurrences may take
// either value; their possible argument strings are collected.
unsigned possible(const Formula& f, const std::map<std::string, bool>& atoms, std::set<std::string>& strings) {
  switch (f.kind()) {
    case Kind::Atom:
      return atoms.at(f.name()) ? 2u : 1u;
    case Kind::Const:
      return f.bit() ? 2u : 1u;
    case Kind::Not: {
      const unsigned v = possible(f.body(), atoms, strings);
      return ((v & 1u) << 1) | ((v >> 1) & 1u);
    }
    case Kind::And: {
      const unsigned a = possible(f.left(), atoms, strings), b = possible(f.right(), atoms, strings);
      return ((a & 2u) && (b & 2u) ? 2u : 0u) | ((a & 1u) || (b & 1u) ? 1u : 0u);
    }
    case Kind::Or: {
      const unsigned a = possible(f.left(), atoms, strings), b = possible(f.right(), atoms, strings);
      return ((a & 2u) || (b & 2u) ? 2u : 0u) | ((a & 1u) && (b & 1u) ? 1u : 0u);
    }
    case Kind::RApp: {
      std::vector<std::string> prefixes{""};
      for (const auto& a : f.children()) {
        const unsigned v = possible(a, atoms, strings);
        std::vector<std::string> next;
        for (const auto& p : prefixes) {
          if (v & 1u) next.push_back(p + '0');
          if (v & 2u) next.push_back(p + '1');
        }
        prefixes = std::move(next);
      }
      strings.insert(prefixes.begin(), prefixes.end());
      return 3u;
    }
    default:
      throw std::invalid_argument("naive_sat: quantified formula");
  }
}

Sequent shuffle_sequent(Rng& rng, Sequent s) {
  std::shuffle(s.antecedent.begin(), s.antecedent.end(), rng);
  std::shuffle(s.succedent.begin(), s.succedent.end(), rng);
  return s;
}

Sequent valid_candidate(Rng& rng) {
  GenOptions small;
  small.atoms = {"p", "q", "r"};
  small.max_depth = 2;
  small.max_r = 1;
  small.max_arity = 2;
  auto rnd = [&](unsigned depth) {
    small.max_depth = depth;
    FormulaGen g(rng, small);
    return g.gen(depth);
  };
  Sequent s;
  switch (pick(rng, 5)) {
    case 0: {  // unconstrained, rejected unless valid
      for (std::size_t i = 0, n = 1 + pick(rng, 3); i < n; ++i) s.antecedent.push_back(rnd(2));
      for (std::size_t i = 0, n = 1 + pick(rng, 3); i < n; ++i) s.succedent.push_back(rnd(2));
      return s;
    }
    case 1: {  // substitution of equivalent arguments
      const Formula a = rnd(2);
      const Formula b = equivalent_variant(rng, a, 1 + pick(rng, 2));
      std::vector<Formula> c, d;
      for (std::size_t i = 0, n = pick(rng, 2); i < n; ++i) c.push_back(rnd(0));
      for (std::size_t i = 0, n = pick(rng, 2); i < n; ++i) d.push_back(rnd(0));
      auto wrap = [&](const Formula& mid) {
        std::vector<Formula> args = c;
        args.push_back(mid);
        args.insert(args.end(), d.begin(), d.end());
        return Formula::rapp(std::move(args));
      };
      s.antecedent.push_back(wrap(a));
      s.succedent.push_back(wrap(b));
      if (coin(rng)) s.antecedent.push_back(rnd(1));
      if (coin(rng)) s.succedent.push_back(rnd(1));
      return s;
    }
    case 2: {  // R holds on A or on ~A
      const Formula a = rnd(1), b = rnd(1);
      s.antecedent.push_back(Formula::conj(Formula::rapp({a}), Formula::rapp({Formula::negation(a)})));
      s.succedent.push_back(Formula::disj(Formula::rapp({b}), Formula::rapp({Formula::negation(b)})));
      return s;
    }
    case 3: {  // A |- A' with A' equivalent to A, in a context
      const Formula a = rnd(2);
      s.antecedent.push_back(a);
      s.succedent.push_back(equivalent_variant(rng, a, 1 + pick(rng, 3)));
      if (coin(rng)) s.antecedent.push_back(rnd(1));
      if (coin(rng)) s.succedent.push_back(rnd(1));
      return s;
    }
    default: {  // excluded middle on a random formula
      const Formula a = rnd(2);
      s.succedent.push_back(coin(rng) ? Formula::disj(a, Formula::negation(a)) : a);
      if (s.succedent.back() == a) s.succedent.push_back(Formula::negation(a));
      if (coin(rng)) s.antecedent.push_back(rnd(1));
      return s;
    }
  }
}

}  // namespace

Formula random_formula(Rng& rng, const GenOptions& opt) {
  FormulaGen g(rng, opt);
  return g.gen(opt.max_depth);
}

std::size_t r_count(const Formula& f) {
  std::size_t n = f.kind() == Kind::RApp ? 1 : 0;
  for (const auto& c : f.children()) n += r_count(c);
  return n;
}

Formula random_solver_formula(Rng& rng) {
  GenOptions opt;
  opt.max_depth = 4;
  opt.max_r = 3;
  opt.max_arity = 3;
  const std::size_t kind = pick(rng, 3);
  if (kind == 0) return random_formula(rng, opt);
  for (;;) {
    opt.max_depth = 3;
    opt.max_r = 1;
    const Formula a = random_formula(rng, opt);
    const Formula b = kind == 1 ? equivalent_variant(rng, a, 1 + pick(rng, 2)) : random_formula(rng, opt);
    const Formula f = Formula::conj(a, Formula::negation(b));
    if (r_count(f) <= 3) return f;
  }
}

Formula equivalent_variant(Rng& rng, const Formula& f, unsigned steps) {
  Formula out = f;
  for (unsigned i = 0; i < steps; ++i) out = rewrite(rng, out);
  return out;
}

Sequent random_valid_sequent(Rng& rng, std::size_t max_cost) {
  for (;;) {
    Sequent s = shuffle_sequent(rng, valid_candidate(rng));
    if (cost(s) <= max_cost && sequent_valid(s)) return s;
  }
}

bool naive_sat(const Formula& f) {
  const auto atoms_set = free_atoms(f);
  const std::vector<std::string> atoms(atoms_set.begin(), atoms_set.end());
  if (atoms.size() > 16) throw std::invalid_argument("naive_sat: too many atoms");
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << atoms.size()); ++a) {
    Structure st;
    for (std::size_t i = 0; i < atoms.size(); ++i) st.atoms[atoms[i]] = (a >> i) & 1;
    std::set<std::string> strings;
    possible(f, st.atoms, strings);
    const std::vector<std::string> universe(strings.begin(), strings.end());
    if (universe.size() > 20) throw std::invalid_argument("naive_sat: too many strings");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << universe.size()); ++mask) {
      st.oracle.clear();
      for (std::size_t i = 0; i < universe.size(); ++i)
        if ((mask >> i) & 1) st.oracle.insert(universe[i]);
      if (eval(f, st)) return true;
    }
  }
  return false;
}

std::vector<std::string> quantified_suite() {
  return {
      "|- ex x. (x | ~x)",
      "all x. R(x) |- R(0)",
      "|- ex x. (R(x) | ~R(x))",
      "all x. R(x) |- all y. R(y)",
      "ex x. R(x) |- ex y. R(y)",
      "|- all x. (x | ~x)",
      "R(0), R(1) |- all x. R(x)",
      "ex x. R(x) |- R(0), R(1)",
      "|- ex x. ex y. (x & ~y)",
      "all x. all y. R(x, y) |- R(1, 0)",
      "|- all x. ex y. (x <=> y)",
      "ex x. all y. R(x, y) |- ex x. R(x, 1)",
      "|- all x. (R(x) | ~R(x))",
      "all x. R(x) |- ex x. R(x)",
      "|- ex x. (R(x) => R(1))",
      "|- ex x. (R(0) & R(1) => R(x))",
      "R(0) | R(1) |- ex x. R(x)",
      "ex x. R(x, x) |- ex x. ex y. R(x, y)",
      "all x. all y. R(x, y) |- all z. R(z, z)",
      "|- ex x. all y. (R(y) => R(y) | x)",
      "all x. (R(x) => R(~x)), R(0) |- R(1)",
      "|- ex x. (R(x, 0, 1) | ~R(x, 0, 1))",
      "all x. R(x, x, x) |- R(1, 1, 1)",
      "R(1, 0, 1) |- ex x. ex y. R(x, y, x)",
      "ex x. (x & R(x)) |- R(1)",
      "all x. (x | R(x)) |- R(0)",
      "|- all x. (R(x & x) <=> R(x))",
      "all x. ex y. R(x, y) |- ex y. R(0, y)",
      "|- ex x. (R(x) | R(~x)), all y. ~R(y)",
      "ex x. ~R(x) |- ~R(0), ~R(1)",
  };
}

Formula closed_sequent_formula(const Sequent& s) {
  Formula f = sequent_formula(s);
  for (const auto& a : free_atoms(f)) f = Formula::forall(a, f);
  return f;
}

Structure random_structure(Rng& rng, const std::vector<std::string>& atoms, std::size_t arity) {
  Structure st;
  for (const auto& a : atoms) st.atoms[a] = coin(rng);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << arity); ++v) {
    if (!coin(rng)) continue;
    std::string s(arity, '0');
    for (std::size_t i = 0; i < arity; ++i)
      if ((v >> i) & 1) s[i] = '1';
    st.oracle.insert(s);
  }
  return st;
}

}  // namespace pcr::testing
