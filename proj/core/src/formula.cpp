#include "pcr/formula.hpp"

#include <algorithm>
#include <functional>
#include <utility>

namespace pcr {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Kind kind, bool bit, std::string name, std::vector<Formula> children) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->bit = bit;
  n->name = std::move(name);
  n->children = std::move(children);
  std::size_t h = mix(static_cast<std::size_t>(kind) * 31 + (bit ? 1 : 0), std::hash<std::string>{}(n->name));
  unsigned depth = 0;
  std::size_t size = 1;
  for (const auto& c : n->children) {
    h = mix(h, c.hash());
    depth = std::max(depth, c.quantifier_depth());
    size += c.size();
  }
  if (kind == Kind::Forall || kind == Kind::Exists) ++depth;
  n->hash = h;
  n->depth = depth;
  n->size = size;
  return Formula(std::move(n));
}

Formula Formula::atom(std::string name) { return make(Kind::Atom, false, std::move(name), {}); }

Formula Formula::constant(bool bit) {
  static const Formula zero = make(Kind::Const, false, {}, {});
  static const Formula one = make(Kind::Const, true, {}, {});
  return bit ? one : zero;
}

Formula Formula::negation(Formula a) { return make(Kind::Not, false, {}, {std::move(a)}); }

Formula Formula::conj(Formula a, Formula b) {
  return make(Kind::And, false, {}, {std::move(a), std::move(b)});
}

Formula Formula::disj(Formula a, Formula b) {
  return make(Kind::Or, false, {}, {std::move(a), std::move(b)});
}

Formula Formula::rapp(std::vector<Formula> args) { return make(Kind::RApp, false, {}, std::move(args)); }

Formula Formula::forall(std::string var, Formula body) {
  return make(Kind::Forall, false, std::move(var), {std::move(body)});
}

Formula Formula::exists(std::string var, Formula body) {
  return make(Kind::Exists, false, std::move(var), {std::move(body)});
}

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.bit != y.bit || x.size != y.size ||
      x.name != y.name || x.children.size() != y.children.size())
    return false;
  for (std::size_t i = 0; i < x.children.size(); ++i)
    if (!(x.children[i] == y.children[i])) return false;
  return true;
}

Formula implies(Formula a, Formula b) { return Formula::disj(Formula::negation(std::move(a)), std::move(b)); }

Formula iff(Formula a, Formula b) { return Formula::conj(implies(a, b), implies(b, a)); }

Formula conj_all(std::span<const Formula> parts) {
  if (parts.empty()) return Formula::constant(true);
  Formula acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
  return acc;
}

Formula disj_all(std::span<const Formula> parts) {
  if (parts.empty()) return Formula::constant(false);
  Formula acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disj(acc, parts[i]);
  return acc;
}

bool Sequent::is_quantifier_free() const {
  auto qf = [](const Formula& f) { return f.is_quantifier_free(); };
  return std::all_of(antecedent.begin(), antecedent.end(), qf) &&
         std::all_of(succedent.begin(), succedent.end(), qf);
}

std::size_t cost(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Const:
      return 0;
    case Kind::Not:
      return 1 + cost(f.child());
    case Kind::And:
    case Kind::Or:
      return 1 + cost(f.left()) + cost(f.right());
    case Kind::RApp: {
      std::size_t c = 0;
      for (const auto& a : f.children()) c += cost(a) + (a.is_const() ? 0 : 1);
      return c;
    }
    case Kind::Forall:
    case Kind::Exists:
      break;
  }
  throw CostError();
}

std::size_t cost(const Sequent& s) {
  std::size_t c = 0;
  for (const auto& f : s.antecedent) c += cost(f);
  for (const auto& f : s.succedent) c += cost(f);
  return c;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

// Precedence levels: 0 accepts anything, 1 accepts & and unary, 2 only unary.
template <class Sink>
void render(const Formula& f, int level, Sink& out) {
  switch (f.kind()) {
    case Kind::Atom:
      out(f.name());
      return;
    case Kind::Const:
      out(f.bit() ? "1" : "0");
      return;
    case Kind::RApp: {
      out("R");
      out("(");
      bool first = true;
      for (const auto& a : f.children()) {
        if (!first) out(",");
        first = false;
        render(a, 0, out);
      }
      out(")");
      return;
    }
    case Kind::Not:
      out("~");
      render(f.child(), 2, out);
      return;
    case Kind::Forall:
    case Kind::Exists:
      out(f.kind() == Kind::Forall ? "all" : "ex");
      out(f.name());
      out(".");
      render(f.body(), 2, out);
      return;
    case Kind::And:
    case Kind::Or: {
      const bool is_and = f.kind() == Kind::And;
      const int mine = is_and ? 1 : 0;
      const bool paren = level > mine;
      if (paren) out("(");
      render(f.left(), mine, out);
      out(is_and ? "&" : "|");
      render(f.right(), mine + 1, out);
      if (paren) out(")");
      return;
    }
  }
}

struct TextSink {
  std::string text;
  void operator()(std::string_view tok) {
    if (tok == "&" || tok == "|" || tok == "|-") {
      text += ' ';
      text += tok;
      text += ' ';
    } else if (tok == "," || tok == "." || tok == "all" || tok == "ex") {
      text += tok;
      text += ' ';
    } else {
      text += tok;
    }
  }
};

struct CountSink {
  std::size_t n = 0;
  void operator()(std::string_view) { ++n; }
};

struct TokenSink {
  std::vector<std::string> toks;
  void operator()(std::string_view tok) { toks.emplace_back(tok); }
};

std::string join_cedent(const std::vector<Formula>& fs) {
  std::string s;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) s += ", ";
    s += to_string(fs[i]);
  }
  return s;
}

}  // namespace

std::string to_string(const Formula& f) {
  TextSink sink;
  render(f, 0, sink);
  return std::move(sink.text);
}

std::string to_string(const Sequent& s) {
  std::string out = join_cedent(s.antecedent);
  if (!out.empty()) out += ' ';
  out += "|-";
  if (!s.succedent.empty()) {
    out += ' ';
    out += join_cedent(s.succedent);
  }
  return out;
}

std::vector<std::string> tokens(const Formula& f) {
  TokenSink sink;
  render(f, 0, sink);
  return std::move(sink.toks);
}

std::vector<std::string> tokens(const Sequent& s) {
  TokenSink sink;
  for (std::size_t i = 0; i < s.antecedent.size(); ++i) {
    if (i) sink(",");
    render(s.antecedent[i], 0, sink);
  }
  sink("|-");
  for (std::size_t i = 0; i < s.succedent.size(); ++i) {
    if (i) sink(",");
    render(s.succedent[i], 0, sink);
  }
  return std::move(sink.toks);
}

std::size_t length(const Formula& f) {
  CountSink sink;
  render(f, 0, sink);
  return sink.n;
}

std::size_t length(const Sequent& s) {
  std::size_t n = 1;  // |-
  for (const auto& f : s.antecedent) n += length(f);
  for (const auto& f : s.succedent) n += length(f);
  if (!s.antecedent.empty()) n += s.antecedent.size() - 1;
  if (!s.succedent.empty()) n += s.succedent.size() - 1;
  return n;
}

// ---------------------------------------------------------------------------
// Variables and substitution

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::Atom:
      if (std::find(bound.begin(), bound.end(), f.name()) == bound.end()) out.insert(f.name());
      return;
    case Kind::Forall:
    case Kind::Exists:
      bound.push_back(f.name());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      return;
    default:
      for (const auto& c : f.children()) collect_free(c, bound, out);
  }
}

bool occurs_free(const Formula& f, const std::string& var) {
  switch (f.kind()) {
    case Kind::Atom:
      return f.name() == var;
    case Kind::Const:
      return false;
    case Kind::Forall:
    case Kind::Exists:
      return f.name() != var && occurs_free(f.body(), var);
    default:
      for (const auto& c : f.children())
        if (occurs_free(c, var)) return true;
      return false;
  }
}

Formula subst(const Formula& f, const std::string& var, const Formula& repl,
              const std::set<std::string>& repl_free) {
  switch (f.kind()) {
    case Kind::Atom:
      return f.name() == var ? repl : f;
    case Kind::Const:
      return f;
    case Kind::Forall:
    case Kind::Exists: {
      if (f.name() == var || !occurs_free(f.body(), var)) return f;
      if (repl_free.count(f.name())) throw CaptureError(f.name(), var);
      Formula body = subst(f.body(), var, repl, repl_free);
      return f.kind() == Kind::Forall ? Formula::forall(f.name(), std::move(body))
                                      : Formula::exists(f.name(), std::move(body));
    }
    case Kind::Not:
      return Formula::negation(subst(f.child(), var, repl, repl_free));
    case Kind::And:
      return Formula::conj(subst(f.left(), var, repl, repl_free), subst(f.right(), var, repl, repl_free));
    case Kind::Or:
      return Formula::disj(subst(f.left(), var, repl, repl_free), subst(f.right(), var, repl, repl_free));
    case Kind::RApp: {
      std::vector<Formula> args;
      args.reserve(f.children().size());
      for (const auto& a : f.children()) args.push_back(subst(a, var, repl, repl_free));
      return Formula::rapp(std::move(args));
    }
  }
  return f;
}

}  // namespace

std::set<std::string> free_atoms(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> free_atoms(const Sequent& s) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  for (const auto& f : s.antecedent) collect_free(f, bound, out);
  for (const auto& f : s.succedent) collect_free(f, bound, out);
  return out;
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == Kind::Atom || f.is_quantifier()) out.insert(f.name());
  for (const auto& c : f.children()) collect_names(c, out);
}

std::set<std::size_t> r_arities(const Formula& f) {
  std::set<std::size_t> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.kind() == Kind::RApp) out.insert(g.children().size());
    for (const auto& c : g.children()) walk(c);
  };
  walk(f);
  return out;
}

Formula substitute(const Formula& f, const std::string& var, const Formula& replacement) {
  return subst(f, var, replacement, free_atoms(replacement));
}

// ---------------------------------------------------------------------------
// Classification

namespace {

struct Level {
  unsigned sigma = 0;
  unsigned pi = 0;
  bool other = false;
};

Level level_of(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Const:
      return {};
    case Kind::RApp:
      return Level{0, 0, !f.is_quantifier_free()};
    case Kind::Not: {
      Level a = level_of(f.child());
      return Level{a.pi, a.sigma, a.other};
    }
    case Kind::And:
    case Kind::Or: {
      Level a = level_of(f.left());
      Level b = level_of(f.right());
      return Level{std::max(a.sigma, b.sigma), std::max(a.pi, b.pi), a.other || b.other};
    }
    case Kind::Exists: {
      Level a = level_of(f.body());
      unsigned s = std::max(1u, std::min(a.sigma, a.pi + 1));
      return Level{s, s + 1, a.other};
    }
    case Kind::Forall: {
      Level a = level_of(f.body());
      unsigned p = std::max(1u, std::min(a.pi, a.sigma + 1));
      return Level{p + 1, p, a.other};
    }
  }
  return {};
}

}  // namespace

std::string_view to_string(FormulaClass c) {
  switch (c) {
    case FormulaClass::QuantifierFree:
      return "quantifier_free";
    case FormulaClass::Pi1:
      return "pi1";
    case FormulaClass::Sigma1:
      return "sigma1";
    case FormulaClass::Sigma2:
      return "sigma2";
    case FormulaClass::Other:
      return "other";
  }
  return "other";
}

FormulaClass classify(const Formula& f) {
  if (f.is_quantifier_free()) return FormulaClass::QuantifierFree;
  Level l = level_of(f);
  if (l.other) return FormulaClass::Other;
  if (l.pi == 1) return FormulaClass::Pi1;
  if (l.sigma == 1) return FormulaClass::Sigma1;
  if (l.sigma == 2) return FormulaClass::Sigma2;
  return FormulaClass::Other;
}

}  // namespace pcr
