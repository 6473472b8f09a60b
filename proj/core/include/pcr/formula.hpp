// Formula and sequent data model for PC(R) / QPC(R).

#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Kind : unsigned char { Atom, Const, Not, And, Or, RApp, Forall, Exists };

// Immutable, structurally compared formula. Copies share the underlying node.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula constant(bool bit);
  static Formula negation(Formula a);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula rapp(std::vector<Formula> args);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  Kind kind() const noexcept { return node_->kind; }
  // Atom name, or the bound variable of a quantifier.
  const std::string& name() const noexcept { return node_->name; }
  bool bit() const noexcept { return node_->bit; }
  std::span<const Formula> children() const noexcept { return node_->children; }
  const Formula& child(std::size_t i = 0) const { return node_->children.at(i); }
  const Formula& left() const { return child(0); }
  const Formula& right() const { return child(1); }
  const Formula& body() const { return child(0); }

  bool is_atom() const noexcept { return kind() == Kind::Atom; }
  bool is_const() const noexcept { return kind() == Kind::Const; }
  bool is_const(bool b) const noexcept { return is_const() && bit() == b; }
  bool is_quantifier() const noexcept {
    return kind() == Kind::Forall || kind() == Kind::Exists;
  }
  bool is_quantifier_free() const noexcept { return node_->depth == 0; }
  // Maximum nesting of quantifiers, counting through R arguments.
  unsigned quantifier_depth() const noexcept { return node_->depth; }
  std::size_t hash() const noexcept { return node_->hash; }
  // Number of AST nodes.
  std::size_t size() const noexcept { return node_->size; }
  // Node identity; equal identities imply structural equality.
  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node {
    Kind kind;
    bool bit = false;
    unsigned depth = 0;
    std::size_t hash = 0;
    std::size_t size = 1;
    std::string name;
    std::vector<Formula> children;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Kind kind, bool bit, std::string name, std::vector<Formula> children);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

// Surface sugar; the AST has no implication node.
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
// Left-associated chains. Empty conjunction is 1, empty disjunction is 0.
Formula conj_all(std::span<const Formula> parts);
Formula disj_all(std::span<const Formula> parts);

// Cedents are sequences: order and multiplicity matter.
struct Sequent {
  std::vector<Formula> antecedent;
  std::vector<Formula> succedent;

  bool is_quantifier_free() const;
  friend bool operator==(const Sequent&, const Sequent&) = default;
};

class CostError : public Error {
 public:
  CostError() : Error("cost undefined for quantified formulas") {}
};

// Number of ~, &, | occurrences plus, for every R application, the number of
// arguments other than the constants 0 and 1.
std::size_t cost(const Formula& f);
std::size_t cost(const Sequent& s);

// Token count of the canonical rendering.
std::size_t length(const Formula& f);
std::size_t length(const Sequent& s);

class CaptureError : public Error {
 public:
  CaptureError(const std::string& binder, const std::string& var)
      : Error("substitution for '" + var + "' would be captured by binder '" + binder + "'"),
        binder_(binder) {}
  const std::string& binder() const noexcept { return binder_; }

 private:
  std::string binder_;
};

// Replace free occurrences of `var` by `replacement`. Throws CaptureError when a
// free atom of the replacement would become bound.
Formula substitute(const Formula& f, const std::string& var, const Formula& replacement);

std::set<std::string> free_atoms(const Formula& f);
std::set<std::string> free_atoms(const Sequent& s);
// Every identifier that appears anywhere, bound or free.
void collect_names(const Formula& f, std::set<std::string>& out);

// Arity of every R application in the formula (including nested ones).
std::set<std::size_t> r_arities(const Formula& f);

enum class FormulaClass { QuantifierFree, Pi1, Sigma1, Sigma2, Other };
std::string_view to_string(FormulaClass c);

// Quantifier class, closing over and/or/not: a conjunction of Pi1 formulas is
// Pi1, the negation of a Sigma1 formula is Pi1, and so on. Quantifiers inside
// R arguments make a formula Other.
FormulaClass classify(const Formula& f);

// Canonical text. Binary operators associate left and only necessary
// parentheses are emitted.
std::string to_string(const Formula& f);
std::string to_string(const Sequent& s);
std::vector<std::string> tokens(const Formula& f);
std::vector<std::string> tokens(const Sequent& s);

}  // namespace pcr
