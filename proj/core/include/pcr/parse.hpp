// Text syntax for formulas and sequents.
//
//   formula := iff
//   iff     := imp ("<=>" imp)*          A <=> B  is  (A => B) & (B => A)
//   imp     := or ("=>" imp)?            A => B   is  ~A | B
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | "all" ID "." unary | "ex" ID "." unary | atom
//   atom    := "0" | "1" | ID | "R" "(" [formula ("," formula)*] ")" | "(" formula ")"
//   sequent := [formula ("," formula)*] "|-" [formula ("," formula)*]
//
// Identifiers match [a-z][a-zA-Z0-9_]*; "all" and "ex" are keywords and "R" is
// reserved. "#" starts a comment that runs to the end of the line.

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pcr/formula.hpp"

namespace pcr {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

Formula parse_formula(std::string_view text);
Sequent parse_sequent(std::string_view text);

// A sequent if the text contains "|-", otherwise a single formula.
std::variant<Formula, Sequent> parse_formula_or_sequent(std::string_view text);

// Treat a bare formula F as the sequent |- F.
Sequent parse_as_sequent(std::string_view text);

// One sequent per non-blank, non-comment line.
std::vector<Sequent> parse_batch(std::string_view text);

bool is_identifier(std::string_view s);

}  // namespace pcr
