#include "pcr/parse.hpp"

#include <cctype>
#include <optional>

namespace pcr {

namespace {

enum class Tok { Id, Zero, One, R, All, Ex, Not, And, Or, Imp, Iff, LParen, RParen, Comma, Dot, Turnstile, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto push = [&](Tok k, std::size_t n) {
    out.push_back({k, std::string(src.substr(i, n)), line, col});
    advance(n);
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
    if (starts("<=>")) {
      push(Tok::Iff, 3);
    } else if (starts("=>")) {
      push(Tok::Imp, 2);
    } else if (starts("|-")) {
      push(Tok::Turnstile, 2);
    } else if (c == '|') {
      push(Tok::Or, 1);
    } else if (c == '&') {
      push(Tok::And, 1);
    } else if (c == '~') {
      push(Tok::Not, 1);
    } else if (c == '(') {
      push(Tok::LParen, 1);
    } else if (c == ')') {
      push(Tok::RParen, 1);
    } else if (c == ',') {
      push(Tok::Comma, 1);
    } else if (c == '.') {
      push(Tok::Dot, 1);
    } else if (c == '0' || c == '1') {
      if (i + 1 < src.size() && ident_char(src[i + 1]))
        throw ParseError(line, col, "malformed constant");
      push(c == '0' ? Tok::Zero : Tok::One, 1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t n = 1;
      while (i + n < src.size() && ident_char(src[i + n])) ++n;
      std::string_view word = src.substr(i, n);
      if (word == "R") {
        push(Tok::R, n);
      } else if (word == "all") {
        push(Tok::All, n);
      } else if (word == "ex") {
        push(Tok::Ex, n);
      } else if (ident_start(c)) {
        push(Tok::Id, n);
      } else {
        throw ParseError(line, col, "invalid identifier '" + std::string(word) + "'");
      }
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula formula() { return iff_level(); }

  Sequent sequent() {
    Sequent s;
    if (peek().kind != Tok::Turnstile) s.antecedent = cedent();
    expect(Tok::Turnstile, "'|-'");
    if (peek().kind != Tok::End) s.succedent = cedent();
    return s;
  }

  void finish() {
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "'");
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(peek(), std::string("expected ") + what);
    return next();
  }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.column, t.kind == Tok::End ? msg + " at end of input" : msg);
  }

  std::vector<Formula> cedent() {
    std::vector<Formula> fs;
    fs.push_back(formula());
    while (accept(Tok::Comma)) fs.push_back(formula());
    return fs;
  }

  Formula iff_level() {
    Formula f = imp_level();
    while (accept(Tok::Iff)) f = iff(f, imp_level());
    return f;
  }

  Formula imp_level() {
    Formula f = or_level();
    if (accept(Tok::Imp)) return implies(f, imp_level());
    return f;
  }

  Formula or_level() {
    Formula f = and_level();
    while (accept(Tok::Or)) f = Formula::disj(f, and_level());
    return f;
  }

  Formula and_level() {
    Formula f = unary();
    while (accept(Tok::And)) f = Formula::conj(f, unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::negation(unary());
    if (peek().kind == Tok::All || peek().kind == Tok::Ex) {
      const bool all = next().kind == Tok::All;
      const Token& v = peek();
      if (v.kind == Tok::R) fail(v, "reserved name R cannot be bound");
      std::string var = expect(Tok::Id, "bound variable").text;
      expect(Tok::Dot, "'.'");
      Formula body = unary();
      return all ? Formula::forall(std::move(var), std::move(body))
                 : Formula::exists(std::move(var), std::move(body));
    }
    return atom();
  }

  Formula atom() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Zero:
        return Formula::constant(false);
      case Tok::One:
        return Formula::constant(true);
      case Tok::Id:
        return Formula::atom(t.text);
      case Tok::R: {
        if (peek().kind != Tok::LParen) fail(t, "reserved name R used as an atom");
        next();
        std::vector<Formula> args;
        if (!accept(Tok::RParen)) {
          args.push_back(formula());
          while (accept(Tok::Comma)) args.push_back(formula());
          expect(Tok::RParen, "')'");
        }
        return Formula::rapp(std::move(args));
      }
      case Tok::LParen: {
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        fail(t, t.kind == Tok::End ? "expected a formula" : "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool has_turnstile(const std::vector<Token>& toks) {
  for (const auto& t : toks)
    if (t.kind == Tok::Turnstile) return true;
  return false;
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(lex(text));
  Formula f = p.formula();
  p.finish();
  return f;
}

Sequent parse_sequent(std::string_view text) {
  Parser p(lex(text));
  Sequent s = p.sequent();
  p.finish();
  return s;
}

std::variant<Formula, Sequent> parse_formula_or_sequent(std::string_view text) {
  auto toks = lex(text);
  const bool seq = has_turnstile(toks);
  Parser p(std::move(toks));
  if (seq) {
    Sequent s = p.sequent();
    p.finish();
    return s;
  }
  Formula f = p.formula();
  p.finish();
  return f;
}

Sequent parse_as_sequent(std::string_view text) {
  auto parsed = parse_formula_or_sequent(text);
  if (auto* s = std::get_if<Sequent>(&parsed)) return std::move(*s);
  return Sequent{{}, {std::get<Formula>(parsed)}};
}

std::vector<Sequent> parse_batch(std::string_view text) {
  std::vector<Sequent> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    auto toks = lex(line);
    if (toks.size() > 1) {
      try {
        Parser p(std::move(toks));
        Sequent s = p.sequent();
        p.finish();
        out.push_back(std::move(s));
      } catch (const ParseError& e) {
        throw ParseError(line_no, e.column(), e.message());
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return s != "all" && s != "ex";
}

}  // namespace pcr
