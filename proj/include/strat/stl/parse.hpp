#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "strat/stl/formula.hpp"
#include "strat/util/error.hpp"

namespace strat {
namespace stl_detail {

struct Token {
  enum class Kind { Ident, Number, Ge, Le, Not, And, Or, LParen, RParen, LBrack, RBrack, Comma, End };
  Kind kind;
  std::string text;
  double value = 0.0;
  std::size_t pos = 0;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& what, std::size_t pos) const {
    throw DomainError("syntax-error", what + " at position " + std::to_string(pos));
  }

private:
  std::string src_;
  std::size_t at_ = 0;
  Token current_;

  void advance() {
    while (at_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[at_]))) ++at_;
    current_.pos = at_;
    current_.text.clear();
    if (at_ >= src_.size()) {
      current_.kind = Token::Kind::End;
      return;
    }
    const char c = src_[at_];
    auto two = [&](char a, char b) {
      return c == a && at_ + 1 < src_.size() && src_[at_ + 1] == b;
    };
    if (two('>', '=')) { current_.kind = Token::Kind::Ge; at_ += 2; return; }
    if (two('<', '=')) { current_.kind = Token::Kind::Le; at_ += 2; return; }
    switch (c) {
      case '!': current_.kind = Token::Kind::Not; ++at_; return;
      case '&': current_.kind = Token::Kind::And; ++at_; return;
      case '|': current_.kind = Token::Kind::Or; ++at_; return;
      case '(': current_.kind = Token::Kind::LParen; ++at_; return;
      case ')': current_.kind = Token::Kind::RParen; ++at_; return;
      case '[': current_.kind = Token::Kind::LBrack; ++at_; return;
      case ']': current_.kind = Token::Kind::RBrack; ++at_; return;
      case ',': current_.kind = Token::Kind::Comma; ++at_; return;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = at_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
        ++end;
      current_.kind = Token::Kind::Ident;
      current_.text = src_.substr(at_, end - at_);
      at_ = end;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      std::size_t used = 0;
      try {
        current_.value = std::stod(src_.substr(at_), &used);
      } catch (const std::exception&) {
        fail("bad number", at_);
      }
      current_.kind = Token::Kind::Number;
      current_.text = src_.substr(at_, used);
      at_ += used;
      return;
    }
    fail(std::string("unexpected character '") + c + "'", at_);
  }
};

class Parser {
public:
  explicit Parser(const std::string& src) : lex_(src) {}

  FormulaPtr run() {
    FormulaPtr f = parse_or();
    if (lex_.peek().kind != Token::Kind::End)
      lex_.fail("trailing input", lex_.peek().pos);
    return f;
  }

private:
  Lexer lex_;

  // precedence, loosest first: |  then  &  then  U  then prefix ! F G
  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (lex_.peek().kind == Token::Kind::Or) {
      lex_.take();
      f = Formula::disj(f, parse_and());
    }
    return f;
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_until();
    while (lex_.peek().kind == Token::Kind::And) {
      lex_.take();
      f = Formula::conj(f, parse_until());
    }
    return f;
  }

  FormulaPtr parse_until() {
    FormulaPtr f = parse_unary();
    while (lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == "U") {
      lex_.take();
      const Interval w = parse_interval();
      f = Formula::until(f, parse_unary(), w);
    }
    return f;
  }

  FormulaPtr parse_unary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Not) {
      lex_.take();
      return Formula::negation(parse_unary());
    }
    if (t.kind == Token::Kind::Ident && (t.text == "F" || t.text == "G")) {
      const bool eventually = t.text == "F";
      lex_.take();
      const Interval w = parse_interval();
      FormulaPtr sub = parse_unary();
      return eventually ? Formula::eventually(sub, w) : Formula::always(sub, w);
    }
    return parse_primary();
  }

  FormulaPtr parse_primary() {
    const Token t = lex_.take();
    if (t.kind == Token::Kind::LParen) {
      FormulaPtr f = parse_or();
      expect(Token::Kind::RParen, "')'");
      return f;
    }
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "true") return Formula::make_true();
      const Token op = lex_.take();
      Comparator cmp;
      if (op.kind == Token::Kind::Ge) cmp = Comparator::Ge;
      else if (op.kind == Token::Kind::Le) cmp = Comparator::Le;
      else lex_.fail("expected '>=' or '<=' after '" + t.text + "'", op.pos);
      const Token num = lex_.take();
      if (num.kind != Token::Kind::Number) lex_.fail("expected a threshold number", num.pos);
      return Formula::atom(t.text, cmp, num.value);
    }
    lex_.fail("expected a formula", t.pos);
  }

  Interval parse_interval() {
    expect(Token::Kind::LBrack, "'['");
    const Token lo = lex_.take();
    if (lo.kind != Token::Kind::Number) lex_.fail("expected interval start", lo.pos);
    expect(Token::Kind::Comma, "','");
    const Token hi = lex_.take();
    if (hi.kind != Token::Kind::Number) lex_.fail("expected interval end", hi.pos);
    expect(Token::Kind::RBrack, "']'");
    const Interval w{lo.value, hi.value};
    w.check(); // bad-interval rather than syntax-error
    return w;
  }

  void expect(Token::Kind k, const std::string& what) {
    const Token t = lex_.take();
    if (t.kind != k) lex_.fail("expected " + what, t.pos);
  }
};

} // namespace stl_detail

/// Parses the concrete formula syntax:
///   phi := 'true' | ident ('>='|'<=') number | '!' phi | phi '&' phi
///        | phi '|' phi | 'F[a,b]' phi | 'G[a,b]' phi | phi 'U[a,b]' phi
///        | '(' phi ')'
/// Binding, tightest first: prefix (!, F, G), then U, then &, then |;
/// binary operators associate to the left.
inline FormulaPtr parse_formula(const std::string& text) {
  return stl_detail::Parser(text).run();
}

} // namespace strat
