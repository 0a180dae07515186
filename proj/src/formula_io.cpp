// Formula parser and printer.
//
// Precedence, loosest first:  ->   |   &   U R U<= R>   X F G F<= G> !
// `->` and the binary temporal operators associate to the right, & and |
// to the left.

#include <cctype>
#include <string>
#include <vector>

#include "cltl/error.hpp"
#include "cltl/formula.hpp"

namespace cltl {

namespace {

enum class Tok {
  End,
  LParen,
  RParen,
  And,
  Or,
  Implies,
  Not,
  True,
  False,
  Ident,
  Next,
  Eventually,
  Always,
  CostEventually,
  CostAlways,
  Until,
  Release,
  CostUntil,
  CostRelease,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t{Tok::End, "", line_, col_};
      if (pos_ >= s_.size()) {
        out.push_back(t);
        return out;
      }
      char c = s_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                s_[pos_] == '_'))
          advance();
        t.text = std::string(s_.substr(start, pos_ - start));
        t.kind = keyword(t.text);
      } else if (c == '(') {
        advance();
        t.kind = Tok::LParen;
      } else if (c == ')') {
        advance();
        t.kind = Tok::RParen;
      } else if (c == '&') {
        advance();
        t.kind = Tok::And;
      } else if (c == '|') {
        advance();
        t.kind = Tok::Or;
      } else if (c == '!') {
        advance();
        t.kind = Tok::Not;
      } else if (c == '-' && peek(1) == '>') {
        advance();
        advance();
        t.kind = Tok::Implies;
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'",
                         line_, col_);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  Tok keyword(const std::string& w) {
    if (w == "true") return Tok::True;
    if (w == "false") return Tok::False;
    if (w == "X") return Tok::Next;
    if (w == "F") return cost_suffix("<=") ? Tok::CostEventually : Tok::Eventually;
    if (w == "G") return cost_suffix(">") ? Tok::CostAlways : Tok::Always;
    if (w == "U") return cost_suffix("<=") ? Tok::CostUntil : Tok::Until;
    if (w == "R") return cost_suffix(">") ? Tok::CostRelease : Tok::Release;
    return Tok::Ident;
  }

  // Consumes `suffix` if it immediately follows the keyword.
  bool cost_suffix(std::string_view suffix) {
    if (s_.substr(pos_, suffix.size()) != suffix) return false;
    for (std::size_t i = 0; i < suffix.size(); ++i) advance();
    return true;
  }

  char peek(std::size_t k) const {
    return pos_ + k < s_.size() ? s_[pos_ + k] : '\0';
  }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  // Whitespace and `#` comments running to the end of the line.
  void skip_space() {
    while (pos_ < s_.size()) {
      if (s_[pos_] == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    Formula f = implication();
    if (cur().kind != Tok::End) fail("unexpected token");
    return f;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  bool accept(Tok k) {
    if (cur().kind != k) return false;
    ++i_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    std::string msg = what;
    if (cur().kind == Tok::End)
      msg += " (end of input)";
    else if (!cur().text.empty())
      msg += " '" + cur().text + "'";
    throw ParseError(msg, cur().line, cur().column);
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Implies))
      return Formula::disj(negate_dual(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Or)) f = Formula::disj(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = binary();
    while (accept(Tok::And)) f = Formula::conj(f, binary());
    return f;
  }

  Formula binary() {
    Formula lhs = unary();
    switch (cur().kind) {
      case Tok::Until: ++i_; return Formula::until(lhs, binary());
      case Tok::Release: ++i_; return Formula::release(lhs, binary());
      case Tok::CostUntil: ++i_; return Formula::cost_until(lhs, binary());
      case Tok::CostRelease: ++i_; return Formula::cost_release(lhs, binary());
      default: return lhs;
    }
  }

  Formula unary() {
    switch (cur().kind) {
      case Tok::Not: ++i_; return negate_dual(unary());
      case Tok::Next: ++i_; return Formula::next(unary());
      case Tok::Eventually: ++i_; return Formula::eventually(unary());
      case Tok::Always: ++i_; return Formula::always(unary());
      case Tok::CostEventually: ++i_; return Formula::cost_eventually(unary());
      case Tok::CostAlways: ++i_; return Formula::cost_always(unary());
      default: return atom();
    }
  }

  Formula atom() {
    switch (cur().kind) {
      case Tok::True: ++i_; return Formula::top();
      case Tok::False: ++i_; return Formula::bottom();
      case Tok::Ident: {
        Formula f = Formula::literal(cur().text);
        ++i_;
        return f;
      }
      case Tok::LParen: {
        ++i_;
        Formula f = implication();
        if (!accept(Tok::RParen)) fail("expected ')'");
        return f;
      }
      default: fail("expected a formula");
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// Printer precedence levels; higher binds tighter.
constexpr int kOr = 1;
constexpr int kAnd = 2;
constexpr int kTemporal = 3;
constexpr int kUnary = 4;
constexpr int kAtom = 5;

int level(Formula f) {
  switch (f.op()) {
    case Op::Or: return kOr;
    case Op::And: return kAnd;
    case Op::Next: return kUnary;
    case Op::Until:
      return f.lhs().op() == Op::True ? kUnary : kTemporal;
    case Op::Release:
      return f.lhs().op() == Op::False ? kUnary : kTemporal;
    case Op::CostUntil:
      return f.lhs().op() == Op::False ? kUnary : kTemporal;
    case Op::CostRelease:
      return f.lhs().op() == Op::True ? kUnary : kTemporal;
    default: return kAtom;
  }
}

void emit(Formula f, std::string& out);

void emit_operand(Formula f, bool parens, std::string& out) {
  if (parens) out += '(';
  emit(f, out);
  if (parens) out += ')';
}

struct Spelling {
  const char* sugar;  // unary form, used when the left operand is the unit
  const char* infix;
};

Spelling spelling(Op op) {
  switch (op) {
    case Op::Until: return {"F ", " U "};
    case Op::Release: return {"G ", " R "};
    case Op::CostUntil: return {"F<= ", " U<= "};
    case Op::CostRelease: return {"G> ", " R> "};
    default: return {nullptr, nullptr};
  }
}

void emit(Formula f, std::string& out) {
  switch (f.op()) {
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Literal:
      if (!f.positive()) out += '!';
      out += prop_name(f.prop());
      return;
    case Op::And:
    case Op::Or: {
      int mine = level(f);
      emit_operand(f.lhs(), level(f.lhs()) < mine, out);
      out += f.op() == Op::And ? " & " : " | ";
      emit_operand(f.rhs(), level(f.rhs()) <= mine, out);
      return;
    }
    case Op::Next:
      out += "X ";
      emit_operand(f.child(), level(f.child()) != kAtom, out);
      return;
    default: break;
  }
  Spelling sp = spelling(f.op());
  if (level(f) == kUnary) {
    out += sp.sugar;
  } else {
    emit_operand(f.lhs(), level(f.lhs()) != kAtom, out);
    out += sp.infix;
  }
  emit_operand(f.rhs(), level(f.rhs()) != kAtom, out);
}

}  // namespace

Formula parse(std::string_view text) { return Parser(Lexer(text).run()).run(); }

std::string print(Formula f) {
  std::string out;
  emit(f, out);
  return out;
}

}  // namespace cltl
