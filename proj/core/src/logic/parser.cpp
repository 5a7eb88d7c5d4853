#include "aspomcp/logic/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace aspomcp::logic {

namespace {

enum class Tok {
  Ident,
  Variable,
  Int,
  If,       // :-
  Weak,     // :~
  Dot,
  Range,    // ..
  Comma,
  Semicolon,
  LParen,
  RParen,
  LBracket,
  RBracket,
  At,
  Le,
  Ge,
  Lt,
  Gt,
  Eq,
  Minus,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", line_, col_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
        ++col_;
      }
      ++pos_;
    }
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  Token make(Tok kind, std::size_t length) {
    Token t{kind, std::string(text_.substr(pos_, length)), line_, col_};
    advance(length);
    return t;
  }

  Token next() {
    char c = text_[pos_];
    if (std::islower(static_cast<unsigned char>(c)) || std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) ++end;
      return make(std::islower(static_cast<unsigned char>(c)) ? Tok::Ident : Tok::Variable, end - pos_);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      return make(Tok::Int, end - pos_);
    }
    static constexpr std::pair<std::string_view, Tok> kSymbols[] = {
        {":-", Tok::If},  {":~", Tok::Weak}, {"..", Tok::Range}, {"<=", Tok::Le},        {">=", Tok::Ge},
        {"≤", Tok::Le}, {"≥", Tok::Ge}, {".", Tok::Dot}, {",", Tok::Comma},    {";", Tok::Semicolon},
        {"(", Tok::LParen}, {")", Tok::RParen}, {"[", Tok::LBracket}, {"]", Tok::RBracket}, {"@", Tok::At},
        {"<", Tok::Lt},   {">", Tok::Gt},     {"=", Tok::Eq},      {"-", Tok::Minus},
    };
    for (auto [sym, kind] : kSymbols) {
      if (starts_with(sym)) return make(kind, sym.size());
    }
    throw ProgramError(ProgramErrorKind::Syntax, "unexpected character '" + std::string(1, c) + "'", line_, col_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Operand {
  bool is_variable = false;
  std::string variable;
  int value = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Program run() {
    std::vector<Rule> rules;
    std::vector<WeakConstraint> weak;
    std::vector<FactStatement> facts;
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Weak) {
        weak.push_back(weak_constraint());
      } else {
        statement(rules, facts);
      }
    }
    return Program(std::move(rules), std::move(weak), std::move(facts));
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& take() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    const auto& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ProgramError(ProgramErrorKind::Syntax, "expected " + what + ", found " + found, t.line, t.column);
  }

  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(what);
    return take();
  }

  int integer() {
    bool negative = accept(Tok::Minus);
    const auto& t = expect(Tok::Int, "integer");
    try {
      int v = std::stoi(t.text);
      return negative ? -v : v;
    } catch (const std::out_of_range&) {
      throw ProgramError(ProgramErrorKind::Syntax, "integer out of range", t.line, t.column);
    }
  }

  Term term() {
    if (peek().kind == Tok::Variable) return Term::var(take().text);
    if (peek().kind == Tok::Int || peek().kind == Tok::Minus) return Term::constant(integer());
    fail("variable or integer");
  }

  // Atom whose arguments may include `lo..hi` ranges; ranges are only legal
  // in facts, which the caller checks.
  AtomPattern atom(std::vector<std::pair<int, int>>* ranges) {
    const auto& name = expect(Tok::Ident, "predicate name");
    AtomPattern a{Symbol(name.text), {}};
    if (accept(Tok::LParen)) {
      do {
        Term t = term();
        if (!t.is_variable() && peek().kind == Tok::Range) {
          if (!ranges) fail("',' or ')'");
          take();
          int hi = integer();
          ranges->emplace_back(t.value, hi);
          a.args.push_back(t);
          continue;
        }
        if (ranges) ranges->emplace_back(t.value, t.value);
        a.args.push_back(t);
      } while (accept(Tok::Comma));
      expect(Tok::RParen, "')'");
    }
    if (a.args.size() > kMaxArity) {
      throw ProgramError(ProgramErrorKind::Syntax, "arity exceeds " + std::to_string(kMaxArity), name.line,
                         name.column);
    }
    return a;
  }

  Operand operand() {
    if (peek().kind == Tok::Variable) return {true, take().text, 0};
    if (peek().kind == Tok::Int || peek().kind == Tok::Minus) return {false, {}, integer()};
    fail("literal");
  }

  static bool is_comparison(Tok k) { return k == Tok::Le || k == Tok::Ge || k == Tok::Lt || k == Tok::Gt || k == Tok::Eq; }

  static Tok mirror(Tok k) {
    switch (k) {
      case Tok::Le: return Tok::Ge;
      case Tok::Ge: return Tok::Le;
      case Tok::Lt: return Tok::Gt;
      case Tok::Gt: return Tok::Lt;
      default: return k;
    }
  }

  // Applies `variable op constant` to the guard's interval.
  static void bound(Guard& g, Tok op, int c) {
    switch (op) {
      case Tok::Ge: g.lower = c; break;
      case Tok::Gt: g.lower = c + 1; break;
      case Tok::Le: g.upper = c; break;
      case Tok::Lt: g.upper = c - 1; break;
      case Tok::Eq: g.lower = c; g.upper = c; break;
      default: break;
    }
  }

  Literal comparison() {
    const Token& start = peek();
    Operand left = operand();
    if (!is_comparison(peek().kind)) fail("comparison operator");
    Tok op1 = take().kind;
    Operand mid = operand();
    Guard g;
    if (is_comparison(peek().kind)) {
      Tok op2 = take().kind;
      Operand right = operand();
      bool ascending = (op1 == Tok::Le || op1 == Tok::Lt) && (op2 == Tok::Le || op2 == Tok::Lt);
      bool descending = (op1 == Tok::Ge || op1 == Tok::Gt) && (op2 == Tok::Ge || op2 == Tok::Gt);
      if (left.is_variable || !mid.is_variable || right.is_variable || !(ascending || descending)) {
        throw ProgramError(ProgramErrorKind::Syntax, "interval comparison must read c1 <= V <= c2", start.line,
                           start.column);
      }
      g.variable = mid.variable;
      bound(g, mirror(op1), left.value);
      bound(g, op2, right.value);
    } else if (left.is_variable && !mid.is_variable) {
      g.variable = left.variable;
      bound(g, op1, mid.value);
    } else if (!left.is_variable && mid.is_variable) {
      g.variable = mid.variable;
      bound(g, mirror(op1), left.value);
    } else {
      throw ProgramError(ProgramErrorKind::Syntax, "comparison must relate one variable and one integer",
                         start.line, start.column);
    }
    return Literal::comparison(std::move(g));
  }

  Literal literal() {
    if (peek().kind == Tok::Ident && peek().text == "not" && peek(1).kind == Tok::Ident) {
      take();
      return Literal::negative(atom(nullptr));
    }
    if (peek().kind == Tok::Ident) return Literal::positive(atom(nullptr));
    return comparison();
  }

  std::vector<Literal> body() {
    std::vector<Literal> out;
    do {
      out.push_back(literal());
    } while (accept(Tok::Comma) || accept(Tok::Semicolon));
    return out;
  }

  void statement(std::vector<Rule>& rules, std::vector<FactStatement>& facts) {
    int line = peek().line;
    std::vector<std::pair<int, int>> ranges;
    AtomPattern head = atom(&ranges);
    bool has_range = std::ranges::any_of(ranges, [](auto r) { return r.first != r.second; });
    if (accept(Tok::If)) {
      if (has_range) {
        throw ProgramError(ProgramErrorKind::Syntax, "ranges are only allowed in facts", line, 1);
      }
      Rule r{std::move(head), body(), line};
      expect(Tok::Dot, "'.'");
      rules.push_back(std::move(r));
      return;
    }
    expect(Tok::Dot, "'.' or ':-'");
    bool ground = std::ranges::none_of(head.args, [](const Term& t) { return t.is_variable(); });
    if (ground) {
      facts.push_back({head.predicate, std::move(ranges)});
    } else {
      rules.push_back(Rule{std::move(head), {}, line});
    }
  }

  WeakConstraint weak_constraint() {
    WeakConstraint wc;
    wc.line = peek().line;
    expect(Tok::Weak, "':~'");
    wc.body = body();
    expect(Tok::Dot, "'.'");
    expect(Tok::LBracket, "'['");
    bool negated = accept(Tok::Minus);
    if (peek().kind == Tok::Variable) {
      wc.weight = Weight{true, take().text, negated, 0};
    } else {
      int v = std::stoi(expect(Tok::Int, "weight").text);
      wc.weight = Weight{false, {}, false, negated ? -v : v};
    }
    expect(Tok::At, "'@'");
    wc.level = integer();
    while (accept(Tok::Comma)) wc.terms.push_back(term());
    expect(Tok::RBracket, "']'");
    return wc;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(Lexer(text).run()).run(); }

Program load_program(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rule file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_program(buffer.str());
}

}  // namespace aspomcp::logic
