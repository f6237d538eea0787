#include "dln/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace dln {

namespace {

enum class Tok : std::uint8_t {
  Name,    // identifier, possibly a keyword
  Le,      // <=
  Sq,      // <~
  LParen,
  RParen,
  Dot,
  Comma,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Tokenizer over the full text; newlines are significant only for positions —
// statement boundaries are line based and handled by the parser via `line`.
class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws_and_comments();
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return {Tok::End, "", line, col};
    char c = text_[pos_];
    if (name_char(c)) {
      std::string s;
      while (pos_ < text_.size() && name_char(text_[pos_])) s += advance();
      return {Tok::Name, s, line, col};
    }
    switch (c) {
      case '<':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          advance(); advance();
          return {Tok::Le, "<=", line, col};
        }
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '~') {
          advance(); advance();
          return {Tok::Sq, "<~", line, col};
        }
        break;
      case '(': advance(); return {Tok::LParen, "(", line, col};
      case ')': advance(); return {Tok::RParen, ")", line, col};
      case '.': advance(); return {Tok::Dot, ".", line, col};
      case ',': advance(); return {Tok::Comma, ",", line, col};
      default: break;
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }

  int line() const { return line_; }

private:
  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

bool is_keyword(const std::string& s) {
  return s == "Top" || s == "Bot" || s == "not" || s == "and" || s == "or" ||
         s == "some" || s == "all" || s == "disjoint";
}

class Parser {
public:
  explicit Parser(std::string_view text) : lex_(text) { shift(); }

  KnowledgeBase parse_kb() {
    KnowledgeBase kb;
    int prev_line = 0;
    while (cur_.kind != Tok::End) {
      // One axiom per line.
      if (cur_.line <= prev_line)
        throw ParseError(cur_.line, cur_.col, "end of line expected after axiom");
      parse_axiom_line(kb);
      prev_line = last_line_;
    }
    return kb;
  }

  Query parse_query() {
    ConceptPtr lhs = concept_expr();
    expect(Tok::Le, "'<=' expected in query");
    ConceptPtr rhs = concept_expr();
    expect_end();
    return {lhs, rhs};
  }

  ConceptPtr parse_concept() {
    ConceptPtr c = concept_expr();
    expect_end();
    return c;
  }

private:
  void shift() {
    last_line_ = cur_.line;
    cur_ = lex_.next();
  }

  void expect(Tok k, const char* msg) {
    if (cur_.kind != k) throw ParseError(cur_.line, cur_.col, msg);
    shift();
  }

  void expect_end() {
    if (cur_.kind != Tok::End)
      throw ParseError(cur_.line, cur_.col, "trailing input after expression");
  }

  bool at_name(const char* kw) const {
    return cur_.kind == Tok::Name && cur_.text == kw;
  }

  void parse_axiom_line(KnowledgeBase& kb) {
    if (at_name("disjoint")) {
      Token t = cur_;
      shift();
      expect(Tok::LParen, "'(' expected after disjoint");
      ConceptPtr a = concept_expr();
      expect(Tok::Comma, "',' expected in disjoint(A, B)");
      ConceptPtr b = concept_expr();
      expect(Tok::RParen, "')' expected to close disjoint");
      (void)t;
      kb.strong.push_back({conj(a, b), bottom()});
      return;
    }
    Token start = cur_;
    ConceptPtr lhs = concept_expr();
    if (cur_.kind == Tok::Le) {
      shift();
      ConceptPtr rhs = concept_expr();
      kb.strong.push_back({lhs, rhs});
    } else if (cur_.kind == Tok::Sq) {
      Token op = cur_;
      shift();
      ConceptPtr rhs = concept_expr();
      if (contains_norm(lhs))
        throw ParseError(start.line, start.col,
                         "normality concept not allowed in the premise of a "
                         "defeasible inclusion");
      DefeasibleInclusion di;
      di.id = static_cast<int>(kb.defeasible.size());
      di.pre = lhs;
      di.con = rhs;
      (void)op;
      kb.defeasible.push_back(std::move(di));
    } else {
      throw ParseError(cur_.line, cur_.col, "'<=' or '<~' expected");
    }
  }

  // concept := or-expr;  or/and are left-folded, canonicalization reorders.
  ConceptPtr concept_expr() { return or_expr(); }

  ConceptPtr or_expr() {
    ConceptPtr c = and_expr();
    while (at_name("or")) {
      shift();
      c = disj(c, and_expr());
    }
    return c;
  }

  ConceptPtr and_expr() {
    ConceptPtr c = unary_expr();
    while (at_name("and")) {
      shift();
      c = conj(c, unary_expr());
    }
    return c;
  }

  ConceptPtr unary_expr() {
    Token t = cur_;
    if (t.kind == Tok::LParen) {
      shift();
      ConceptPtr c = concept_expr();
      expect(Tok::RParen, "')' expected");
      return c;
    }
    if (t.kind != Tok::Name)
      throw ParseError(t.line, t.col, "concept expected");

    if (t.text == "Top") { shift(); return top(); }
    if (t.text == "Bot") { shift(); return bottom(); }
    if (t.text == "not") {
      shift();
      return negate(unary_expr());
    }
    if (t.text == "some" || t.text == "all") {
      bool ex = t.text == "some";
      shift();
      if (cur_.kind != Tok::Name || is_keyword(cur_.text))
        throw ParseError(cur_.line, cur_.col, "role name expected");
      std::string role = cur_.text;
      shift();
      expect(Tok::Dot, "'.' expected after role name");
      ConceptPtr filler = unary_expr();
      return ex ? exists(std::move(role), filler) : forall(std::move(role), filler);
    }
    if (t.text == "N") {
      // `N(` opens a normality concept; a bare `N` is an ordinary name.
      shift();
      if (cur_.kind == Tok::LParen) {
        shift();
        ConceptPtr inner = concept_expr();
        expect(Tok::RParen, "')' expected to close N(...)");
        if (contains_norm(inner))
          throw ParseError(t.line, t.col, "normality concepts cannot be nested");
        return norm(inner);
      }
      return atom("N");
    }
    if (is_keyword(t.text))
      throw ParseError(t.line, t.col, "concept expected, found keyword '" + t.text + "'");
    shift();
    return atom(t.text);
  }

  Lexer lex_;
  Token cur_{Tok::End, "", 1, 1};
  int last_line_ = 0;
};

}  // namespace

KnowledgeBase parse_kb(std::string_view text) { return Parser(text).parse_kb(); }

Query parse_query(std::string_view text) { return Parser(text).parse_query(); }

ConceptPtr parse_concept(std::string_view text) { return Parser(text).parse_concept(); }

}  // namespace dln
