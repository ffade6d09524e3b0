#include "lcw/parser.hpp"

#include <cctype>
#include <set>

namespace lcw {

namespace {

struct Token {
  enum Kind { Number, Name, LParen, RParen, Comma, Plus, Minus, Star, Dot,
              LessEq, Equal, End } kind;
  std::string text;
  size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
    tok_.pos = i_;
    if (i_ >= s_.size()) {
      tok_.kind = Token::End;
      tok_.text.clear();
      return;
    }
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j])))
        ++j;
      if (j < s_.size() && s_[j] == '/') {
        size_t k = j + 1;
        while (k < s_.size() &&
               std::isdigit(static_cast<unsigned char>(s_[k])))
          ++k;
        if (k == j + 1) throw ParseError("malformed rational", j);
        j = k;
      } else if (j < s_.size() && s_[j] == '.') {
        size_t k = j + 1;
        while (k < s_.size() &&
               std::isdigit(static_cast<unsigned char>(s_[k])))
          ++k;
        if (k == j + 1) throw ParseError("malformed decimal", j);
        j = k;
        if (j < s_.size() && (s_[j] == 'e' || s_[j] == 'E')) {
          size_t k2 = j + 1;
          if (k2 < s_.size() && (s_[k2] == '+' || s_[k2] == '-')) ++k2;
          size_t k3 = k2;
          while (k3 < s_.size() &&
                 std::isdigit(static_cast<unsigned char>(s_[k3])))
            ++k3;
          if (k3 > k2) j = k3;
        }
      }
      tok_.kind = Token::Number;
      tok_.text = s_.substr(i_, j - i_);
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i_;
      while (j < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
        ++j;
      tok_.kind = Token::Name;
      tok_.text = s_.substr(i_, j - i_);
      i_ = j;
      return;
    }
    ++i_;
    switch (c) {
      case '(': tok_.kind = Token::LParen; return;
      case ')': tok_.kind = Token::RParen; return;
      case ',': tok_.kind = Token::Comma; return;
      case '+': tok_.kind = Token::Plus; return;
      case '-': tok_.kind = Token::Minus; return;
      case '*': tok_.kind = Token::Star; return;
      case '.': tok_.kind = Token::Dot; return;
      case '=': tok_.kind = Token::Equal; return;
      case '<':
        if (i_ < s_.size() && s_[i_] == '=') {
          ++i_;
          tok_.kind = Token::LessEq;
          return;
        }
        throw ParseError("stray '<'", tok_.pos);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         tok_.pos);
    }
  }

  const std::string& s_;
  size_t i_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig)
      : lex_(text), sig_(sig) {}

  Formula formula() {
    Formula f = sum();
    return f;
  }

  Formula sum() {
    Formula f = product();
    while (lex_.peek().kind == Token::Plus ||
           lex_.peek().kind == Token::Minus) {
      bool minus = lex_.take().kind == Token::Minus;
      Formula rhs = product();
      f = minus ? make_sub(f, rhs) : make_add(f, rhs);
    }
    return f;
  }

  void expect_end() {
    if (lex_.peek().kind != Token::End)
      throw ParseError("trailing input", lex_.peek().pos);
  }

  Condition condition() {
    Formula l = sum();
    Token t = lex_.take();
    Condition::Rel rel;
    if (t.kind == Token::LessEq)
      rel = Condition::LE;
    else if (t.kind == Token::Equal)
      rel = Condition::EQ;
    else
      throw ParseError("expected '<=' or '=' in condition", t.pos);
    Formula r = sum();
    return Condition{rel, l, r};
  }

 private:
  Formula product() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Number ||
        (t.kind == Token::Minus)) {
      Value r = rational();
      if (lex_.peek().kind == Token::Star) {
        lex_.take();
        return make_scale(r, atom());
      }
      return make_value(r);
    }
    return atom();
  }

  Value rational() {
    bool neg = false;
    if (lex_.peek().kind == Token::Minus) {
      lex_.take();
      neg = true;
    }
    Token t = lex_.take();
    if (t.kind != Token::Number)
      throw ParseError("expected rational literal", t.pos);
    Value v = parse_rational(t.text);
    return neg ? -v : v;
  }

  Formula atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Token::Number:
      case Token::Minus:
        return make_value(rational());
      case Token::LParen: {
        lex_.take();
        Formula f = sum();
        expect(Token::RParen, ")");
        return f;
      }
      case Token::Name: {
        Token name = lex_.take();
        if (name.text == "sup" || name.text == "inf") return quantifier(name);
        if (name.text == "d") {
          expect(Token::LParen, "(");
          Term a = term();
          expect(Token::Comma, ",");
          Term b = term();
          expect(Token::RParen, ")");
          return make_dist(a, b);
        }
        const RelationSym* rel = sig_.relation(name.text);
        if (!rel)
          throw ParseError("unknown symbol: " + name.text, name.pos);
        expect(Token::LParen, "(");
        std::vector<Term> args;
        args.push_back(term());
        while (lex_.peek().kind == Token::Comma) {
          lex_.take();
          args.push_back(term());
        }
        expect(Token::RParen, ")");
        if (int(args.size()) != rel->arity)
          throw ParseError("arity mismatch for " + name.text + ": expected " +
                               std::to_string(rel->arity) + ", got " +
                               std::to_string(args.size()),
                           name.pos);
        return make_rel(name.text, std::move(args));
      }
      default:
        throw ParseError("expected formula atom", t.pos);
    }
  }

  Formula quantifier(const Token& kw) {
    Token var = lex_.take();
    if (var.kind != Token::Name)
      throw ParseError("expected variable after " + kw.text, var.pos);
    if (sig_.declared(var.text) || var.text == "d" || var.text == "sup" ||
        var.text == "inf")
      throw ParseError("bound variable collides with symbol: " + var.text,
                       var.pos);
    if (bound_.count(var.text))
      throw ParseError("rebound variable: " + var.text, var.pos);
    expect(Token::Dot, ".");
    bound_.insert(var.text);
    Formula body = atom();
    bound_.erase(var.text);
    return kw.text == "sup" ? make_sup(var.text, body)
                            : make_inf(var.text, body);
  }

  Term term() {
    Token name = lex_.take();
    if (name.kind != Token::Name)
      throw ParseError("expected term", name.pos);
    if (name.text == "d" || name.text == "sup" || name.text == "inf")
      throw ParseError("reserved name in term position: " + name.text,
                       name.pos);
    if (lex_.peek().kind == Token::LParen) {
      const FunctionSym* fn = sig_.function(name.text);
      if (!fn)
        throw ParseError("unknown symbol: " + name.text, name.pos);
      lex_.take();
      std::vector<Term> args;
      args.push_back(term());
      while (lex_.peek().kind == Token::Comma) {
        lex_.take();
        args.push_back(term());
      }
      expect(Token::RParen, ")");
      if (int(args.size()) != fn->arity)
        throw ParseError("arity mismatch for " + name.text + ": expected " +
                             std::to_string(fn->arity) + ", got " +
                             std::to_string(args.size()),
                         name.pos);
      return make_apply(name.text, std::move(args));
    }
    if (bound_.count(name.text)) return make_var(name.text);
    if (sig_.is_constant(name.text)) return make_const_term(name.text);
    if (sig_.function(name.text) || sig_.relation(name.text))
      throw ParseError("symbol used without arguments: " + name.text,
                       name.pos);
    return make_var(name.text);  // free variable
  }

  void expect(Token::Kind k, const char* what) {
    Token t = lex_.take();
    if (t.kind != k)
      throw ParseError(std::string("expected '") + what + "'", t.pos);
  }

  Lexer lex_;
  const Signature& sig_;
  std::set<std::string> bound_;
};

}  // namespace

Formula parse_formula(const std::string& text, const Signature& sig) {
  Parser p(text, sig);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

Condition parse_condition(const std::string& text, const Signature& sig) {
  Parser p(text, sig);
  Condition c = p.condition();
  p.expect_end();
  return c;
}

std::vector<Condition> parse_conditions(const std::string& text,
                                        const Signature& sig) {
  std::vector<Condition> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t semi = text.find(';', start);
    std::string piece = text.substr(
        start, semi == std::string::npos ? std::string::npos : semi - start);
    bool blank = true;
    for (char c : piece)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) out.push_back(parse_condition(piece, sig));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return out;
}

}  // namespace lcw
