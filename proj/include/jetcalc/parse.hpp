#ifndef JETCALC_PARSE_HPP
#define JETCALC_PARSE_HPP

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetcalc/context.hpp"
#include "jetcalc/errors.hpp"
#include "jetcalc/field.hpp"
#include "jetcalc/polynomial.hpp"

namespace jetcalc {

namespace detail {

struct Token {
  enum class Kind {
    End,
    Ident,
    Integer,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semicolon,
    Equals,
  };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1, col = 1;
};

/// Hand-rolled lexer for the expression, field, and arc grammars.
/// Whitespace (including newlines) is insignificant; positions are tracked
/// for diagnostics, offset by the fragment's location in its source file.
class Lexer {
 public:
  explicit Lexer(std::string src, std::size_t base_line = 1,
                 std::size_t base_col = 1)
      : src_(std::move(src)), line_(base_line), col_(base_col) {
    advance();
  }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(tok_.line, tok_.col, msg);
  }

  void expect(Token::Kind kind, const std::string& what) {
    if (tok_.kind != kind) fail("expected " + what);
    advance();
  }

 private:
  void advance() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      step();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = src_[pos_];
    auto single = [&](Token::Kind k) {
      tok_.kind = k;
      tok_.text = std::string(1, c);
      step();
    };
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok_.kind = Token::Kind::Integer;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        tok_.text += src_[pos_];
        step();
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok_.kind = Token::Kind::Ident;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        tok_.text += src_[pos_];
        step();
      }
      return;
    }
    switch (c) {
      case '+': single(Token::Kind::Plus); return;
      case '-': single(Token::Kind::Minus); return;
      case '*': single(Token::Kind::Star); return;
      case '/': single(Token::Kind::Slash); return;
      case '^': single(Token::Kind::Caret); return;
      case '(': single(Token::Kind::LParen); return;
      case ')': single(Token::Kind::RParen); return;
      case '[': single(Token::Kind::LBracket); return;
      case ']': single(Token::Kind::RBracket); return;
      case ',': single(Token::Kind::Comma); return;
      case ';': single(Token::Kind::Semicolon); return;
      case '=': single(Token::Kind::Equals); return;
      default:
        throw ParseError(line_, col_,
                         std::string("unexpected character '") + c + "'");
    }
  }

  void step() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string src_;
  std::size_t pos_ = 0;
  std::size_t line_, col_;
  Token tok_;
};

// Recursive-descent polynomial expression parser over a context and field.
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' nat]
//   atom   := nat | ident | '(' expr ')'
// Identifiers resolve to context variables first, then to field generators.
// Division requires an invertible constant divisor.
class PolyParser {
 public:
  PolyParser(Lexer& lex, ContextPtr ctx, FieldPtr field)
      : lex_(lex), ctx_(std::move(ctx)), field_(std::move(field)) {}

  Polynomial expr() {
    bool neg = false;
    if (lex_.peek().kind == Token::Kind::Minus) {
      lex_.take();
      neg = true;
    }
    Polynomial acc = term();
    if (neg) acc = -acc;
    while (lex_.peek().kind == Token::Kind::Plus ||
           lex_.peek().kind == Token::Kind::Minus) {
      bool minus = lex_.take().kind == Token::Kind::Minus;
      Polynomial rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

 private:
  Polynomial term() {
    Polynomial acc = factor();
    while (lex_.peek().kind == Token::Kind::Star ||
           lex_.peek().kind == Token::Kind::Slash) {
      Token op = lex_.take();
      Polynomial rhs = factor();
      if (op.kind == Token::Kind::Star) {
        acc = acc * rhs;
      } else {
        if (!rhs.is_constant())
          throw ParseError(op.line, op.col,
                           "division by a non-constant polynomial");
        FieldElement c = rhs.constant_value();
        if (c.is_zero())
          throw ParseError(op.line, op.col, "division by zero");
        acc = acc.scaled(c.inverse());
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (lex_.peek().kind == Token::Kind::Caret) {
      Token op = lex_.take();
      if (lex_.peek().kind != Token::Kind::Integer)
        throw ParseError(op.line, op.col, "exponent must be an integer");
      Token e = lex_.take();
      unsigned long exp = 0;
      try {
        exp = std::stoul(e.text);
      } catch (const std::exception&) {
        throw ParseError(e.line, e.col, "exponent out of range");
      }
      base = base.pow(exp);
    }
    return base;
  }

  Polynomial atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Token::Kind::Integer: {
        Token n = lex_.take();
        return Polynomial::constant(ctx_,
                                    field_->from_mpz(mpz_class(n.text)));
      }
      case Token::Kind::Ident: {
        Token id = lex_.take();
        if (auto idx = ctx_->index_of(id.text))
          return Polynomial::variable(ctx_, field_, *idx);
        if (auto gen = field_->named_generator(id.text))
          return Polynomial::constant(ctx_, *gen);
        throw ParseError(id.line, id.col,
                         "unknown identifier " + id.text);
      }
      case Token::Kind::LParen: {
        lex_.take();
        Polynomial inner = expr();
        lex_.expect(Token::Kind::RParen, "')'");
        return inner;
      }
      default:
        lex_.fail("expected a number, identifier, or '('");
    }
  }

  Lexer& lex_;
  ContextPtr ctx_;
  FieldPtr field_;
};

inline FieldPtr parse_field_tokens(Lexer& lex) {
  const Token& t = lex.peek();
  FieldPtr field;
  if (t.kind != Token::Kind::Ident) lex.fail("expected QQ or Fp(...)");
  if (t.text == "QQ") {
    lex.take();
    field = FieldDescriptor::rationals();
  } else if (t.text == "Fp") {
    lex.take();
    lex.expect(Token::Kind::LParen, "'('");
    if (lex.peek().kind != Token::Kind::Integer)
      lex.fail("expected a prime number");
    Token p = lex.take();
    unsigned long pv = 0;
    try {
      pv = std::stoul(p.text);
    } catch (const std::exception&) {
      throw ParseError(p.line, p.col, "prime out of range");
    }
    try {
      field = FieldDescriptor::prime_field(pv);
    } catch (const Error& e) {
      throw ParseError(p.line, p.col, e.what());
    }
    lex.expect(Token::Kind::RParen, "')'");
  } else {
    lex.fail("expected QQ or Fp(...)");
  }
  // tower suffixes: (gen) adjoins rational functions, [gen]/(m) an extension
  while (true) {
    if (lex.peek().kind == Token::Kind::LParen) {
      Token open = lex.take();
      if (lex.peek().kind != Token::Kind::Ident)
        throw ParseError(open.line, open.col, "expected a generator name");
      Token gen = lex.take();
      lex.expect(Token::Kind::RParen, "')'");
      try {
        field = FieldDescriptor::rational_functions(field, gen.text);
      } catch (const Error& e) {
        throw ParseError(gen.line, gen.col, e.what());
      }
    } else if (lex.peek().kind == Token::Kind::LBracket) {
      Token open = lex.take();
      if (lex.peek().kind != Token::Kind::Ident)
        throw ParseError(open.line, open.col, "expected a generator name");
      Token gen = lex.take();
      lex.expect(Token::Kind::RBracket, "']'");
      lex.expect(Token::Kind::Slash, "'/'");
      lex.expect(Token::Kind::LParen, "'('");
      ContextPtr mctx = VariableContext::make({gen.text});
      PolyParser parser(lex, mctx, field);
      Polynomial m = parser.expr();
      lex.expect(Token::Kind::RParen, "')'");
      // convert to a dense coefficient vector over the base
      std::vector<FieldElement> coeffs;
      for (const auto& term : m.terms()) {
        std::size_t d = term.mono.exponent(0);
        if (coeffs.size() < d + 1) coeffs.resize(d + 1, field->zero());
        coeffs[d] = term.coeff;
      }
      try {
        field = FieldDescriptor::simple_extension(field, gen.text,
                                                  std::move(coeffs));
      } catch (const Error& e) {
        throw ParseError(gen.line, gen.col, e.what());
      }
    } else {
      break;
    }
  }
  return field;
}

}  // namespace detail

/// Parses a coefficient-field description: QQ, Fp(5), Fp(2)(a),
/// Fp(2)(a)[x0]/(x0^2-a), and towers thereof.
inline FieldPtr parse_field(const std::string& text, std::size_t base_line = 1,
                            std::size_t base_col = 1) {
  detail::Lexer lex(text, base_line, base_col);
  FieldPtr f = detail::parse_field_tokens(lex);
  if (lex.peek().kind != detail::Token::Kind::End)
    lex.fail("trailing input after field description");
  return f;
}

/// Parses a polynomial in the given context; identifiers not bound to
/// variables resolve to field generators.
inline Polynomial parse_polynomial(const std::string& text,
                                   const ContextPtr& ctx,
                                   const FieldPtr& field,
                                   std::size_t base_line = 1,
                                   std::size_t base_col = 1) {
  detail::Lexer lex(text, base_line, base_col);
  detail::PolyParser parser(lex, ctx, field);
  Polynomial f = parser.expr();
  if (lex.peek().kind != detail::Token::Kind::End)
    lex.fail("trailing input after polynomial");
  return f;
}

/// Parses a constant expression into a field element.
inline FieldElement parse_element(const std::string& text,
                                  const FieldPtr& field,
                                  std::size_t base_line = 1,
                                  std::size_t base_col = 1) {
  static const ContextPtr kEmpty = VariableContext::make({});
  Polynomial f = parse_polynomial(text, kEmpty, field, base_line, base_col);
  return f.constant_value();
}

// ---------------------------------------------------------------------------
// Variety files

/// A parsed variety description: coefficient field, ordered variables,
/// generator list, and an optional declared codimension.
struct VarietySpec {
  FieldPtr field;
  ContextPtr ctx;
  std::vector<Polynomial> gens;
  std::optional<std::size_t> codim;

  std::string str() const {
    std::string out = "field: " + field->str() + "\n";
    out += "vars:";
    for (std::size_t i = 0; i < ctx->size(); ++i) out += " " + ctx->name(i);
    out += "\ngens:";
    for (std::size_t i = 0; i < gens.size(); ++i)
      out += (i ? ", " : " ") + gens[i].str();
    out += "\n";
    if (codim) out += "codim: " + std::to_string(*codim) + "\n";
    return out;
  }
};

/// Parses a variety file:
///   field: Fp(2)(a)
///   vars: x y z
///   gens: x^2 + y*z^2 - a, ...
///   codim: 1            (optional)
/// '#' starts a comment; a line that does not begin with a known key
/// continues the previous value.
inline VarietySpec parse_variety(const std::string& text) {
  struct Section {
    std::string value;
    std::size_t line = 0, col = 0;
    bool present = false;
  };
  std::map<std::string, Section> sections;
  static const std::vector<std::string> kKeys = {"field", "vars", "gens",
                                                 "codim"};
  std::string current;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string line = end == std::string::npos
                           ? text.substr(start)
                           : text.substr(start, end - start);
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos) {
      std::string key;
      std::size_t colon = line.find(':');
      if (colon != std::string::npos) {
        key = line.substr(first, colon - first);
        std::size_t kend = key.find_last_not_of(" \t");
        key = kend == std::string::npos ? "" : key.substr(0, kend + 1);
      }
      bool known = std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end();
      if (known) {
        Section& s = sections[key];
        if (s.present)
          throw ParseError(lineno, first + 1, "duplicate key " + key);
        s.present = true;
        s.value = line.substr(colon + 1);
        s.line = lineno;
        s.col = colon + 2;
        current = key;
      } else if (!current.empty()) {
        sections[current].value += "\n" + line;
      } else {
        throw ParseError(lineno, first + 1,
                         "expected one of field:, vars:, gens:, codim:");
      }
    }
    if (end == std::string::npos) break;
    start = end + 1;
  }

  auto need = [&](const std::string& key) -> Section& {
    auto it = sections.find(key);
    if (it == sections.end() || !it->second.present)
      throw ParseError(lineno, 1, "missing required key " + key + ":");
    return it->second;
  };

  VarietySpec spec;
  Section& fsec = need("field");
  spec.field = parse_field(fsec.value, fsec.line, fsec.col);

  Section& vsec = need("vars");
  std::vector<std::string> names;
  {
    detail::Lexer lex(vsec.value, vsec.line, vsec.col);
    while (lex.peek().kind != detail::Token::Kind::End) {
      if (lex.peek().kind != detail::Token::Kind::Ident)
        lex.fail("expected a variable name");
      names.push_back(lex.take().text);
    }
  }
  if (names.empty())
    throw ParseError(vsec.line, vsec.col, "vars: needs at least one variable");
  for (const auto& n : names) {
    if (spec.field->has_generator(n))
      throw ParseError(vsec.line, vsec.col,
                       "variable " + n + " collides with a field generator");
    for (const auto& other : names) {
      if (other.size() <= n.size() || other.compare(0, n.size(), n) != 0)
        continue;
      bool digits = true;
      for (std::size_t i = n.size(); i < other.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(other[i])))
          digits = false;
      if (digits)
        throw ParseError(vsec.line, vsec.col,
                         "variables " + n + " and " + other +
                             " would collide under jet naming");
    }
  }
  try {
    spec.ctx = VariableContext::make(names);
  } catch (const Error& e) {
    throw ParseError(vsec.line, vsec.col, e.what());
  }

  Section& gsec = need("gens");
  {
    detail::Lexer lex(gsec.value, gsec.line, gsec.col);
    if (lex.peek().kind != detail::Token::Kind::End) {
      while (true) {
        detail::PolyParser parser(lex, spec.ctx, spec.field);
        Polynomial g = parser.expr();
        if (!g.is_zero()) spec.gens.push_back(std::move(g));
        if (lex.peek().kind == detail::Token::Kind::Comma) {
          lex.take();
          continue;
        }
        if (lex.peek().kind == detail::Token::Kind::End) break;
        lex.fail("expected ',' or end of generator list");
      }
    }
  }

  if (auto it = sections.find("codim"); it != sections.end()) {
    detail::Lexer lex(it->second.value, it->second.line, it->second.col);
    if (lex.peek().kind != detail::Token::Kind::Integer)
      lex.fail("codim: expects a positive integer");
    spec.codim = std::stoul(lex.take().text);
    if (lex.peek().kind != detail::Token::Kind::End)
      lex.fail("trailing input after codim");
  }
  return spec;
}

/// Parses per-variable arc coefficient vectors:
///   x=(1,1); y=(3/2)
/// Coefficients are constant expressions over the given field; vectors may
/// be ragged (lift input pads them).
inline std::map<std::string, std::vector<FieldElement>> parse_arc_coefficients(
    const std::string& text, const FieldPtr& field) {
  std::map<std::string, std::vector<FieldElement>> out;
  detail::Lexer lex(text);
  static const ContextPtr kEmpty = VariableContext::make({});
  while (lex.peek().kind != detail::Token::Kind::End) {
    if (lex.peek().kind != detail::Token::Kind::Ident)
      lex.fail("expected a variable name");
    detail::Token name = lex.take();
    if (out.count(name.text))
      throw ParseError(name.line, name.col,
                       "variable " + name.text + " assigned twice");
    lex.expect(detail::Token::Kind::Equals, "'='");
    lex.expect(detail::Token::Kind::LParen, "'('");
    std::vector<FieldElement> coeffs;
    if (lex.peek().kind != detail::Token::Kind::RParen) {
      while (true) {
        detail::PolyParser parser(lex, kEmpty, field);
        Polynomial c = parser.expr();
        coeffs.push_back(c.constant_value());
        if (lex.peek().kind == detail::Token::Kind::Comma) {
          lex.take();
          continue;
        }
        break;
      }
    }
    lex.expect(detail::Token::Kind::RParen, "')'");
    out.emplace(name.text, std::move(coeffs));
    if (lex.peek().kind == detail::Token::Kind::Semicolon) lex.take();
  }
  return out;
}

}  // namespace jetcalc

#endif  // JETCALC_PARSE_HPP
