#include "wres/parse.hpp"

#include <cctype>
#include <string>

#include "wres/errors.hpp"

namespace wres {

namespace {

struct Parser {
  std::string_view text;
  size_t pos = 0;
  const Ambient& ambient;

  explicit Parser(std::string_view t, const Ambient& a) : text(t), ambient(a) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, (long)pos); }

  unsigned long parse_nat() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected a number");
    try {
      return std::stoul(std::string(text.substr(start, pos - start)));
    } catch (const std::exception&) {
      throw ParseError("number out of range", (long)start);
    }
  }

  Poly parse_literal() {
    skip_ws();
    size_t start = pos;
    std::string num;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    num = std::string(text.substr(start, pos - start));
    if (num.empty()) fail("expected a number");
    std::string den = "1";
    // Rational literal p/q: '/' only joins two integer literals.
    size_t save = pos;
    skip_ws();
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      skip_ws();
      size_t dstart = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == dstart) fail("expected denominator digits after '/'");
      den = std::string(text.substr(dstart, pos - dstart));
    } else {
      pos = save;
    }
    Int n(num), d(den);
    if (d == 0) throw ParseError("zero denominator in rational literal", (long)start);
    Rat r(n, d);
    r.canonicalize();
    return Poly::constant(ambient, r);
  }

  Poly parse_identifier() {
    skip_ws();
    size_t start = pos;
    if (pos >= text.size()) fail("expected identifier");
    char c = text[pos];
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail("expected identifier");
    ++pos;
    while (pos < text.size()) {
      char k = text[pos];
      if (std::isalnum(static_cast<unsigned char>(k)) || k == '_' || k == '\'')
        ++pos;
      else
        break;
    }
    std::string name(text.substr(start, pos - start));
    int j = var_index(ambient, name);
    if (j < 0) throw ParseError("unknown variable '" + name + "'", (long)start);
    return Poly::variable(ambient, j);
  }

  Poly parse_base() {
    char c = peek();
    if (c == '(') {
      ++pos;
      Poly inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_literal();
    return parse_identifier();
  }

  Poly parse_factor() {
    char c = peek();
    if (c == '-') {
      ++pos;
      return -parse_factor();
    }
    if (c == '+') {
      ++pos;
      return parse_factor();
    }
    Poly base = parse_base();
    if (accept('^')) {
      unsigned long e = parse_nat();
      return base.pow(e);
    }
    return base;
  }

  Poly parse_term() {
    Poly out = parse_factor();
    while (accept('*')) out = out * parse_factor();
    return out;
  }

  Poly parse_expr() {
    Poly out = parse_term();
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos;
        out = out + parse_term();
      } else if (c == '-') {
        ++pos;
        out = out - parse_term();
      } else {
        break;
      }
    }
    return out;
  }
};

}  // namespace

Poly parse_poly(std::string_view text, const Ambient& ambient) {
  Parser p(text, ambient);
  Poly out = p.parse_expr();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return out;
}

}  // namespace wres
