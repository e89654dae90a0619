#include "noether/parse.hpp"

#include <algorithm>
#include <cctype>

#include "noether/error.hpp"

namespace noether {

namespace {

class Parser {
public:
  Parser(std::string_view text, const std::vector<std::string>& vars, const PolyRing& ring)
      : text_(text), vars_(vars), ring_(ring) {}

  Polynomial run() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty polynomial");
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at column " + std::to_string(pos_ + 1) + " in '" +
                     std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) {
        acc = ring_.add(acc, term());
      } else if (accept('-')) {
        acc = ring_.sub(acc, term());
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (accept('*')) acc = ring_.mul(acc, unary());
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return ring_.neg(unary());
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      mpz_class e = integer();
      if (e > 100000) {
        pos_ = start;
        fail("exponent too large");
      }
      return ring_.pow(base, static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  mpz_class integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class value(integer());
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::size_t at = pos_;
        mpz_class den = integer();
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
        value /= mpq_class(den);
      }
      return ring_.constant(ring_.field().from_rational(value));
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_++;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return ring_.variable(static_cast<std::size_t>(it - vars_.begin()));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  const PolyRing& ring_;
  std::size_t pos_ = 0;
};

std::string format_monomial(const Exponents& e, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars.at(i);
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars,
                            const PolyRing& ring) {
  return Parser(text, vars, ring).run();
}

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& vars) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    mpq_class c = t.coeff;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono = format_monomial(t.exp, vars);
    if (mono.empty()) {
      out += c.get_str();
    } else if (c == 1) {
      out += mono;
    } else {
      out += c.get_str() + '*' + mono;
    }
  }
  return out;
}

}  // namespace noether
