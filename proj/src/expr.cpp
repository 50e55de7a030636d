#include "ybp/expr.hpp"

#include <cctype>

#include "ybp/errors.hpp"

namespace ybp {
namespace {

class Parser {
 public:
  Parser(const std::string& text, VarListPtr vars) : text_(text), vars_(std::move(vars)) {}

  MultiPoly run() {
    skip_ws();
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError(errcode::expr,
                     "expression error at position " + std::to_string(pos_) + ": " + why +
                         " in '" + text_ + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  char current() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    return text_[pos_];
  }

  MultiPoly expr() {
    MultiPoly p = term();
    while (peek_is('+') || peek_is('-')) {
      char op = text_[pos_++];
      MultiPoly q = term();
      if (op == '+')
        p += q;
      else
        p -= q;
    }
    return p;
  }

  MultiPoly term() {
    MultiPoly p = factor();
    while (peek_is('*')) {
      ++pos_;
      p = p * factor();
    }
    return p;
  }

  MultiPoly factor() {
    MultiPoly b = base();
    if (peek_is('^')) {
      ++pos_;
      skip_ws();
      unsigned k = nonneg_int();
      MultiPoly out = MultiPoly::constant(vars_, Rat(1));
      MultiPoly sq = b;
      for (unsigned e = k; e; e >>= 1) {
        if (e & 1u) out = out * sq;
        if (e > 1) sq = sq * sq;
      }
      return out;
    }
    return b;
  }

  MultiPoly base() {
    char c = current();
    if (c == '(') {
      ++pos_;
      MultiPoly p = expr();
      if (!peek_is(')')) fail("expected ')'");
      ++pos_;
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return rational();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("expected a rational, identifier or '('");
  }

  MultiPoly rational() {
    std::string digits = digit_run();
    if (digits.empty()) fail("expected digits");
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      std::string den = digit_run();
      if (den.empty()) fail("expected a denominator");
      Rat d = Rat::parse(den);
      if (d.is_zero()) fail("denominator must be positive");
      digits += "/" + den;
    }
    return MultiPoly::constant(vars_, Rat::parse(digits));
  }

  unsigned nonneg_int() {
    std::string d = digit_run();
    if (d.empty()) fail("expected a nonnegative integer exponent");
    unsigned long v = 0;
    for (char c : d) {
      v = v * 10 + static_cast<unsigned long>(c - '0');
      if (v > 1000000) fail("exponent too large");
    }
    return static_cast<unsigned>(v);
  }

  std::string digit_run() {
    std::string d;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      d += text_[pos_++];
    }
    return d;
  }

  MultiPoly identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    bool known = false;
    for (const auto& v : *vars_)
      if (v == name) known = true;
    if (!known)
      throw InputError(errcode::unknown_identifier,
                       "unknown identifier '" + name + "' at position " + std::to_string(start) +
                           " in '" + text_ + "'");
    return MultiPoly::variable(vars_, name);
  }

  const std::string& text_;
  VarListPtr vars_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(const std::string& text, VarListPtr vars) {
  if (!vars) throw InputError(errcode::vars, "null variable list");
  return Parser(text, std::move(vars)).run();
}

}  // namespace ybp
