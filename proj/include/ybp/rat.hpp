#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>

#include "ybp/errors.hpp"

namespace ybp {

/// Exact rational scalar.
///
/// Thin value wrapper over GMP's mpq_class that keeps every instance in
/// canonical form: numerator and denominator coprime, denominator positive.
/// GMP only guarantees that form after an explicit canonicalize(), so all
/// construction funnels through here; arithmetic on canonical operands is
/// canonical by GMP's contract.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(static_cast<signed long>(n)) {}
  Rat(int n) : v_(n) {}
  Rat(long num, long den) {
    if (den == 0) throw InputError(errcode::rational, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  /// Parses "p" or "p/q" with arbitrary-precision p, q and q > 0.
  static Rat parse(const std::string& text);

  bool is_zero() const { return mpq_sgn(v_.get_mpq_t()) == 0; }
  int sign() const { return mpq_sgn(v_.get_mpq_t()); }

  /// "p" when the denominator is 1, else "p/q".
  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }
  std::string num_str() const { return v_.get_num().get_str(); }
  std::string den_str() const { return v_.get_den().get_str(); }

  Rat pow(unsigned k) const {
    Rat out(1);
    Rat base = *this;
    for (unsigned e = k; e; e >>= 1) {
      if (e & 1u) out *= base;
      base *= base;
    }
    return out;
  }

  Rat abs() const { return sign() < 0 ? -*this : *this; }

  Rat operator-() const {
    Rat r;
    r.v_ = -v_;
    return r;
  }
  Rat& operator+=(const Rat& o) {
    v_ += o.v_;
    return *this;
  }
  Rat& operator-=(const Rat& o) {
    v_ -= o.v_;
    return *this;
  }
  Rat& operator*=(const Rat& o) {
    v_ *= o.v_;
    return *this;
  }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw InputError(errcode::rational, "division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) >= 0; }

 private:
  mpq_class v_;
};

inline Rat Rat::parse(const std::string& text) {
  auto fail = [&](const std::string& why) -> Rat {
    throw InputError(errcode::rational, "invalid rational '" + text + "': " + why);
  };
  if (text.empty()) return fail("empty");
  std::size_t pos = 0;
  if (text[pos] == '-') ++pos;
  std::size_t num_begin = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == num_begin) return fail("expected digits");
  mpz_class num(text.substr(0, pos));
  mpz_class den(1);
  if (pos < text.size()) {
    if (text[pos] != '/') return fail("unexpected character");
    ++pos;
    std::size_t den_begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == den_begin || pos != text.size()) return fail("bad denominator");
    den = mpz_class(text.substr(den_begin, pos - den_begin));
    if (den == 0) return fail("denominator must be positive");
  }
  Rat r;
  r.v_ = mpq_class(num, den);
  r.v_.canonicalize();
  return r;
}

}  // namespace ybp
