#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ybp/rat.hpp"

namespace ybp {

using VarList = std::vector<std::string>;
using VarListPtr = std::shared_ptr<const VarList>;
using Exponents = std::vector<unsigned>;

/// Graded lexicographic term order: lower total degree first, then
/// lexicographic on the exponent vector. Map iteration therefore ends at the
/// leading term.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients over a
/// fixed ordered variable list.
///
/// Representation invariant: every stored coefficient is nonzero and every
/// exponent vector has one entry per variable, so equality of values is
/// equality of representations. The zero polynomial has no terms.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rat, GrlexLess>;

  MultiPoly() : vars_(empty_vars()) {}
  explicit MultiPoly(VarListPtr vars);

  static MultiPoly constant(VarListPtr vars, const Rat& c);
  static MultiPoly variable(VarListPtr vars, const std::string& name);
  static MultiPoly variable(VarListPtr vars, int index);

  const VarList& vars() const { return *vars_; }
  VarListPtr vars_ptr() const { return vars_; }
  int var_index(const std::string& name) const;  // -1 when absent

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (the coefficient of the all-zero exponent vector).
  Rat constant_value() const;
  int total_degree() const;  // -1 for the zero polynomial
  const TermMap& terms() const { return terms_; }

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly scaled(const Rat& c) const;

  MultiPoly diff(int var_index) const;
  MultiPoly diff(const std::string& var) const;

  /// Full evaluation; every variable must be assigned.
  Rat eval(const std::vector<Rat>& point) const;
  Rat eval(const std::map<std::string, Rat>& point) const;

  /// Exact quotient this / d, or nullopt when d does not divide exactly.
  std::optional<MultiPoly> divided_exactly_by(const MultiPoly& d) const;

  /// Canonical rendering, leading term first, re-parseable by the expression
  /// grammar (negative leading coefficients render as "-c*monomial").
  std::string str() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// Inserts c at the given exponents (accumulating), dropping zeros.
  void add_term(const Exponents& e, const Rat& c);

 private:
  static VarListPtr empty_vars();
  void check_same_vars(const MultiPoly& o) const;

  VarListPtr vars_;
  TermMap terms_;
};

inline MultiPoly operator*(MultiPoly a, const Rat& c) { return a.scaled(c); }
inline MultiPoly operator*(const Rat& c, const MultiPoly& a) { return a.scaled(c); }

}  // namespace ybp
