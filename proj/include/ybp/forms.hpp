#pragma once

#include <map>
#include <string>
#include <vector>

#include "ybp/chart.hpp"
#include "ybp/linalg.hpp"
#include "ybp/multipoly.hpp"

namespace ybp {

/// Index tuples are strictly increasing coordinate indices; the empty tuple
/// carries the single component of a degree-0 object.
using IdxTuple = std::vector<int>;

/// Polynomial vector field on a chart: X = sum_i comps[i] d/dx_i.
class VectorField {
 public:
  explicit VectorField(Chart chart);
  VectorField(Chart chart, std::vector<MultiPoly> comps);
  static VectorField coordinate(const Chart& chart, int i);  // d/dx_i

  const Chart& chart() const { return chart_; }
  const MultiPoly& comp(int i) const { return comps_[i]; }
  bool is_zero() const;

  /// Derivation on functions: X(f) = sum_i comps[i] df/dx_i.
  MultiPoly apply(const MultiPoly& f) const;

  VectorField operator-() const;
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  VectorField scaled_by(const MultiPoly& f) const;
  std::string str() const;

  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.chart_ == b.chart_ && a.comps_ == b.comps_;
  }

 private:
  Chart chart_;
  std::vector<MultiPoly> comps_;
};

/// Differential form of fixed degree with polynomial coefficients, stored on
/// strictly increasing index tuples; zero coefficients are never kept.
class KForm {
 public:
  using CompMap = std::map<IdxTuple, MultiPoly>;

  KForm(Chart chart, int degree);
  static KForm from_function(const Chart& chart, const MultiPoly& f);  // degree 0
  static KForm d_coord(const Chart& chart, int i);                     // dx_i
  static KForm covector(const Chart& chart, std::vector<MultiPoly> comps);  // degree 1

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }
  bool is_zero() const { return comps_.empty(); }
  const CompMap& comps() const { return comps_; }

  /// Signed component for any index order; zero on repeated indices.
  MultiPoly comp(IdxTuple idx) const;

  /// Accumulate c on the tuple idx (any order; sorted with sign).
  void add_term(IdxTuple idx, const MultiPoly& c);

  KForm operator-() const;
  KForm& operator+=(const KForm& o);
  KForm& operator-=(const KForm& o);
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  KForm scaled_by(const MultiPoly& f) const;
  KForm scaled_by(const Rat& c) const;
  std::string str() const;

  friend bool operator==(const KForm& a, const KForm& b);
  friend bool operator!=(const KForm& a, const KForm& b) { return !(a == b); }

 private:
  Chart chart_;
  int degree_;
  CompMap comps_;
};

/// Alternating contravariant tensor (multivector field); same storage scheme
/// as KForm on the dual side.
class KMultivector {
 public:
  using CompMap = std::map<IdxTuple, MultiPoly>;

  KMultivector(Chart chart, int degree);
  static KMultivector from_field(const VectorField& x);  // degree 1

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }
  bool is_zero() const { return comps_.empty(); }
  const CompMap& comps() const { return comps_; }
  MultiPoly comp(IdxTuple idx) const;
  void add_term(IdxTuple idx, const MultiPoly& c);

  KMultivector& operator+=(const KMultivector& o);
  KMultivector scaled_by(const Rat& c) const;
  std::string str() const;

  friend bool operator==(const KMultivector& a, const KMultivector& b);

 private:
  Chart chart_;
  int degree_;
  CompMap comps_;
};

/// Symmetric contravariant 2-tensor <dx_i, dx_j> = g[i][j], the inner product
/// on 1-forms. Symmetry is enforced; nondegeneracy is checked by evaluating
/// det g at a certification point.
class CoMetric {
 public:
  CoMetric(Chart chart, std::vector<std::vector<MultiPoly>> g);

  const Chart& chart() const { return chart_; }
  const MultiPoly& comp(int i, int j) const { return g_[i][j]; }
  const std::vector<std::vector<MultiPoly>>& matrix() const { return g_; }

  /// <alpha, beta> for 1-forms.
  MultiPoly inner(const KForm& alpha, const KForm& beta) const;

  /// det g evaluated at a point; nonzero certifies invertibility there.
  Rat det_at(const RatVec& point) const;

 private:
  Chart chart_;
  std::vector<std::vector<MultiPoly>> g_;
};

// ---- calculus --------------------------------------------------------------

/// Lie bracket of vector fields: [X,Y]^i = X(Y^i) - Y(X^i).
VectorField vf_bracket(const VectorField& x, const VectorField& y);

/// Exterior derivative; degree rises by one.
KForm exterior_d(const KForm& s);
/// df as a 1-form.
KForm exterior_d(const Chart& chart, const MultiPoly& f);

/// Wedge products (graded-commutative; merge sign from sorting indices).
KForm wedge(const KForm& a, const KForm& b);
KMultivector wedge(const KMultivector& a, const KMultivector& b);

/// Contraction with a vector field in the first slot; degree drops by one.
KForm interior_product(const VectorField& x, const KForm& s);

/// Contraction with a decomposable-sum multivector: for an increasing tuple
/// (j1 < ... < jq) the field d/dx_{j1} is applied innermost (first), i.e.
/// i_{X^Y} = i_Y o i_X on wedges of fields. Requires deg V <= deg s.
KForm interior_product(const KMultivector& v, const KForm& s);

/// Lie derivative of a form along a field (degree 0 reduces to X(f)).
KForm lie_derivative(const VectorField& x, const KForm& s);

/// Lie derivative of the co-metric:
/// (L_X g)^{ij} = X(g^{ij}) - sum_l ( g^{lj} dX^i/dx_l + g^{il} dX^j/dx_l ).
std::vector<std::vector<MultiPoly>> lie_derivative_cometric(const VectorField& x,
                                                            const CoMetric& g);

/// Evaluation of a 1-form on a field.
MultiPoly pairing(const KForm& alpha, const VectorField& x);

}  // namespace ybp
