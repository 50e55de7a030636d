#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ybp/action.hpp"
#include "ybp/forms.hpp"
#include "ybp/lie_algebra.hpp"
#include "ybp/poisson.hpp"

namespace ybp {

/// Contravariant connection induced by r through the action:
///   D_alpha sigma = sum_{i<j} r^{ij} ( alpha(U_i) L_{U_j} sigma
///                                    - alpha(U_j) L_{U_i} sigma ),
/// a derivative of forms of any degree along 1-forms. Function-linear in
/// alpha; on functions it reduces to the anchor derivative pi#(alpha)(f).
class ContraConnection {
 public:
  /// Gated constructor: algebra passes Jacobi, action is a morphism, r solves
  /// the Yang-Baxter equation. The ungated variant builds the same operator
  /// for probing non-solutions.
  static ContraConnection build(const ActionSetup& a, const AlgBivector& r);
  static ContraConnection build_unverified(const ActionSetup& a, const AlgBivector& r);

  const ActionSetup& setup() const { return setup_; }
  const PoissonBivector& poisson() const { return pi_; }
  const Chart& chart() const { return setup_.chart(); }
  /// Fields of the canonical basis of the image of r.
  const std::vector<VectorField>& image_fields() const { return image_fields_; }
  const std::vector<RatVec>& image_basis() const { return image_basis_; }

  KForm derivative(const KForm& alpha, const KForm& sigma) const;
  MultiPoly derivative(const KForm& alpha, const MultiPoly& f) const;

  /// D_a b - D_b a - [a,b]; vanishes identically for these connections.
  KForm torsion(const KForm& alpha, const KForm& beta) const;

  /// D_a D_b c - D_b D_a c - D_[a,b] c.
  KForm curvature(const KForm& alpha, const KForm& beta, const KForm& gamma) const;

 private:
  struct Term {
    Rat coeff;
    int i, j;
  };

  ContraConnection(const ActionSetup& a, const AlgBivector& r);

  ActionSetup setup_;
  PoissonBivector pi_;
  std::vector<Term> terms_;
  std::vector<RatVec> image_basis_;
  std::vector<VectorField> image_fields_;
};

struct ParallelVerdict {
  bool parallel = true;
  bool used_lie_criterion = false;  // invariance along the image fields
  std::optional<int> witness;       // failing image index / coordinate index
};

/// Is sigma parallel (D sigma = 0)? With a certified locally free action the
/// invariance criterion L_{U} sigma = 0 over the image basis is used (the two
/// are then equivalent); otherwise the defining coordinate-coframe criterion.
ParallelVerdict is_parallel(const ContraConnection& c, const KForm& sigma, Freeness freeness);

/// Metacurvature slot M(alpha, beta, gamma) = -D_beta D_gamma d(alpha).
/// Defined for parallel alpha only; throws otherwise.
KForm metacurvature(const ContraConnection& c, const KForm& alpha, const KForm& beta,
                    const KForm& gamma, Freeness freeness);

/// Generalized bracket of a function with a form: {f, sigma} = D_{df} sigma.
KForm gbracket(const ContraConnection& c, const MultiPoly& f, const KForm& sigma);

/// Generalized bracket of 1-forms: {alpha, beta} = -D_beta d(alpha) when
/// alpha is parallel; by symmetry of the bracket the arguments flip when only
/// beta is. Throws when neither is parallel.
KForm gbracket(const ContraConnection& c, const KForm& alpha, const KForm& beta,
               Freeness freeness);

struct KillingVerdict {
  bool ok = true;
  int field = -1;            // first non-Killing basis field
  std::array<int, 2> entry{};
  MultiPoly residual;        // (L_U g)^{entry}
};

/// Are all action fields Killing for the co-metric?
KillingVerdict killing_check(const ActionSetup& a, const CoMetric& g);

/// Levi-Civita-style contravariant connection of (g, pi), defined through
///   2 <D_a b, c> = pi#(a)<b,c> + pi#(b)<a,c> - pi#(c)<a,b>
///                + <[c,a], b> + <[c,b], a> + <[a,b], c>
/// on the coordinate coframe and solved exactly. When a coefficient fails to
/// be polynomial the derivative refuses (throws) rather than approximating.
class MetricContraConnection {
 public:
  MetricContraConnection(CoMetric g, PoissonBivector pi);

  const CoMetric& cometric() const { return g_; }
  const PoissonBivector& poisson() const { return pi_; }

  KForm derivative(const KForm& alpha, const KForm& beta) const;

 private:
  CoMetric g_;
  PoissonBivector pi_;
  MultiPoly det_;
};

struct HawkinsVerdict {
  bool volume_ok = true;  // nonvanishing at the certification point
  UnimodularVerdict unimodular;
  bool invariant = true;  // volume invariant along the image fields
  std::optional<int> invariance_witness;
  std::optional<KForm> invariance_residual;
  bool conclusion = true;  // d(i_pi volume) = 0
  std::optional<KForm> conclusion_residual;
  bool ok() const { return volume_ok && unimodular.ok() && invariant && conclusion; }
};

/// Volume compatibility: the image subalgebra is unimodular, the volume is
/// invariant along it, and the induced tensor preserves the volume in the
/// sense d(i_pi eps) = 0. The premises and the conclusion are all reported.
HawkinsVerdict hawkins_volume_check(const ActionSetup& a, const AlgBivector& r,
                                    const MultiPoly& volume_coeff, const RatVec& cert_point);

}  // namespace ybp
