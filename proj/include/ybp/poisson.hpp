#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ybp/action.hpp"
#include "ybp/forms.hpp"
#include "ybp/lie_algebra.hpp"

namespace ybp {

/// Polynomial bivector field pi = sum_{i<j} pi^{ij} d/dx_i ^ d/dx_j, kept as
/// the full antisymmetric component matrix.
class PoissonBivector {
 public:
  PoissonBivector(Chart chart, std::vector<std::vector<MultiPoly>> comps);

  const Chart& chart() const { return chart_; }
  const MultiPoly& comp(int i, int j) const { return m_[i][j]; }
  const std::vector<std::vector<MultiPoly>>& matrix() const { return m_; }
  bool is_zero() const;

  /// pi(alpha, beta) = sum_{ij} pi^{ij} alpha_i beta_j for 1-forms.
  MultiPoly pair(const KForm& alpha, const KForm& beta) const;

  /// The anchor map: pi_sharp(alpha)^i = sum_j pi^{ji} alpha_j, so that
  /// beta(pi_sharp(alpha)) = pi(alpha, beta).
  VectorField anchor(const KForm& alpha) const;

  KMultivector as_multivector() const;

 private:
  Chart chart_;
  std::vector<std::vector<MultiPoly>> m_;
};

/// The tensor induced by r through the action: pi = sum_{i<j} r^{ij} U_i ^ U_j.
/// Gated: throws unless r solves the Yang-Baxter equation on a Jacobi algebra
/// and the action is a bracket morphism.
PoissonBivector induced_poisson(const ActionSetup& a, const AlgBivector& r);
/// Same construction with no gate, for probing non-solutions.
PoissonBivector induced_poisson_unverified(const ActionSetup& a, const AlgBivector& r);

struct SchoutenVerdict {
  bool ok = true;
  std::array<int, 3> triple{};  // first coordinate triple with a nonzero jacobiator
  MultiPoly residual;
};

/// Jacobi identity for the bracket of pi, as the vanishing of
/// sum_l ( pi^{li} d_l pi^{jk} + pi^{lj} d_l pi^{ki} + pi^{lk} d_l pi^{ij} ).
SchoutenVerdict schouten_jacobi_check(const PoissonBivector& pi);

/// Bracket of 1-forms: [a,b] = L_{pi#a} b - L_{pi#b} a - d(pi(a,b)).
KForm koszul_bracket(const PoissonBivector& pi, const KForm& alpha, const KForm& beta);

enum class Freeness { yes, no, unknown };

struct FreenessVerdict {
  Freeness answer = Freeness::unknown;
  int needed_rank = 0;   // number of fields
  int generic_rank = 0;  // rank of the component matrix over the polynomials
  bool constant_minor = false;        // a maximal minor is a nonzero constant
  std::optional<RatVec> drop_point;   // probe where the pointwise rank fell
};

/// Three-valued local-freeness test for a family of fields. "yes" is an
/// everywhere-certificate (a constant nonzero maximal minor); "no" means the
/// rank genuinely drops (identically, or at a probe point); otherwise the
/// answer stays "unknown".
FreenessVerdict local_freeness(const std::vector<VectorField>& fields,
                               const std::vector<RatVec>& probes);

}  // namespace ybp
