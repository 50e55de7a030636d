#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ybp/linalg.hpp"
#include "ybp/rat.hpp"

namespace ybp {

/// Finite-dimensional Lie algebra over the rationals, presented by structure
/// constants on a named basis. Brackets are taken in for i < j only, so the
/// stored table is antisymmetric by construction. The Jacobi identity is
/// evaluated eagerly at construction and the verdict is kept, not thrown:
/// downstream tooling reports it.
class LieAlgebra {
 public:
  /// Structure constants: (i, j) with i < j maps to the component vector of
  /// [u_i, u_j]. Missing pairs bracket to zero.
  using BracketTable = std::map<std::pair<int, int>, RatVec>;

  struct JacobiVerdict {
    bool ok = true;
    std::array<int, 3> triple{};  // first failing (i, j, k), i < j < k
    RatVec residual;              // [[ui,uj],uk] + [[uj,uk],ui] + [[uk,ui],uj]
  };

  LieAlgebra(std::vector<std::string> names, const BracketTable& table);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;  // -1 when absent

  /// Components of [u_i, u_j]; valid for any i, j.
  const RatVec& bracket(int i, int j) const;
  /// Bilinear extension to arbitrary coefficient vectors.
  RatVec bracket_vec(const RatVec& x, const RatVec& y) const;

  const JacobiVerdict& jacobi() const { return jacobi_; }
  const BracketTable& table() const { return table_; }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.names_ == b.names_ && a.table_ == b.table_;
  }

 private:
  std::vector<std::string> names_;
  BracketTable table_;
  std::vector<std::vector<RatVec>> dense_;  // dense_[i][j] = [u_i, u_j]
  RatVec zero_;
  JacobiVerdict jacobi_;
};

/// Antisymmetric (2,0)-tensor r on a Lie algebra, r = sum_{i<j} r^{ij} ui ^ uj.
/// As a map on covectors, r(alpha)^i = sum_j r^{ij} alpha_j.
class AlgBivector {
 public:
  AlgBivector(int dim) : m_(mat_zero(dim, dim)) {}
  explicit AlgBivector(RatMat antisymmetric);

  int dim() const { return static_cast<int>(m_.size()); }
  const Rat& comp(int i, int j) const { return m_[i][j]; }
  void set_pair(int i, int j, const Rat& c);  // r^{ij} = c, r^{ji} = -c
  const RatMat& matrix() const { return m_; }
  bool is_zero() const;

  RatVec apply(const RatVec& covector) const { return mat_apply(m_, covector); }
  /// Bivector pairing r(alpha, beta) = alpha^T R beta.
  Rat pair(const RatVec& alpha, const RatVec& beta) const;

  friend bool operator==(const AlgBivector& a, const AlgBivector& b) { return a.m_ == b.m_; }

 private:
  RatMat m_;
};

/// Totally antisymmetric (3,0)-tensor, stored on strictly increasing triples.
class AlgTrivector {
 public:
  explicit AlgTrivector(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  void set(int i, int j, int k, const Rat& c);  // requires i < j < k
  Rat comp(int i, int j, int k) const;          // any index order, signed
  bool is_zero() const { return comps_.empty(); }
  const std::map<std::array<int, 3>, Rat>& comps() const { return comps_; }
  std::string str(const std::vector<std::string>& names) const;

  friend bool operator==(const AlgTrivector& a, const AlgTrivector& b) {
    return a.dim_ == b.dim_ && a.comps_ == b.comps_;
  }

 private:
  int dim_;
  std::map<std::array<int, 3>, Rat> comps_;  // nonzero entries only
};

/// A subspace S of a Lie algebra together with a 2-form on S: basis vectors in
/// ambient coordinates plus the antisymmetric matrix w(s_a, s_b). The form is
/// required to be nondegenerate on S.
class SubspaceForm {
 public:
  SubspaceForm(std::vector<RatVec> basis, RatMat form);

  int ambient_dim() const { return basis_.empty() ? 0 : static_cast<int>(basis_[0].size()); }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<RatVec>& basis() const { return basis_; }
  const RatMat& form() const { return form_; }

  /// w(u, v) for u, v given in subspace coordinates.
  Rat form_on_coords(const RatVec& u, const RatVec& v) const;

 private:
  std::vector<RatVec> basis_;
  RatMat form_;
};

// ---- verdict-producing operations -----------------------------------------

/// The stored construction-time Jacobi verdict.
const LieAlgebra::JacobiVerdict& jacobi_check(const LieAlgebra& l);

/// Yang-Baxter bracket [r,r], components
///   [r,r]^{ijk} = sum_{a,b} ( r^{aj} r^{bk} C_ab^i
///                           + r^{ak} r^{bi} C_ab^j
///                           + r^{ai} r^{bj} C_ab^k ),
/// totally antisymmetric; r solves the classical Yang-Baxter equation exactly
/// when this vanishes.
AlgTrivector yang_baxter_bracket(const LieAlgebra& l, const AlgBivector& r);

/// Image subspace Im r with the induced form w_r(u, v) = r(s(u), s(v)) where
/// s picks any antecedent under r (deterministically: lowest-index pivots,
/// free variables zero; the value does not depend on the choice). The basis
/// of Im r is the canonical column-space basis. Throws on r = 0.
SubspaceForm image_form(const LieAlgebra& l, const AlgBivector& r);

/// Reconstruction of a bivector from (S, w): r = (w-sharp) o (restriction),
/// i.e. R = -B W^{-1} B^T with B the basis-column matrix.
AlgBivector bivector_from_subspace_form(const LieAlgebra& l, const SubspaceForm& s);

struct CocycleVerdict {
  bool closed = true;                          // S is a subalgebra
  std::optional<std::array<int, 2>> escape;    // first (a, b) with [s_a, s_b] outside S
  bool cocycle = true;                         // cyclic identity holds on basis triples
  std::optional<std::array<int, 3>> witness;   // first failing triple
  Rat witness_value;
  bool ok() const { return closed && cocycle; }
};

/// Checks that S is a subalgebra and that w satisfies the cyclic 2-cocycle
/// identity w([x,y],z) + w([y,z],x) + w([z,x],y) = 0 on basis triples.
CocycleVerdict cocycle_check(const LieAlgebra& l, const SubspaceForm& s);

struct UnimodularVerdict {
  bool trace_route = true;    // tr(ad_z restricted to S) = 0 for all basis z
  std::optional<int> trace_witness;
  Rat trace_value;
  bool darboux_route = true;  // sum_i [e_i, f_i] = 0 over a Darboux basis
  RatVec darboux_sum;
  bool ok() const { return trace_route && darboux_route; }
};

/// Both unimodularity criteria for a subalgebra S carrying a symplectic form;
/// the two routes are equivalent and both are reported. Throws when S is not
/// a subalgebra.
UnimodularVerdict unimodular_check(const LieAlgebra& l, const SubspaceForm& s);

struct DarbouxBasis {
  std::vector<RatVec> e;  // ambient coordinates
  std::vector<RatVec> f;  // w(e_i, f_j) = delta_ij, w(e_i,e_j) = w(f_i,f_j) = 0
};

/// Greedy symplectic orthogonalization with lowest-index pivoting; throws on
/// a degenerate form or odd dimension.
DarbouxBasis darboux_basis(const SubspaceForm& s);

struct LeftSymmetricProduct {
  /// prod[a][b] = coordinates of A_{s_a} s_b in the subspace basis.
  std::vector<std::vector<RatVec>> prod;
};

/// The product defined by w(A_x y, z) = -w(y, [x, z]), solved pairwise as
/// linear systems. Requires (S, w) to pass cocycle_check; both defining
/// properties (commutator recovery and curvature-freeness) then hold and are
/// re-verified by the tests.
LeftSymmetricProduct left_symmetric_product(const LieAlgebra& l, const SubspaceForm& s);

struct StructureRelationVerdict {
  bool ok = true;
  // failing family (1..4) and indices, or family 0 with closure escape pair
  int family = 0;
  std::array<int, 3> indices{};
  Rat value;
};

/// The four structure-constant relation families in a Darboux basis
/// (u_i, v_i) of (S, w); together they are equivalent to cocycle_check.
/// Family 1: C_{vj vk}^{ui} + C_{vk vi}^{uj} + C_{vi vj}^{uk} = 0
/// Family 2: C_{uj uk}^{vi} + C_{uk ui}^{vj} + C_{ui uj}^{vk} = 0
/// Family 3: C_{uj uk}^{ui} - C_{uk vi}^{vj} - C_{vi uj}^{vk} = 0
/// Family 4: C_{vi vj}^{vk} - C_{uk vi}^{uj} - C_{vj uk}^{ui} = 0
StructureRelationVerdict structure_relation_check(const LieAlgebra& l, const SubspaceForm& s);

// ---- basis-change helpers (used heavily by invariance tests) ---------------

/// The same algebra presented on the basis u'_a = sum_i P[i][a] u_i.
LieAlgebra change_basis(const LieAlgebra& l, const RatMat& p,
                        std::vector<std::string> new_names);
/// Contravariant transform of a bivector: R' = P^{-1} R P^{-T}.
AlgBivector change_basis(const AlgBivector& r, const RatMat& p);
/// Contravariant transform of a trivector.
AlgTrivector change_basis(const AlgTrivector& t, const RatMat& p);

}  // namespace ybp
