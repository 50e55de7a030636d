#include "ybp/lie_algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ybp/errors.hpp"

namespace ybp {

LieAlgebra::LieAlgebra(std::vector<std::string> names, const BracketTable& table)
    : names_(std::move(names)), table_(table) {
  const int n = static_cast<int>(names_.size());
  if (n == 0) throw InputError(errcode::shape, "lie algebra needs at least one basis vector");
  {
    std::set<std::string> seen(names_.begin(), names_.end());
    if (static_cast<int>(seen.size()) != n)
      throw InputError(errcode::schema, "duplicate basis name");
  }
  zero_.assign(n, Rat(0));
  dense_.assign(n, std::vector<RatVec>(n, zero_));
  for (const auto& [key, value] : table_) {
    auto [i, j] = key;
    if (i < 0 || j >= n || i >= j)
      throw InputError(errcode::shape, "bracket pairs must satisfy 0 <= i < j < dim");
    if (static_cast<int>(value.size()) != n)
      throw InputError(errcode::shape, "bracket value has wrong length");
    dense_[i][j] = value;
    dense_[j][i] = vec_scale(value, Rat(-1));
  }
  // Jacobi identity on basis triples; bilinearity extends it.
  for (int i = 0; i < n && jacobi_.ok; ++i)
    for (int j = i + 1; j < n && jacobi_.ok; ++j)
      for (int k = j + 1; k < n && jacobi_.ok; ++k) {
        RatVec res = bracket_vec(dense_[i][j], unit_vec(n, k));
        res = vec_add(res, bracket_vec(dense_[j][k], unit_vec(n, i)));
        res = vec_add(res, bracket_vec(dense_[k][i], unit_vec(n, j)));
        if (!vec_is_zero(res)) {
          jacobi_.ok = false;
          jacobi_.triple = {i, j, k};
          jacobi_.residual = res;
        }
      }
}

int LieAlgebra::index_of(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

const RatVec& LieAlgebra::bracket(int i, int j) const { return dense_[i][j]; }

RatVec LieAlgebra::bracket_vec(const RatVec& x, const RatVec& y) const {
  const int n = dim();
  RatVec out = zero_;
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j].is_zero() || i == j) continue;
      Rat c = x[i] * y[j];
      const RatVec& b = dense_[i][j];
      for (int m = 0; m < n; ++m) out[m] += c * b[m];
    }
  }
  return out;
}

AlgBivector::AlgBivector(RatMat antisymmetric) : m_(std::move(antisymmetric)) {
  if (!mat_is_antisymmetric(m_))
    throw InputError(errcode::r_not_antisymmetric, "bivector matrix must be antisymmetric");
}

void AlgBivector::set_pair(int i, int j, const Rat& c) {
  if (i == j) {
    if (!c.is_zero())
      throw InputError(errcode::r_not_antisymmetric, "diagonal bivector entry must vanish");
    return;
  }
  m_[i][j] = c;
  m_[j][i] = -c;
}

bool AlgBivector::is_zero() const {
  for (const auto& row : m_)
    if (!vec_is_zero(row)) return false;
  return true;
}

Rat AlgBivector::pair(const RatVec& alpha, const RatVec& beta) const {
  return vec_dot(alpha, mat_apply(m_, beta));
}

void AlgTrivector::set(int i, int j, int k, const Rat& c) {
  if (!(0 <= i && i < j && j < k && k < dim_))
    throw PreconditionError("trivector entries are set on strictly increasing triples");
  if (c.is_zero())
    comps_.erase({i, j, k});
  else
    comps_[{i, j, k}] = c;
}

Rat AlgTrivector::comp(int i, int j, int k) const {
  if (i == j || j == k || i == k) return Rat(0);
  std::array<int, 3> idx = {i, j, k};
  int sign = 1;
  // Three-element sort, tracking the permutation parity.
  if (idx[0] > idx[1]) { std::swap(idx[0], idx[1]); sign = -sign; }
  if (idx[1] > idx[2]) { std::swap(idx[1], idx[2]); sign = -sign; }
  if (idx[0] > idx[1]) { std::swap(idx[0], idx[1]); sign = -sign; }
  auto it = comps_.find(idx);
  if (it == comps_.end()) return Rat(0);
  return sign > 0 ? it->second : -it->second;
}

std::string AlgTrivector::str(const std::vector<std::string>& names) const {
  if (comps_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : comps_) {
    if (!first) os << " + ";
    first = false;
    os << c.str() << "*" << names[idx[0]] << "^" << names[idx[1]] << "^" << names[idx[2]];
  }
  return os.str();
}

SubspaceForm::SubspaceForm(std::vector<RatVec> basis, RatMat form)
    : basis_(std::move(basis)), form_(std::move(form)) {
  const int k = static_cast<int>(basis_.size());
  if (k == 0) throw PreconditionError("subspace must be nonzero");
  for (const auto& v : basis_)
    if (v.size() != basis_[0].size())
      throw PreconditionError("subspace basis vectors have mixed lengths");
  if (mat_rank(basis_) != k) throw PreconditionError("subspace basis is linearly dependent");
  if (static_cast<int>(form_.size()) != k)
    throw PreconditionError("form matrix size must match basis size");
  if (!mat_is_antisymmetric(form_)) throw PreconditionError("form must be antisymmetric");
  if (mat_det(form_).is_zero()) throw PreconditionError("form is degenerate on the subspace");
}

Rat SubspaceForm::form_on_coords(const RatVec& u, const RatVec& v) const {
  return vec_dot(u, mat_apply(form_, v));
}

const LieAlgebra::JacobiVerdict& jacobi_check(const LieAlgebra& l) { return l.jacobi(); }

AlgTrivector yang_baxter_bracket(const LieAlgebra& l, const AlgBivector& r) {
  const int n = l.dim();
  if (r.dim() != n) throw InputError(errcode::shape, "bivector dimension differs from algebra");
  AlgTrivector out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Rat acc(0);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            const RatVec& c = l.bracket(a, b);
            acc += r.comp(a, j) * r.comp(b, k) * c[i];
            acc += r.comp(a, k) * r.comp(b, i) * c[j];
            acc += r.comp(a, i) * r.comp(b, j) * c[k];
          }
        out.set(i, j, k, acc);
      }
  return out;
}

SubspaceForm image_form(const LieAlgebra& l, const AlgBivector& r) {
  if (r.dim() != l.dim())
    throw InputError(errcode::shape, "bivector dimension differs from algebra");
  if (r.is_zero()) throw PreconditionError("zero bivector has trivial image");
  std::vector<RatVec> basis = column_space_basis(r.matrix());
  const int k = static_cast<int>(basis.size());
  // Any antecedent gives the same form value; take the deterministic one.
  std::vector<RatVec> ante(k);
  for (int a = 0; a < k; ++a) {
    auto sol = solve_lowest_pivot(r.matrix(), basis[a]);
    if (!sol) throw PreconditionError("image basis vector has no antecedent");
    ante[a] = *sol;
  }
  RatMat w = mat_zero(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) w[a][b] = r.pair(ante[a], ante[b]);
  return SubspaceForm(std::move(basis), std::move(w));
}

AlgBivector bivector_from_subspace_form(const LieAlgebra& l, const SubspaceForm& s) {
  const int n = l.dim();
  if (s.ambient_dim() != n)
    throw InputError(errcode::shape, "subspace lives in a different algebra");
  const int k = s.dim();
  RatMat b = mat_zero(n, k);
  for (int col = 0; col < k; ++col)
    for (int row = 0; row < n; ++row) b[row][col] = s.basis()[col][row];
  auto winv = mat_inverse(s.form());
  if (!winv) throw PreconditionError("form is degenerate on the subspace");
  RatMat m = mat_mul(mat_mul(b, *winv), mat_transpose(b));
  for (auto& row : m)
    for (auto& x : row) x = -x;
  return AlgBivector(std::move(m));
}

namespace {

// Brackets of subspace basis pairs, expressed in subspace coordinates.
// Returns false (with the escape pair) as soon as one leaves the subspace.
bool subspace_brackets(const LieAlgebra& l, const SubspaceForm& s,
                       std::vector<std::vector<RatVec>>& brk, std::array<int, 2>& escape) {
  const int k = s.dim();
  brk.assign(k, std::vector<RatVec>(k, RatVec(k, Rat(0))));
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      RatVec amb = l.bracket_vec(s.basis()[a], s.basis()[b]);
      auto coords = coordinates_in(s.basis(), amb);
      if (!coords) {
        escape = {a, b};
        return false;
      }
      brk[a][b] = *coords;
      brk[b][a] = vec_scale(*coords, Rat(-1));
    }
  return true;
}

}  // namespace

CocycleVerdict cocycle_check(const LieAlgebra& l, const SubspaceForm& s) {
  CocycleVerdict v;
  std::vector<std::vector<RatVec>> brk;
  std::array<int, 2> escape{};
  if (!subspace_brackets(l, s, brk, escape)) {
    v.closed = false;
    v.escape = escape;
    return v;
  }
  const int k = s.dim();
  const RatMat& w = s.form();
  auto form_with_basis = [&](const RatVec& x, int c) {
    Rat acc(0);
    for (int m = 0; m < k; ++m) acc += x[m] * w[m][c];
    return acc;
  };
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      for (int c = b + 1; c < k; ++c) {
        Rat val = form_with_basis(brk[a][b], c);
        val += form_with_basis(brk[b][c], a);
        val += form_with_basis(brk[c][a], b);
        if (!val.is_zero()) {
          v.cocycle = false;
          v.witness = {a, b, c};
          v.witness_value = val;
          return v;
        }
      }
  return v;
}

UnimodularVerdict unimodular_check(const LieAlgebra& l, const SubspaceForm& s) {
  std::vector<std::vector<RatVec>> brk;
  std::array<int, 2> escape{};
  if (!subspace_brackets(l, s, brk, escape))
    throw PreconditionError("subspace is not a subalgebra");
  UnimodularVerdict v;
  const int k = s.dim();
  for (int a = 0; a < k; ++a) {
    Rat tr(0);
    for (int b = 0; b < k; ++b) tr += brk[a][b][b];
    if (!tr.is_zero()) {
      v.trace_route = false;
      v.trace_witness = a;
      v.trace_value = tr;
      break;
    }
  }
  DarbouxBasis db = darboux_basis(s);
  RatVec sum(s.ambient_dim(), Rat(0));
  for (size_t i = 0; i < db.e.size(); ++i)
    sum = vec_add(sum, l.bracket_vec(db.e[i], db.f[i]));
  v.darboux_sum = sum;
  v.darboux_route = vec_is_zero(sum);
  return v;
}

DarbouxBasis darboux_basis(const SubspaceForm& s) {
  const int k = s.dim();
  if (k % 2 != 0) throw PreconditionError("symplectic subspace must be even-dimensional");
  std::vector<RatVec> pool;
  for (int i = 0; i < k; ++i) pool.push_back(unit_vec(k, i));
  DarbouxBasis out;
  std::vector<RatVec> ec, fc;  // subspace coordinates
  while (!pool.empty()) {
    RatVec e = pool.front();
    pool.erase(pool.begin());
    if (vec_is_zero(e)) continue;
    int partner = -1;
    for (size_t t = 0; t < pool.size(); ++t)
      if (!s.form_on_coords(e, pool[t]).is_zero()) {
        partner = static_cast<int>(t);
        break;
      }
    if (partner < 0) throw PreconditionError("form is degenerate on the subspace");
    Rat c = s.form_on_coords(e, pool[partner]);
    RatVec f = vec_scale(pool[partner], Rat(1) / c);
    pool.erase(pool.begin() + partner);
    for (auto& wv : pool) {
      // w <- w - w(w,f) e + w(w,e) f lands in the symplectic complement of (e,f).
      RatVec adj = vec_add(vec_scale(e, -s.form_on_coords(wv, f)),
                           vec_scale(f, s.form_on_coords(wv, e)));
      wv = vec_add(wv, adj);
    }
    ec.push_back(e);
    fc.push_back(f);
  }
  auto to_ambient = [&](const RatVec& coords) {
    RatVec amb(s.ambient_dim(), Rat(0));
    for (int m = 0; m < k; ++m) amb = vec_add(amb, vec_scale(s.basis()[m], coords[m]));
    return amb;
  };
  for (const auto& v : ec) out.e.push_back(to_ambient(v));
  for (const auto& v : fc) out.f.push_back(to_ambient(v));
  return out;
}

LeftSymmetricProduct left_symmetric_product(const LieAlgebra& l, const SubspaceForm& s) {
  CocycleVerdict cv = cocycle_check(l, s);
  if (!cv.ok())
    throw PreconditionError("left-symmetric product needs a closed subspace with a cocycle form");
  std::vector<std::vector<RatVec>> brk;
  std::array<int, 2> escape{};
  subspace_brackets(l, s, brk, escape);
  const int k = s.dim();
  auto winv = mat_inverse(s.form());
  LeftSymmetricProduct out;
  out.prod.assign(k, std::vector<RatVec>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      // w(A_a b, s_c) = -w(s_b, [s_a, s_c]) for every c; solve for A_a b.
      RatVec rhs(k, Rat(0));
      for (int c = 0; c < k; ++c) rhs[c] = -s.form_on_coords(unit_vec(k, b), brk[a][c]);
      out.prod[a][b] = vec_scale(mat_apply(*winv, rhs), Rat(-1));
    }
  return out;
}

StructureRelationVerdict structure_relation_check(const LieAlgebra& l, const SubspaceForm& s) {
  StructureRelationVerdict v;
  {
    std::vector<std::vector<RatVec>> brk;
    std::array<int, 2> escape{};
    if (!subspace_brackets(l, s, brk, escape)) {
      v.ok = false;
      v.family = 0;
      v.indices = {escape[0], escape[1], -1};
      return v;
    }
  }
  DarbouxBasis db = darboux_basis(s);
  const int n = static_cast<int>(db.e.size());
  // Full Darboux basis u_1..u_n, v_1..v_n; structure constants in that basis.
  std::vector<RatVec> full = db.e;
  full.insert(full.end(), db.f.begin(), db.f.end());
  const int k = 2 * n;
  std::vector<std::vector<RatVec>> c(k, std::vector<RatVec>(k, RatVec(k, Rat(0))));
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      auto coords = coordinates_in(full, l.bracket_vec(full[a], full[b]));
      if (!coords) throw PreconditionError("closure lost in darboux basis");
      c[a][b] = *coords;
      c[b][a] = vec_scale(*coords, Rat(-1));
    }
  auto u = [&](int i) { return i; };          // index of u_i in the full basis
  auto w = [&](int i) { return n + i; };      // index of v_i in the full basis
  auto check = [&](int family, int i, int j, int kk, const Rat& val) {
    if (val.is_zero()) return true;
    v.ok = false;
    v.family = family;
    v.indices = {i, j, kk};
    v.value = val;
    return false;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < n; ++kk) {
        Rat f1 = c[w(j)][w(kk)][u(i)] + c[w(kk)][w(i)][u(j)] + c[w(i)][w(j)][u(kk)];
        if (!check(1, i, j, kk, f1)) return v;
        Rat f2 = c[u(j)][u(kk)][w(i)] + c[u(kk)][u(i)][w(j)] + c[u(i)][u(j)][w(kk)];
        if (!check(2, i, j, kk, f2)) return v;
        Rat f3 = c[u(j)][u(kk)][u(i)] - c[u(kk)][w(i)][w(j)] - c[w(i)][u(j)][w(kk)];
        if (!check(3, i, j, kk, f3)) return v;
        Rat f4 = c[w(i)][w(j)][w(kk)] - c[u(kk)][w(i)][u(j)] - c[w(j)][u(kk)][u(i)];
        if (!check(4, i, j, kk, f4)) return v;
      }
  return v;
}

LieAlgebra change_basis(const LieAlgebra& l, const RatMat& p, std::vector<std::string> new_names) {
  const int n = l.dim();
  auto pinv = mat_inverse(p);
  if (!pinv) throw PreconditionError("basis change must be invertible");
  LieAlgebra::BracketTable table;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      RatVec xa(n), xb(n);
      for (int i = 0; i < n; ++i) {
        xa[i] = p[i][a];
        xb[i] = p[i][b];
      }
      RatVec br = mat_apply(*pinv, l.bracket_vec(xa, xb));
      if (!vec_is_zero(br)) table[{a, b}] = br;
    }
  return LieAlgebra(std::move(new_names), table);
}

AlgBivector change_basis(const AlgBivector& r, const RatMat& p) {
  auto pinv = mat_inverse(p);
  if (!pinv) throw PreconditionError("basis change must be invertible");
  RatMat m = mat_mul(mat_mul(*pinv, r.matrix()), mat_transpose(*pinv));
  return AlgBivector(std::move(m));
}

AlgTrivector change_basis(const AlgTrivector& t, const RatMat& p) {
  const int n = t.dim();
  auto pinv = mat_inverse(p);
  if (!pinv) throw PreconditionError("basis change must be invertible");
  const RatMat& q = *pinv;
  AlgTrivector out(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int cc = b + 1; cc < n; ++cc) {
        Rat acc(0);
        for (const auto& [idx, coeff] : t.comps()) {
          auto [i, j, k] = idx;
          // 3x3 minor determinant = antisymmetrized product of Q entries.
          Rat det = q[a][i] * (q[b][j] * q[cc][k] - q[b][k] * q[cc][j]) -
                    q[a][j] * (q[b][i] * q[cc][k] - q[b][k] * q[cc][i]) +
                    q[a][k] * (q[b][i] * q[cc][j] - q[b][j] * q[cc][i]);
          acc += coeff * det;
        }
        out.set(a, b, cc, acc);
      }
  return out;
}

}  // namespace ybp
