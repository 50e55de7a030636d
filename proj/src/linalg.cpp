#include "ybp/linalg.hpp"

#include "ybp/errors.hpp"

namespace ybp {

RatMat mat_identity(int n) {
  RatMat m(n, RatVec(n, Rat(0)));
  for (int i = 0; i < n; ++i) m[i][i] = Rat(1);
  return m;
}

RatMat mat_zero(int rows, int cols) { return RatMat(rows, RatVec(cols, Rat(0))); }

RatMat mat_transpose(const RatMat& a) {
  if (a.empty()) return {};
  RatMat t(a[0].size(), RatVec(a.size(), Rat(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
  if (a.empty() || b.empty()) return {};
  if (a[0].size() != b.size()) throw InputError(errcode::shape, "matrix product shape mismatch");
  RatMat c(a.size(), RatVec(b[0].size(), Rat(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

RatVec mat_apply(const RatMat& a, const RatVec& x) {
  if (a.empty()) return {};
  if (a[0].size() != x.size()) throw InputError(errcode::shape, "matrix-vector shape mismatch");
  RatVec y(a.size(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

bool mat_is_antisymmetric(const RatMat& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a.size()) return false;
    for (std::size_t j = 0; j <= i; ++j)
      if (a[i][j] != -a[j][i]) return false;
  }
  return true;
}

RatVec vec_add(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw InputError(errcode::shape, "vector sum shape mismatch");
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw InputError(errcode::shape, "vector difference shape mismatch");
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

RatVec unit_vec(int n, int i) {
  RatVec e(n, Rat(0));
  e[i] = Rat(1);
  return e;
}

RatVec vec_scale(const RatVec& a, const Rat& c) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  return out;
}

bool vec_is_zero(const RatVec& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

Rat vec_dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw InputError(errcode::shape, "dot product shape mismatch");
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat mat_det(RatMat a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw InputError(errcode::shape, "determinant of non-square matrix");
  Rat det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return Rat(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      Rat f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

Rref rref(RatMat a) {
  Rref out;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < rows; ++col) {
    std::size_t piv = lead;
    while (piv < rows && a[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[lead]);
    Rat inv = Rat(1) / a[lead][col];
    for (std::size_t c = 0; c < cols; ++c) a[lead][c] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || a[r][col].is_zero()) continue;
      Rat f = a[r][col];
      for (std::size_t c = 0; c < cols; ++c) a[r][c] -= f * a[lead][c];
    }
    out.pivot_cols.push_back(static_cast<int>(col));
    ++lead;
  }
  out.mat = std::move(a);
  return out;
}

int mat_rank(RatMat a) { return static_cast<int>(rref(std::move(a)).pivot_cols.size()); }

std::optional<RatMat> mat_inverse(const RatMat& a) {
  const std::size_t n = a.size();
  RatMat aug(n, RatVec(2 * n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw InputError(errcode::shape, "inverse of non-square matrix");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = Rat(1);
  }
  Rref r = rref(std::move(aug));
  if (r.pivot_cols.size() != n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    if (r.pivot_cols[i] != static_cast<int>(i)) return std::nullopt;
  RatMat inv(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = r.mat[i][n + j];
  return inv;
}

std::optional<RatVec> solve_lowest_pivot(const RatMat& a, const RatVec& b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw InputError(errcode::shape, "solve shape mismatch");
  const std::size_t cols = rows ? a[0].size() : 0;
  RatMat aug(rows, RatVec(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  Rref r = rref(std::move(aug));
  RatVec x(cols, Rat(0));
  for (std::size_t k = 0; k < r.pivot_cols.size(); ++k) {
    int pc = r.pivot_cols[k];
    if (pc == static_cast<int>(cols)) return std::nullopt;  // pivot in the rhs column
    x[pc] = r.mat[k][cols];
  }
  return x;
}

std::vector<RatVec> column_space_basis(const RatMat& a) {
  Rref r = rref(mat_transpose(a));
  std::vector<RatVec> basis;
  for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) basis.push_back(r.mat[i]);
  return basis;
}

bool in_span(const std::vector<RatVec>& basis, const RatVec& v) {
  return coordinates_in(basis, v).has_value();
}

std::optional<RatVec> coordinates_in(const std::vector<RatVec>& basis, const RatVec& v) {
  if (basis.empty()) return vec_is_zero(v) ? std::optional<RatVec>(RatVec{}) : std::nullopt;
  // Columns are the basis vectors; solve for the coefficient vector.
  RatMat m(v.size(), RatVec(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].size() != v.size()) throw InputError(errcode::shape, "span shape mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) m[i][j] = basis[j][i];
  }
  auto x = solve_lowest_pivot(m, v);
  if (!x) return std::nullopt;
  // solve_lowest_pivot zero-fills free variables, which for an independent
  // spanning set means the coordinates are exact; verify to be safe against a
  // dependent "basis".
  RatVec back(v.size(), Rat(0));
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < v.size(); ++i) back[i] += (*x)[j] * basis[j][i];
  if (back != v) return std::nullopt;
  return x;
}

}  // namespace ybp
