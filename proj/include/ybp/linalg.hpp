#pragma once

#include <optional>
#include <vector>

#include "ybp/rat.hpp"

namespace ybp {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row-major, rectangular

// Exact dense linear algebra at the small dimensions used here.
// Every elimination pivots on the lowest-index usable row/column, so all
// results (solutions, bases, ranks) are deterministic functions of the input.

RatMat mat_identity(int n);
RatMat mat_zero(int rows, int cols);
RatMat mat_transpose(const RatMat& a);
RatMat mat_mul(const RatMat& a, const RatMat& b);
RatVec mat_apply(const RatMat& a, const RatVec& x);
bool mat_is_antisymmetric(const RatMat& a);

RatVec unit_vec(int n, int i);
RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_scale(const RatVec& a, const Rat& c);
bool vec_is_zero(const RatVec& a);
Rat vec_dot(const RatVec& a, const RatVec& b);

Rat mat_det(RatMat a);
int mat_rank(RatMat a);
std::optional<RatMat> mat_inverse(const RatMat& a);

/// Solves a x = b. Pivots on the lowest-index column with a nonzero entry;
/// free variables are set to zero. Empty result when the system is
/// inconsistent.
std::optional<RatVec> solve_lowest_pivot(const RatMat& a, const RatVec& b);

/// Reduced row echelon form (in place convention: returns the reduced matrix
/// and the pivot column indices).
struct Rref {
  RatMat mat;
  std::vector<int> pivot_cols;
};
Rref rref(RatMat a);

/// Canonical basis of the column space: the nonzero rows of rref(transpose).
/// Coordinate-aligned spans come back as unit vectors.
std::vector<RatVec> column_space_basis(const RatMat& a);

/// Is v a linear combination of the given vectors?
bool in_span(const std::vector<RatVec>& basis, const RatVec& v);

/// Coordinates of v in the given (independent) spanning set, if any.
std::optional<RatVec> coordinates_in(const std::vector<RatVec>& basis, const RatVec& v);

}  // namespace ybp
