#pragma once

#include <cstdint>
#include <vector>

#include "svdcl/matrix.hpp"

namespace svdcl {

// Thin SVD a = u * diag(sigma) * v^T with k = min(rows, cols).
// sigma is non-negative and sorted descending; u (m x k) and v (n x k) have
// orthonormal columns. Deterministic: ties keep their pre-sort order and each
// left singular vector has its largest-magnitude entry made non-negative.
struct SvdResult {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;

  Matrix reconstruct() const;
};

// One-sided Jacobi SVD. Convergence: every column-pair cosine of the implicit
// Gram matrix below 1e-12; hard cap 100 sweeps, overrun raises NumericalError
// with the matrix shape and the worst residual.
SvdResult svd(const Matrix& a);

// Nearest semi-orthogonal matrix in Frobenius norm: u * v^T from svd(a).
// Requires rows >= cols.
Matrix project_semi_orthogonal(const Matrix& a);

// ||a^T a - I||_F, zero exactly when columns are orthonormal.
double orthogonality_defect(const Matrix& a);

// i.i.d. standard normal entries from the documented Rng stream; identical
// seeds give bit-identical matrices.
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, uint64_t seed);

}  // namespace svdcl
