#pragma once

#include "core/types.hpp"

namespace msl {

// ||M|| for the selected regularizer family. Trace norm uses the symmetric
// eigendecomposition (singular values of a symmetric matrix are the absolute
// eigenvalues). Rejects non-finite input.
double matrix_norm(const SymMatrix& m, NormKind kind);

// Dual norm of the family: Frobenius -> Frobenius, L1 -> max |entry|,
// (2,1) -> max row Euclidean norm, trace -> largest singular value.
double dual_norm(const SymMatrix& x, NormKind kind);

// One member of the subdifferential of ||.|| at M, symmetric. At kinks
// (zero entry, zero row, |eigenvalue| < 1e-12) the contribution is 0.
SymMatrix norm_subgradient(const SymMatrix& m, NormKind kind);

namespace detail {

// Raw variants used in hot loops; the argument is assumed symmetric and
// finite.
double matrix_norm(const Eigen::MatrixXd& m, NormKind kind);
double dual_norm(const Eigen::MatrixXd& x, NormKind kind);
Eigen::MatrixXd norm_subgradient(const Eigen::MatrixXd& m, NormKind kind);

}  // namespace detail

}  // namespace msl
