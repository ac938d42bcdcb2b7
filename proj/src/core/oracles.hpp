#pragma once

#include <span>
#include <string>

#include "core/types.hpp"

namespace msl {

// Outcome of an executable check: passed iff slack = rhs - lhs >= -1e-9.
struct CheckResult {
  bool passed = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  std::string detail;
};

// Moment comparison for Rademacher sums, verified by exhaustive enumeration
// over all 2^len sign vectors:
//   (E |sum_i sigma_i f_i|^q)^{1/q} <= sqrt((q-1)/(p-1)) (E |...|^p)^{1/p}.
// Requires len <= 20 and 1 < p < q.
CheckResult khinchin_check(std::span<const double> f, double p, double q);

// Verifies that the average of the block estimator over all n! input
// permutations reproduces the U-statistic exactly (tolerance 1e-12).
// `values` is a symmetric n x n pair-function table; n must be 4 or 6.
CheckResult ustat_permutation_check(const Eigen::MatrixXd& values, int n);

// Minimizer margin conditions: min_{i != j} [score - b] <= 1 + tol and
// max_{i != j} [score - b] >= -1 - tol. Use tol = 0 for analytic models and
// a small positive tol (default 1e-3) for optimizer output.
CheckResult margin_check(Task task, const Model& model, const Dataset& data,
                         double tol = 1e-3);

}  // namespace msl
