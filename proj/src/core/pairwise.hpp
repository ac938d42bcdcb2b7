#pragma once

#include "core/types.hpp"

namespace msl {

// +1 iff the labels agree, else -1.
int relation(std::int64_t y, std::int64_t y2);

// Metric: (x - x')^T M (x - x'). Similarity: x^T M x'. Both equal the inner
// product of M with the corresponding pair block. The accumulation order is
// invariant under swapping x and x', so scores are bitwise symmetric.
double score(Task task, const SymMatrix& m, const Eigen::VectorXd& x,
             const Eigen::VectorXd& x2);

// Hinge pair loss. Metric: (1 + r (d_M - b))_+. Similarity: (1 - r (s_M - b))_+.
double pair_loss(Task task, const Model& model, const Eigen::VectorXd& x,
                 std::int64_t y, const Eigen::VectorXd& x2, std::int64_t y2);

// U-statistic empirical risk: average of pair_loss over all ordered pairs
// i != j (normalization 1/(n(n-1))). Requires n >= 2.
double empirical_risk(Task task, const Model& model, const Dataset& data);

// Average of pair_loss over the floor(n/2) blocks (z_i, z_{m+i}); for odd n
// the trailing point is unused. Requires n >= 2.
double block_risk(Task task, const Model& model, const Dataset& data);

// Held-out estimate of the expected risk: the empirical risk on a test set
// disjoint from the training data. Requires n_test >= 2.
double risk_estimate(Task task, const Model& model, const Dataset& test);

}  // namespace msl
