#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/types.hpp"

namespace msl {

// The m = floor(n/2) i.i.d. sample blocks pairing point i with point m+i.
// Metric blocks are (x_i - x_{m+i})(x_i - x_{m+i})^T (PSD, rank <= 1);
// similarity blocks are the symmetrized outer product
// (x_i x_{m+i}^T + x_{m+i} x_i^T) / 2.
struct BlockSet {
  std::vector<Eigen::MatrixXd> blocks;
  Task task = Task::kMetric;
  Eigen::Index dim = 0;

  std::size_t count() const { return blocks.size(); }
};

struct RademacherEstimate {
  double value = 0.0;
  std::uint64_t draws = 0;   // 0 means exact enumeration
  double std_error = 0.0;    // 0 for exact
  NormKind dual_kind = NormKind::kFrobenius;
  std::uint64_t seed = 0;
};

// Requires n >= 2; for odd n the trailing point is dropped.
BlockSet build_blocks(Task task, const Dataset& data);

// Monte Carlo estimate of (1/m) E_sigma || sum_i sigma_i B_i ||_dual over
// `draws` uniform sign vectors. Draw j is generated from (seed, j) alone, so
// the estimate does not depend on evaluation order or thread count.
RademacherEstimate empirical_rademacher(const BlockSet& blocks, NormKind kind,
                                        std::uint64_t draws, std::uint64_t seed);

// Same draws evaluated against several dual norms in one pass, sharing the
// per-draw signed sums.
std::vector<RademacherEstimate> empirical_rademacher_multi(
    const BlockSet& blocks, std::span<const NormKind> kinds,
    std::uint64_t draws, std::uint64_t seed);

// Exact expectation over all 2^m sign vectors; refuses m > 20.
RademacherEstimate exact_rademacher(const BlockSet& blocks, NormKind kind);

// Supremum of the block dual norm over the unit box domain [0,1]^d:
// d (Frobenius), 1 (L1), sqrt(d) ((2,1)), d (trace). Identical for both
// tasks.
double x_star_unit_box(Task task, NormKind kind, Eigen::Index d);

// Max of the block dual norm over all sample pairs i != j.
double x_star_empirical(Task task, NormKind kind, const Dataset& data);

// Closed-form complexity bounds. sup_inf and sup_fro are the domain suprema
// of ||x - x'||_inf and ||x - x'||_2 (metric), or of ||x||_inf and ||x||_2
// (similarity). Frobenius: 2 sup_fro^2 / sqrt(n). L1:
// 4 sup_inf^2 sqrt(e ln d / n). (2,1): 4 sup_inf sup_fro sqrt(e ln d / n).
// Trace falls back to the Frobenius form. L1/(2,1) require d >= 2.
double rademacher_upper_bound(NormKind kind, Task task, double sup_inf,
                              double sup_fro, std::uint64_t n, Eigen::Index d);

}  // namespace msl
