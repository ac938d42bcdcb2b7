#include "core/rademacher.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "core/norms.hpp"
#include "core/rng.hpp"

namespace msl {

namespace {

constexpr std::size_t kExactLimit = 20;

void fill_signs(std::uint64_t seed, std::uint64_t draw, std::size_t m,
                std::vector<double>& signs) {
  signs.resize(m);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i % 64 == 0) word = counter_word(seed, draw, i / 64);
    signs[i] = (word >> (i % 64)) & 1u ? 1.0 : -1.0;
  }
}

}  // namespace

BlockSet build_blocks(Task task, const Dataset& data) {
  if (data.size() < 2) {
    throw std::invalid_argument("build_blocks: needs at least 2 points");
  }
  const Eigen::Index m = data.size() / 2;
  const Eigen::Index d = data.dim();
  BlockSet out;
  out.task = task;
  out.dim = d;
  out.blocks.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::VectorXd a = data.points().row(i);
    const Eigen::VectorXd b = data.points().row(m + i);
    if (task == Task::kMetric) {
      const Eigen::VectorXd u = a - b;
      out.blocks.emplace_back(u * u.transpose());
    } else {
      out.blocks.emplace_back(0.5 * (a * b.transpose() + b * a.transpose()));
    }
  }
  return out;
}

std::vector<RademacherEstimate> empirical_rademacher_multi(
    const BlockSet& blocks, std::span<const NormKind> kinds,
    std::uint64_t draws, std::uint64_t seed) {
  const std::size_t m = blocks.count();
  if (m == 0) throw std::invalid_argument("empirical_rademacher: empty block set");
  if (draws < 1) throw std::invalid_argument("empirical_rademacher: draws must be >= 1");

  const double inv_m = 1.0 / static_cast<double>(m);
  std::vector<double> sums(kinds.size(), 0.0);
  std::vector<double> sq_sums(kinds.size(), 0.0);
  std::vector<double> signs;
  Eigen::MatrixXd s(blocks.dim, blocks.dim);
  for (std::uint64_t j = 0; j < draws; ++j) {
    fill_signs(seed, j, m, signs);
    s.setZero();
    for (std::size_t i = 0; i < m; ++i) s += signs[i] * blocks.blocks[i];
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const double v = detail::dual_norm(s, kinds[k]) * inv_m;
      sums[k] += v;
      sq_sums[k] += v * v;
    }
  }

  std::vector<RademacherEstimate> out(kinds.size());
  const double dn = static_cast<double>(draws);
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    out[k].value = sums[k] / dn;
    out[k].draws = draws;
    out[k].dual_kind = kinds[k];
    out[k].seed = seed;
    if (draws > 1) {
      const double var =
          std::max(0.0, (sq_sums[k] - sums[k] * sums[k] / dn) / (dn - 1.0));
      out[k].std_error = std::sqrt(var / dn);
    }
  }
  return out;
}

RademacherEstimate empirical_rademacher(const BlockSet& blocks, NormKind kind,
                                        std::uint64_t draws, std::uint64_t seed) {
  const NormKind kinds[] = {kind};
  return empirical_rademacher_multi(blocks, kinds, draws, seed)[0];
}

RademacherEstimate exact_rademacher(const BlockSet& blocks, NormKind kind) {
  const std::size_t m = blocks.count();
  if (m == 0) throw std::invalid_argument("exact_rademacher: empty block set");
  if (m > kExactLimit) {
    throw std::invalid_argument("exact_rademacher: refusing m > 20 (2^m enumeration)");
  }

  const double inv_m = 1.0 / static_cast<double>(m);
  // Gray-code walk over all sign vectors: each step flips one sign, updating
  // the running sum with a single scaled block addition.
  Eigen::MatrixXd s(blocks.dim, blocks.dim);
  s.setZero();
  for (std::size_t i = 0; i < m; ++i) s += blocks.blocks[i];

  double total = detail::dual_norm(s, kind) * inv_m;
  std::vector<int> sign(m, 1);
  const std::uint64_t count = 1ull << m;
  for (std::uint64_t t = 1; t < count; ++t) {
    const unsigned flip = std::countr_zero(t);
    sign[flip] = -sign[flip];
    s += (2.0 * sign[flip]) * blocks.blocks[flip];
    total += detail::dual_norm(s, kind) * inv_m;
  }

  RademacherEstimate out;
  out.value = total / static_cast<double>(count);
  out.draws = 0;
  out.std_error = 0.0;
  out.dual_kind = kind;
  out.seed = 0;
  return out;
}

double x_star_unit_box(Task task, NormKind kind, Eigen::Index d) {
  (void)task;  // both block families share the same box suprema
  if (d < 1) throw std::invalid_argument("x_star_unit_box: d must be >= 1");
  switch (kind) {
    case NormKind::kFrobenius:
    case NormKind::kTrace:
      return static_cast<double>(d);
    case NormKind::kEntrywiseL1:
      return 1.0;
    case NormKind::kMixed21:
      return std::sqrt(static_cast<double>(d));
  }
  return 0.0;
}

double x_star_empirical(Task task, NormKind kind, const Dataset& data) {
  if (data.size() < 2) {
    throw std::invalid_argument("x_star_empirical: needs at least 2 points");
  }
  const Eigen::Index n = data.size();
  double best = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd a = data.points().row(i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Eigen::VectorXd b = data.points().row(j);
      Eigen::MatrixXd block;
      if (task == Task::kMetric) {
        const Eigen::VectorXd u = a - b;
        block = u * u.transpose();
      } else {
        block = 0.5 * (a * b.transpose() + b * a.transpose());
      }
      best = std::max(best, detail::dual_norm(block, kind));
    }
  }
  return best;
}

double rademacher_upper_bound(NormKind kind, Task task, double sup_inf,
                              double sup_fro, std::uint64_t n, Eigen::Index d) {
  (void)task;
  if (n < 2) throw std::invalid_argument("rademacher_upper_bound: n must be >= 2");
  if (sup_inf < 0.0 || sup_fro < 0.0) {
    throw std::invalid_argument("rademacher_upper_bound: negative supremum");
  }
  const double dn = static_cast<double>(n);
  switch (kind) {
    case NormKind::kFrobenius:
    case NormKind::kTrace:
      // Trace has no sharper closed form here; the Frobenius bound dominates
      // its dual.
      return 2.0 * sup_fro * sup_fro / std::sqrt(dn);
    case NormKind::kEntrywiseL1:
    case NormKind::kMixed21: {
      if (d < 2) {
        throw std::invalid_argument(
            "rademacher_upper_bound: d >= 2 required for the log-d form");
      }
      const double root =
          std::sqrt(std::numbers::e * std::log(static_cast<double>(d)) / dn);
      if (kind == NormKind::kEntrywiseL1) return 4.0 * sup_inf * sup_inf * root;
      return 4.0 * sup_inf * sup_fro * root;
    }
  }
  return 0.0;
}

}  // namespace msl
