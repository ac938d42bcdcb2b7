#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "core/harness.hpp"
#include "core/norms.hpp"
#include "core/rademacher.hpp"
#include "core/rng.hpp"

using msl::BlockSet;
using msl::Dataset;
using msl::NormKind;
using msl::SymMatrix;
using msl::Task;

namespace {

constexpr NormKind kAllKinds[] = {NormKind::kFrobenius, NormKind::kEntrywiseL1,
                                  NormKind::kMixed21, NormKind::kTrace};

BlockSet blocks_from(std::vector<Eigen::MatrixXd> blocks) {
  BlockSet out;
  out.dim = blocks.front().rows();
  out.blocks = std::move(blocks);
  return out;
}

BlockSet random_blocks(msl::SplitMix64& rng, std::size_t m, Eigen::Index d) {
  const Dataset data =
      msl::generate_synthetic(d, 2 * m, 0.4 + rng.next_double(), rng.next());
  return msl::build_blocks(Task::kMetric, data);
}

}  // namespace

TEST_CASE("build_blocks pairs the two halves") {
  Eigen::MatrixXd pts(4, 2);
  pts << 0, 0, 1, 0, 0, 1, 1, 1;
  const Dataset data(pts, {0, 1, 0, 1});

  const BlockSet metric = msl::build_blocks(Task::kMetric, data);
  REQUIRE(metric.count() == 2);
  Eigen::VectorXd u0 = pts.row(0) - pts.row(2);
  Eigen::VectorXd u1 = pts.row(1) - pts.row(3);
  CHECK((metric.blocks[0] - u0 * u0.transpose()).norm() == 0.0);
  CHECK((metric.blocks[1] - u1 * u1.transpose()).norm() == 0.0);

  const BlockSet sim = msl::build_blocks(Task::kSimilarity, data);
  Eigen::VectorXd a = pts.row(0), b = pts.row(2);
  CHECK((sim.blocks[0] -
         0.5 * (a * b.transpose() + b * a.transpose())).norm() == 0.0);

  // Odd n drops the trailing point.
  Eigen::MatrixXd pts5(5, 2);
  pts5 << 0, 0, 1, 0, 0, 1, 1, 1, 9, 9;
  const Dataset odd(pts5, {0, 1, 0, 1, 0});
  CHECK(msl::build_blocks(Task::kMetric, odd).count() == 2);

  // Coincident pairs give zero blocks.
  Eigen::MatrixXd same(4, 2);
  same << 0.3, 0.7, 0.1, 0.9, 0.3, 0.7, 0.1, 0.9;
  const BlockSet zero = msl::build_blocks(Task::kMetric, Dataset(same, {0, 1, 0, 1}));
  CHECK(zero.blocks[0].isZero(0.0));
  CHECK(zero.blocks[1].isZero(0.0));
}

TEST_CASE("single block estimates are exact for any draw count") {
  Eigen::MatrixXd b(2, 2);
  b << 1.5, -0.5, -0.5, 2.0;
  const BlockSet one = blocks_from({b});
  for (const NormKind kind : kAllKinds) {
    const double expected = msl::dual_norm(SymMatrix(b), kind);
    const auto exact = msl::exact_rademacher(one, kind);
    CHECK(exact.value == doctest::Approx(expected).epsilon(1e-14));
    CHECK(exact.draws == 0);
    CHECK(exact.std_error == 0.0);
    const auto mc = msl::empirical_rademacher(one, kind, 37, 5);
    CHECK(mc.value == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("two identical blocks halve the dual norm") {
  Eigen::MatrixXd b(2, 2);
  b << 0.7, 0.2, 0.2, -0.4;
  const BlockSet two = blocks_from({b, b});
  // Sign patterns give 2B, 0, 0, -2B, so the expectation is ||B||_* / 2.
  for (const NormKind kind : kAllKinds) {
    const double expected = 0.5 * msl::dual_norm(SymMatrix(b), kind);
    CHECK(msl::exact_rademacher(two, kind).value ==
          doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("all-zero blocks give zero complexity") {
  const BlockSet zeros =
      blocks_from({Eigen::MatrixXd::Zero(3, 3), Eigen::MatrixXd::Zero(3, 3)});
  for (const NormKind kind : kAllKinds) {
    CHECK(msl::exact_rademacher(zeros, kind).value == 0.0);
    CHECK(msl::empirical_rademacher(zeros, kind, 100, 1).value == 0.0);
  }
}

TEST_CASE("exact value matches a hand-rolled 8-term sum for m = 3 diagonals") {
  Eigen::MatrixXd b1 = Eigen::Vector2d(1.0, -2.0).asDiagonal();
  Eigen::MatrixXd b2 = Eigen::Vector2d(0.5, 0.25).asDiagonal();
  Eigen::MatrixXd b3 = Eigen::Vector2d(-1.5, 3.0).asDiagonal();
  const BlockSet three = blocks_from({b1, b2, b3});

  // Independent evaluation: diagonal sums, duals written out per kind.
  const double d1[2] = {1.0, -2.0}, d2[2] = {0.5, 0.25}, d3[2] = {-1.5, 3.0};
  double sum_linf = 0.0, sum_fro = 0.0, sum_l2inf = 0.0, sum_spec = 0.0;
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1})
      for (int s3 : {-1, 1}) {
        const double a = s1 * d1[0] + s2 * d2[0] + s3 * d3[0];
        const double b = s1 * d1[1] + s2 * d2[1] + s3 * d3[1];
        sum_linf += std::max(std::abs(a), std::abs(b));
        sum_fro += std::sqrt(a * a + b * b);
        sum_l2inf += std::max(std::abs(a), std::abs(b));   // diagonal rows
        sum_spec += std::max(std::abs(a), std::abs(b));
      }
  const double inv = 1.0 / (8.0 * 3.0);
  CHECK(msl::exact_rademacher(three, NormKind::kEntrywiseL1).value ==
        doctest::Approx(sum_linf * inv).epsilon(1e-12));
  CHECK(msl::exact_rademacher(three, NormKind::kFrobenius).value ==
        doctest::Approx(sum_fro * inv).epsilon(1e-12));
  CHECK(msl::exact_rademacher(three, NormKind::kMixed21).value ==
        doctest::Approx(sum_l2inf * inv).epsilon(1e-12));
  CHECK(msl::exact_rademacher(three, NormKind::kTrace).value ==
        doctest::Approx(sum_spec * inv).epsilon(1e-12));
}

TEST_CASE("exact value is invariant to reordering and single sign flips") {
  msl::SplitMix64 rng(71);
  for (int rep = 0; rep < 20; ++rep) {
    BlockSet blocks = random_blocks(rng, 5, 3);
    const NormKind kind = kAllKinds[rng.next() % 4];
    const double base = msl::exact_rademacher(blocks, kind).value;

    BlockSet shuffled = blocks;
    std::reverse(shuffled.blocks.begin(), shuffled.blocks.end());
    CHECK(msl::exact_rademacher(shuffled, kind).value ==
          doctest::Approx(base).epsilon(1e-10));

    BlockSet flipped = blocks;
    flipped.blocks[2] = -flipped.blocks[2];
    CHECK(msl::exact_rademacher(flipped, kind).value ==
          doctest::Approx(base).epsilon(1e-10));
  }
}

TEST_CASE("dual ordering: linf <= l2inf <= frobenius") {
  msl::SplitMix64 rng(72);
  for (int rep = 0; rep < 30; ++rep) {
    const BlockSet blocks = random_blocks(rng, 4 + rng.next() % 5, 2 + rng.next() % 4);
    const double v_linf = msl::exact_rademacher(blocks, NormKind::kEntrywiseL1).value;
    const double v_l2inf = msl::exact_rademacher(blocks, NormKind::kMixed21).value;
    const double v_fro = msl::exact_rademacher(blocks, NormKind::kFrobenius).value;
    CHECK(v_linf <= v_l2inf + 1e-9);
    CHECK(v_l2inf <= v_fro + 1e-9);
  }
}

TEST_CASE("Monte Carlo agrees with exact enumeration") {
  msl::SplitMix64 rng(73);
  const BlockSet blocks = random_blocks(rng, 8, 4);
  for (const NormKind kind : kAllKinds) {
    const double exact = msl::exact_rademacher(blocks, kind).value;
    const auto mc = msl::empirical_rademacher(blocks, kind, 100000, 99);
    CHECK(std::abs(mc.value - exact) <= 3.0 * mc.std_error);
  }

  // Seeded consistency sweep: at most 1% of trials outside 4 std errors.
  int failures = 0;
  const int total = 500;
  for (int rep = 0; rep < total; ++rep) {
    const BlockSet set = random_blocks(rng, 2 + rng.next() % 9, 2 + rng.next() % 3);
    const NormKind kind = kAllKinds[rng.next() % 4];
    const double exact = msl::exact_rademacher(set, kind).value;
    const auto mc = msl::empirical_rademacher(set, kind, 10000, rng.next());
    if (std::abs(mc.value - exact) > 4.0 * mc.std_error) ++failures;
  }
  CHECK(failures <= total / 100);
}

TEST_CASE("Monte Carlo is deterministic and draw-indexed") {
  msl::SplitMix64 rng(74);
  const BlockSet blocks = random_blocks(rng, 6, 3);
  const auto a = msl::empirical_rademacher(blocks, NormKind::kFrobenius, 5000, 11);
  const auto b = msl::empirical_rademacher(blocks, NormKind::kFrobenius, 5000, 11);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);

  // The multi-kind pass shares the same signed sums.
  const NormKind kinds[] = {NormKind::kFrobenius, NormKind::kMixed21};
  const auto multi = msl::empirical_rademacher_multi(blocks, kinds, 5000, 11);
  CHECK(multi[0].value == a.value);
}

TEST_CASE("x_star closed forms on the unit box") {
  for (const Task task : {Task::kMetric, Task::kSimilarity}) {
    for (const Eigen::Index d : {2, 4, 7, 16}) {
      CHECK(msl::x_star_unit_box(task, NormKind::kFrobenius, d) ==
            static_cast<double>(d));
      CHECK(msl::x_star_unit_box(task, NormKind::kEntrywiseL1, d) == 1.0);
      CHECK(msl::x_star_unit_box(task, NormKind::kMixed21, d) ==
            doctest::Approx(std::sqrt(static_cast<double>(d))).epsilon(1e-12));
      CHECK(msl::x_star_unit_box(task, NormKind::kTrace, d) ==
            static_cast<double>(d));
    }
  }
}

TEST_CASE("x_star_empirical matches a brute-force pair scan") {
  msl::SplitMix64 rng(75);
  const Dataset data = msl::generate_synthetic(3, 12, 0.9, 5);
  for (const Task task : {Task::kMetric, Task::kSimilarity}) {
    for (const NormKind kind : kAllKinds) {
      double best = 0.0;
      for (Eigen::Index i = 0; i < data.size(); ++i) {
        for (Eigen::Index j = 0; j < data.size(); ++j) {
          if (i == j) continue;
          const Eigen::VectorXd a = data.points().row(i);
          const Eigen::VectorXd b = data.points().row(j);
          Eigen::MatrixXd block;
          if (task == Task::kMetric) {
            block = (a - b) * (a - b).transpose();
          } else {
            block = 0.5 * (a * b.transpose() + b * a.transpose());
          }
          best = std::max(best, msl::dual_norm(SymMatrix(block), kind));
        }
      }
      CHECK(msl::x_star_empirical(task, kind, data) ==
            doctest::Approx(best).epsilon(1e-12));
    }
  }
}

TEST_CASE("closed-form complexity bounds") {
  // Frobenius: 2 X_* / sqrt(n) with X_* = sup_fro^2.
  CHECK(msl::rademacher_upper_bound(NormKind::kFrobenius, Task::kMetric, 1.0, 2.0,
                                    100, 4) == doctest::Approx(0.8).epsilon(1e-12));
  // L1 at d = 2, n = 100: 4 sqrt(e ln 2 / 100).
  const double expected =
      4.0 * std::sqrt(std::numbers::e * std::log(2.0) / 100.0);
  CHECK(msl::rademacher_upper_bound(NormKind::kEntrywiseL1, Task::kMetric, 1.0,
                                    std::sqrt(2.0), 100, 2) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.5490).epsilon(1e-3));
  // On the unit box the (2,1) bound is sqrt(d) times the L1 bound.
  for (const Eigen::Index d : {4, 9, 25}) {
    const double sup_fro = std::sqrt(static_cast<double>(d));
    const double l1 = msl::rademacher_upper_bound(NormKind::kEntrywiseL1,
                                                  Task::kMetric, 1.0, sup_fro, 200, d);
    const double l21 = msl::rademacher_upper_bound(NormKind::kMixed21,
                                                   Task::kMetric, 1.0, sup_fro, 200, d);
    CHECK(l21 == doctest::Approx(sup_fro * l1).epsilon(1e-12));
  }
  // Trace falls back to the Frobenius formula.
  CHECK(msl::rademacher_upper_bound(NormKind::kTrace, Task::kMetric, 1.0, 2.0, 100,
                                    4) ==
        msl::rademacher_upper_bound(NormKind::kFrobenius, Task::kMetric, 1.0, 2.0,
                                    100, 4));
}

TEST_CASE("exact complexity is dominated by the closed forms") {
  msl::SplitMix64 rng(76);
  for (int rep = 0; rep < 25; ++rep) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.next() % 7);
    const std::size_t m = 2 + rng.next() % 8;
    const Dataset data =
        msl::generate_synthetic(d, 2 * m, rng.next_double(), rng.next());
    const BlockSet blocks = msl::build_blocks(Task::kMetric, data);
    const double sup_fro = std::sqrt(static_cast<double>(d));
    for (const NormKind kind :
         {NormKind::kFrobenius, NormKind::kEntrywiseL1, NormKind::kMixed21}) {
      const double exact = msl::exact_rademacher(blocks, kind).value;
      const double bound = msl::rademacher_upper_bound(kind, Task::kMetric, 1.0,
                                                       sup_fro, 2 * m, d);
      CHECK(exact <= bound + 1e-9);
    }
  }
}

TEST_CASE("guards") {
  msl::SplitMix64 rng(77);
  const BlockSet big = random_blocks(rng, 21, 2);
  CHECK_THROWS_AS(msl::exact_rademacher(big, NormKind::kFrobenius),
                  std::invalid_argument);
  const BlockSet ok = random_blocks(rng, 3, 2);
  CHECK_THROWS_AS(msl::empirical_rademacher(ok, NormKind::kFrobenius, 0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(msl::rademacher_upper_bound(NormKind::kEntrywiseL1,
                                              Task::kMetric, 1.0, 1.0, 100, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(msl::rademacher_upper_bound(NormKind::kMixed21, Task::kMetric,
                                              1.0, 1.0, 1, 4),
                  std::invalid_argument);
}
