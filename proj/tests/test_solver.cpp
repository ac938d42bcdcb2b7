#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/harness.hpp"
#include "core/norms.hpp"
#include "core/oracles.hpp"
#include "core/pairwise.hpp"
#include "core/rng.hpp"
#include "core/solver.hpp"

using msl::Dataset;
using msl::Model;
using msl::NormKind;
using msl::SolverConfig;
using msl::SymMatrix;
using msl::Task;

namespace {

constexpr NormKind kAllKinds[] = {NormKind::kFrobenius, NormKind::kEntrywiseL1,
                                  NormKind::kMixed21, NormKind::kTrace};

Dataset two_points_distinct() {
  Eigen::MatrixXd pts(2, 2);
  pts << 0.1, 0.2, 0.8, 0.6;
  return Dataset(pts, {0, 1});
}

SymMatrix random_sym(msl::SplitMix64& rng, Eigen::Index d, double scale) {
  Eigen::MatrixXd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      a(i, j) = scale * (rng.next_double() * 2.0 - 1.0);
  return SymMatrix(a);
}

}  // namespace

TEST_CASE("objective fixed values") {
  const Dataset data = msl::generate_synthetic(2, 10, 0.6, 3);
  const Model zero{SymMatrix::Zero(2), 0.0};
  for (const NormKind kind : kAllKinds) {
    CHECK(msl::objective(Task::kMetric, kind, 0.7, zero, data) == 1.0);
  }

  const Model ident{SymMatrix(Eigen::MatrixXd::Identity(2, 2)), 0.0};
  const double risk = msl::empirical_risk(Task::kMetric, ident, data);
  CHECK(msl::objective(Task::kMetric, NormKind::kFrobenius, 1.0, ident, data) ==
        doctest::Approx(risk + 2.0).epsilon(1e-12));

  const Model below{SymMatrix::Zero(2), -1.0};
  CHECK(msl::objective(Task::kMetric, NormKind::kTrace, 5.0, below,
                       two_points_distinct()) == 0.0);

  CHECK_THROWS_AS(msl::objective(Task::kMetric, NormKind::kFrobenius, 0.0, zero, data),
                  std::invalid_argument);
}

TEST_CASE("fit reaches the zero optimum on two distinct-label points") {
  const Dataset data = two_points_distinct();
  for (const NormKind kind : kAllKinds) {
    const auto res = msl::fit(Task::kMetric, kind, 0.5, data);
    CHECK(res.final_objective <= 1e-3);
    CHECK(res.iterations_run == 2000);
    CHECK(res.objective_trace.size() == 2001);
    CHECK(res.objective_trace.front() == 1.0);
  }
}

TEST_CASE("huge lambda pins the matrix near zero") {
  const Dataset data = msl::generate_synthetic(3, 12, 0.8, 9);
  for (const NormKind kind : kAllKinds) {
    const auto res = msl::fit(Task::kMetric, kind, 1e6, data);
    CHECK(msl::matrix_norm(res.model.m, kind) <= 1e-3 + 1e-4);
  }
}

TEST_CASE("fit beats the trivial objective on separable clusters") {
  // Two tight 2-D clusters; a coarse grid over diagonal M and b certifies
  // that objectives below 1 exist, independent of the solver.
  Eigen::MatrixXd pts(20, 2);
  std::vector<std::int64_t> labels(20);
  msl::SplitMix64 rng(17);
  for (int i = 0; i < 10; ++i) {
    pts(i, 0) = 0.15 + 0.1 * (rng.next_double() - 0.5);
    pts(i, 1) = 0.15 + 0.1 * (rng.next_double() - 0.5);
    labels[static_cast<std::size_t>(i)] = 0;
    pts(10 + i, 0) = 0.85 + 0.1 * (rng.next_double() - 0.5);
    pts(10 + i, 1) = 0.85 + 0.1 * (rng.next_double() - 0.5);
    labels[static_cast<std::size_t>(10 + i)] = 1;
  }
  const Dataset data(pts, labels);
  const double lambda = 0.1;

  double best_grid = std::numeric_limits<double>::infinity();
  for (double m00 = 0.0; m00 <= 4.0; m00 += 0.5) {
    for (double m11 = 0.0; m11 <= 4.0; m11 += 0.5) {
      Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
      diag(0, 0) = m00;
      diag(1, 1) = m11;
      for (double b = -1.0; b <= 3.0; b += 0.25) {
        const Model cand{SymMatrix(diag), b};
        best_grid = std::min(
            best_grid,
            msl::objective(Task::kMetric, NormKind::kFrobenius, lambda, cand, data));
      }
    }
  }
  REQUIRE(best_grid < 1.0);

  const auto res = msl::fit(Task::kMetric, NormKind::kFrobenius, lambda, data);
  CHECK(res.final_objective < 1.0);
}

TEST_CASE("fit is deterministic") {
  const Dataset data = msl::generate_synthetic(4, 30, 0.7, 21);
  const auto a = msl::fit(Task::kSimilarity, NormKind::kEntrywiseL1, 0.3, data);
  const auto b = msl::fit(Task::kSimilarity, NormKind::kEntrywiseL1, 0.3, data);
  CHECK(a.final_objective == b.final_objective);
  CHECK(a.model.b == b.model.b);
  CHECK((a.model.m.mat() - b.model.m.mat()).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(a.objective_trace.size() == b.objective_trace.size());
  for (std::size_t i = 0; i < a.objective_trace.size(); ++i) {
    CHECK(a.objective_trace[i] == b.objective_trace[i]);
  }
}

TEST_CASE("fit output satisfies the minimizer properties") {
  msl::SplitMix64 rng(31);
  for (int rep = 0; rep < 12; ++rep) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.next() % 5);
    const std::uint64_t n = 10 + rng.next() % 21;
    const double lambda = 0.05 + rng.next_double() * 1.5;
    const NormKind kind = kAllKinds[rng.next() % 4];
    const Task task = rng.next() % 2 == 0 ? Task::kMetric : Task::kSimilarity;
    const Dataset data =
        msl::generate_synthetic(d, n, 0.3 + rng.next_double(), rng.next());

    SolverConfig config;
    const auto res = msl::fit(task, kind, lambda, data, config);
    const double eps_opt = 10.0 * config.tolerance;

    CHECK(res.final_objective <= 1.0 + config.tolerance);
    const double norm_m = msl::matrix_norm(res.model.m, kind);
    if (res.final_objective <= 1.0) {
      CHECK(norm_m <= 1.0 / std::sqrt(lambda) + 1e-6);
    }
    CHECK(msl::margin_check(task, res.model, data, 1e-3).passed);
    const double x_emp = msl::x_star_empirical(task, kind, data);
    CHECK(std::abs(res.model.b) <= 1.0 + x_emp * norm_m + eps_opt);
  }
}

TEST_CASE("project_norm_ball") {
  msl::SplitMix64 rng(41);

  // Interior points come back unchanged.
  for (const NormKind kind : kAllKinds) {
    const SymMatrix m = random_sym(rng, 3, 0.1);
    const double norm_m = msl::matrix_norm(m, kind);
    const SymMatrix p = msl::project_norm_ball(m, kind, norm_m + 1.0);
    CHECK((p.mat() - m.mat()).cwiseAbs().maxCoeff() == 0.0);
  }

  // Frobenius projection is radial scaling.
  const SymMatrix two_i(2.0 * Eigen::MatrixXd::Identity(2, 2));
  const SymMatrix p =
      msl::project_norm_ball(two_i, NormKind::kFrobenius, std::sqrt(2.0));
  CHECK((p.mat() - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);

  // Projected points satisfy the radius for every kind.
  for (int rep = 0; rep < 500; ++rep) {
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.next() % 6);
    const SymMatrix m = random_sym(rng, d, 4.0);
    const NormKind kind = kAllKinds[rng.next() % 4];
    const double radius = 0.1 + rng.next_double() * 3.0;
    const SymMatrix proj = msl::project_norm_ball(m, kind, radius);
    CHECK(msl::matrix_norm(proj, kind) <= radius + 1e-9);
    CHECK((proj.mat() - proj.mat().transpose()).cwiseAbs().maxCoeff() == 0.0);
  }

  CHECK_THROWS_AS(msl::project_norm_ball(two_i, NormKind::kFrobenius, 0.0),
                  std::invalid_argument);
}

TEST_CASE("unprojected fit still obeys the norm bound when objective <= 1") {
  // lambda ||M||^2 <= objective <= 1 forces ||M|| <= 1/sqrt(lambda) with or
  // without projection.
  const Dataset data = msl::generate_synthetic(3, 20, 0.9, 13);
  SolverConfig config;
  config.project = false;
  for (const NormKind kind : {NormKind::kFrobenius, NormKind::kTrace}) {
    const auto res = msl::fit(Task::kMetric, kind, 0.4, data, config);
    REQUIRE(res.final_objective <= 1.0);
    CHECK(msl::matrix_norm(res.model.m, kind) <= 1.0 / std::sqrt(0.4) + 1e-6);
  }
}

TEST_CASE("fit input validation") {
  Eigen::MatrixXd one(1, 2);
  one << 0.5, 0.5;
  const Dataset single(one, {0});
  CHECK_THROWS_AS(msl::fit(Task::kMetric, NormKind::kFrobenius, 1.0, single),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      msl::fit(Task::kMetric, NormKind::kFrobenius, -1.0, two_points_distinct()),
      std::invalid_argument);
  SolverConfig bad;
  bad.max_iters = 0;
  CHECK_THROWS_AS(
      msl::fit(Task::kMetric, NormKind::kFrobenius, 1.0, two_points_distinct(), bad),
      std::invalid_argument);
}
