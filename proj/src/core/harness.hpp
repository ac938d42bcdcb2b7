#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "core/bounds.hpp"
#include "core/oracles.hpp"
#include "core/rademacher.hpp"
#include "core/solver.hpp"
#include "core/types.hpp"

namespace msl {

// Data domain for generated experiments: the unit box [0,1]^d with two
// label clusters whose center distance is `separation`.
struct DomainSpec {
  double separation = 0.5;
};

struct ExperimentConfig {
  Task task = Task::kMetric;
  NormKind kind = NormKind::kFrobenius;
  Eigen::Index d = 8;
  std::uint64_t n_train = 100;
  std::uint64_t n_test = 200;
  double lambda = 0.5;
  double delta = 0.05;
  std::uint64_t seed = 0;
  DomainSpec domain;
  std::uint64_t repeats = 1;
  std::uint64_t mc_draws = 10000;
  SolverConfig solver;
};

struct RepeatRecord {
  std::uint64_t repeat = 0;
  double train_risk = 0.0;
  double test_risk = 0.0;
  double gap = 0.0;
  BoundReport bound;          // closed-form complexity; the binding comparison
  double r_n_mc = 0.0;        // Monte Carlo estimate on this sample
  double r_n_mc_std_error = 0.0;
  double x_star_empirical = 0.0;
  double model_norm = 0.0;
  double model_offset = 0.0;
  double final_objective = 0.0;
  CheckResult margin;
  CheckResult offset_bound;
  bool violation = false;     // gap > bound.total
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<RepeatRecord> repeats;
  double max_gap = 0.0;
  double min_bound = 0.0;
  double mean_r_n_mc = 0.0;   // resample average of the per-repeat estimates
  std::uint64_t violations = 0;
};

// n points in [0,1]^d, two balanced label classes as uniform noise around
// two box-interior centers `separation` apart (coordinates clipped to the
// box). Bit-identical for a fixed seed.
Dataset generate_synthetic(Eigen::Index d, std::uint64_t n, double separation,
                           std::uint64_t seed);

// For each repeat: generate train/test, fit, measure both risks, estimate
// the complexity, assemble the bound, and run the margin and offset checks.
// Repeat r uses data seed config.seed ^ r. Aggregation order is fixed, so
// reports are byte-identical across runs.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct ScalingCell {
  Eigen::Index d = 0;
  NormKind kind = NormKind::kFrobenius;
  double x_star = 0.0;
  double r_n_mc = 0.0;
  double r_n_mc_std_error = 0.0;
  double r_n_closed_form = 0.0;
  double example_bound_total = 0.0;
};

struct ScalingTable {
  ExperimentConfig base;
  std::vector<Eigen::Index> dims;
  std::vector<NormKind> kinds;
  std::vector<ScalingCell> cells;          // row-major over (d, kind)
  std::vector<double> loglog_slopes;       // per kind: slope of log r_n_mc vs log d
};

// Measures the complexity under each dual across dimensions and compares
// against the analytic x_star and closed-form bounds. One Monte Carlo pass
// per dimension is shared by all duals.
ScalingTable scaling_study(const ExperimentConfig& base,
                           const std::vector<Eigen::Index>& dims,
                           const std::vector<NormKind>& kinds);

std::string scaling_table_to_csv(const ScalingTable& table);

nlohmann::ordered_json experiment_config_to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json experiment_report_to_json(const ExperimentReport& report);
std::string experiment_report_json(const ExperimentReport& report);

}  // namespace msl
