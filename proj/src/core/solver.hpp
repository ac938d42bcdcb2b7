#pragma once

#include <cstdint>
#include <vector>

#include "core/types.hpp"

namespace msl {

struct SolverConfig {
  std::uint32_t max_iters = 2000;
  double step_scale = 0.5;   // step at iteration t is step_scale / sqrt(t)
  double tolerance = 1e-4;
  bool project = true;       // keep iterates inside ||M|| <= 1/sqrt(lambda)
  std::uint64_t seed = 0;
};

struct FitResult {
  Model model;
  std::vector<double> objective_trace;  // averaged-iterate objective, entry 0 at (0, 0)
  double final_objective = 0.0;
  std::uint32_t iterations_run = 0;
};

// Regularized objective: empirical_risk(task, model, data) + lambda * ||M||^2.
double objective(Task task, NormKind kind, double lambda, const Model& model,
                 const Dataset& data);

// Projected subgradient descent on (M, b) jointly, starting from (0, 0), with
// running iterate averaging. Returns the averaged iterate with the best
// tracked objective; the start point is a candidate, so the final objective
// never exceeds 1. Deterministic for fixed inputs and config.
FitResult fit(Task task, NormKind kind, double lambda, const Dataset& data,
              const SolverConfig& config = {});

// Projection onto {||M|| <= radius} for the given norm. Frobenius: radial
// scaling. L1: global soft threshold on |entries|. (2,1): group soft
// threshold on rows, symmetrized, with a final radial correction so the
// output always satisfies the radius. Trace: soft threshold on eigenvalues.
SymMatrix project_norm_ball(const SymMatrix& m, NormKind kind, double radius);

}  // namespace msl
