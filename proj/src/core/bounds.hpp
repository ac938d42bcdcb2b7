#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "core/types.hpp"

namespace msl {

// Decomposed right-hand side of the generalization bound together with every
// input that produced it. total is the exact sum of the three term fields.
struct BoundReport {
  Task task = Task::kMetric;
  NormKind kind = NormKind::kFrobenius;
  std::uint64_t n = 0;
  Eigen::Index d = 0;
  double lambda = 0.0;
  double delta = 0.0;
  double r_n = 0.0;
  std::string r_n_source;  // which complexity estimate was plugged in
  double x_star = 0.0;
  double term_rademacher = 0.0;
  double term_sqrt_n = 0.0;
  double term_confidence = 0.0;
  double total = 0.0;
  double b_lambda = 0.0;
};

// Uniform bound on the pair loss over the feasible class: 2 (1 + x_star / sqrt(lambda)).
double b_lambda(double x_star, double lambda);

// Assembles 4 r_n / sqrt(lambda) + 4 (3 + 2 x_star / sqrt(lambda)) / sqrt(n)
//           + 2 (1 + x_star / sqrt(lambda)) sqrt(2 ln(1/delta) / n).
// r_n may come from Monte Carlo, exact enumeration, or a closed form;
// r_n_source records which. Requires n >= 2, lambda > 0, 0 < delta < 1.
BoundReport theorem_bound(Task task, NormKind kind, double r_n, double x_star,
                          double lambda, std::uint64_t n, Eigen::Index d,
                          double delta, std::string r_n_source = "user");

// Fully specialized per-norm bound with the closed-form complexity and
// x_star derived from the domain suprema sup_inf and sup_fro. Trace uses the
// Frobenius specialization, flagged via r_n_source.
BoundReport example_bound(NormKind kind, Task task, double sup_inf,
                          double sup_fro, double lambda, std::uint64_t n,
                          Eigen::Index d, double delta);

nlohmann::ordered_json bound_report_to_json(const BoundReport& report);

}  // namespace msl
