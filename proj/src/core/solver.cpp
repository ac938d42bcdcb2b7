#include "core/solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "core/norms.hpp"
#include "core/pairwise.hpp"

namespace msl {

namespace {

inline double hinge(double v) { return v > 0.0 ? v : 0.0; }

// Largest soft threshold that brings the L1 norm of `v` (entries assumed
// nonnegative) down to `radius`.
double l1_threshold(std::vector<double> v, double radius) {
  std::sort(v.begin(), v.end(), std::greater<double>());
  double csum = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    csum += v[k];
    const double cand = (csum - radius) / static_cast<double>(k + 1);
    if (cand < v[k]) theta = cand;
  }
  return std::max(theta, 0.0);
}

Eigen::MatrixXd project_ball_raw(const Eigen::MatrixXd& m, NormKind kind,
                                 double radius) {
  const double nrm = detail::matrix_norm(m, kind);
  if (nrm <= radius) return m;
  const Eigen::Index d = m.rows();
  switch (kind) {
    case NormKind::kFrobenius:
      return m * (radius / nrm);
    case NormKind::kEntrywiseL1: {
      std::vector<double> mags(static_cast<std::size_t>(d * d));
      for (Eigen::Index i = 0, k = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j, ++k)
          mags[static_cast<std::size_t>(k)] = std::abs(m(i, j));
      const double theta = l1_threshold(std::move(mags), radius);
      Eigen::MatrixXd out(d, d);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
          const double s = hinge(std::abs(m(i, j)) - theta);
          out(i, j) = m(i, j) >= 0.0 ? s : -s;
        }
      return out;
    }
    case NormKind::kMixed21: {
      std::vector<double> rows(static_cast<std::size_t>(d));
      for (Eigen::Index i = 0; i < d; ++i)
        rows[static_cast<std::size_t>(i)] = m.row(i).norm();
      const double theta = l1_threshold(rows, radius);
      Eigen::MatrixXd shrunk = Eigen::MatrixXd::Zero(d, d);
      for (Eigen::Index i = 0; i < d; ++i) {
        const double r = m.row(i).norm();
        if (r > theta) shrunk.row(i) = m.row(i) * ((r - theta) / r);
      }
      Eigen::MatrixXd out = 0.5 * (shrunk + shrunk.transpose());
      // Symmetrizing can push the row-norm sum slightly past the radius;
      // finish with a radial correction.
      const double post = detail::matrix_norm(out, NormKind::kMixed21);
      if (post > radius) out *= radius / post;
      return out;
    }
    case NormKind::kTrace: {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
      if (solver.info() != Eigen::Success) {
        throw std::runtime_error("project_norm_ball: eigendecomposition failed");
      }
      Eigen::VectorXd lam = solver.eigenvalues();
      std::vector<double> mags(static_cast<std::size_t>(d));
      for (Eigen::Index i = 0; i < d; ++i)
        mags[static_cast<std::size_t>(i)] = std::abs(lam(i));
      const double theta = l1_threshold(std::move(mags), radius);
      for (Eigen::Index i = 0; i < d; ++i) {
        const double s = hinge(std::abs(lam(i)) - theta);
        lam(i) = lam(i) >= 0.0 ? s : -s;
      }
      Eigen::MatrixXd out =
          solver.eigenvectors() * lam.asDiagonal() * solver.eigenvectors().transpose();
      return 0.5 * (out + out.transpose());
    }
  }
  return m;
}

// Pairwise scores for every unordered pair, shared between the risk and the
// subgradient passes. Metric scores come from the Gram identity
// d_M(x_i, x_j) = q_i + q_j - 2 A_ij with A = X M X^T, q = diag(A).
struct ScoreWorkspace {
  Eigen::MatrixXd a;   // X M X^T
  Eigen::VectorXd q;   // diag(a)
  Eigen::MatrixXd xm;  // X M

  void compute(const Eigen::MatrixXd& x, const Eigen::MatrixXd& m) {
    xm.noalias() = x * m;
    a.noalias() = xm * x.transpose();
    q = a.diagonal();
  }
  double pair_score(Task task, Eigen::Index i, Eigen::Index j) const {
    if (task == Task::kMetric) return q(i) + q(j) - 2.0 * a(i, j);
    return a(i, j);
  }
};

double fast_objective(Task task, NormKind kind, double lambda,
                      const Eigen::MatrixXd& m, double b,
                      const Eigen::MatrixXd& x,
                      const std::vector<double>& rel, ScoreWorkspace& ws) {
  const Eigen::Index n = x.rows();
  ws.compute(x, m);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r = rel[static_cast<std::size_t>(i * n + j)];
      const double s = ws.pair_score(task, i, j);
      const double arg = task == Task::kMetric ? 1.0 + r * (s - b) : 1.0 - r * (s - b);
      sum += 2.0 * hinge(arg);
    }
  }
  const double risk = sum / (static_cast<double>(n) * static_cast<double>(n - 1));
  const double nrm = detail::matrix_norm(m, kind);
  return risk + lambda * nrm * nrm;
}

}  // namespace

double objective(Task task, NormKind kind, double lambda, const Model& model,
                 const Dataset& data) {
  if (lambda <= 0.0) throw std::invalid_argument("objective: lambda must be > 0");
  const double nrm = matrix_norm(model.m, kind);
  return empirical_risk(task, model, data) + lambda * nrm * nrm;
}

SymMatrix project_norm_ball(const SymMatrix& m, NormKind kind, double radius) {
  if (radius <= 0.0) {
    throw std::invalid_argument("project_norm_ball: radius must be > 0");
  }
  return SymMatrix(project_ball_raw(m.mat(), kind, radius));
}

FitResult fit(Task task, NormKind kind, double lambda, const Dataset& data,
              const SolverConfig& config) {
  if (data.size() < 2) throw std::invalid_argument("fit: needs at least 2 points");
  if (lambda <= 0.0) throw std::invalid_argument("fit: lambda must be > 0");
  if (config.max_iters < 1 || config.step_scale <= 0.0 || config.tolerance <= 0.0) {
    throw std::invalid_argument("fit: invalid solver config");
  }

  const Eigen::Index n = data.size();
  const Eigen::Index d = data.dim();
  const Eigen::MatrixXd& x = data.points();
  const double radius = 1.0 / std::sqrt(lambda);
  const double pair_scale = 1.0 / (static_cast<double>(n) * static_cast<double>(n - 1));

  std::vector<double> rel(static_cast<std::size_t>(n * n), 0.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      rel[static_cast<std::size_t>(i * n + j)] =
          static_cast<double>(relation(data.label(i), data.label(j)));

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  double b = 0.0;
  Eigen::MatrixXd m_sum = Eigen::MatrixXd::Zero(d, d);
  double b_sum = 0.0;

  ScoreWorkspace ws;
  Eigen::MatrixXd w(n, n), grad(d, d), m_avg(d, d);

  // The start point (0, 0) has objective exactly 1 and stays a candidate.
  Eigen::MatrixXd best_m = m;
  double best_b = 0.0;
  double best_obj = fast_objective(task, kind, lambda, m, b, x, rel, ws);

  FitResult result;
  result.objective_trace.reserve(config.max_iters + 1);
  result.objective_trace.push_back(best_obj);

  for (std::uint32_t t = 1; t <= config.max_iters; ++t) {
    // Subgradient of the empirical risk. Active ordered pairs (i, j) and
    // (j, i) contribute identically, hence the factor 2.
    ws.compute(x, m);
    w.setZero();
    double grad_b = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double r = rel[static_cast<std::size_t>(i * n + j)];
        const double s = ws.pair_score(task, i, j);
        if (task == Task::kMetric) {
          if (1.0 + r * (s - b) > 0.0) {
            const double c = 2.0 * r * pair_scale;
            w(i, j) = c;
            w(j, i) = c;
            grad_b -= c;
          }
        } else {
          if (1.0 - r * (s - b) > 0.0) {
            // X^T W X already sums both ordered rank-one terms, so the
            // per-unordered-pair coefficient is -r * pair_scale.
            const double c = -r * pair_scale;
            w(i, j) = c;
            w(j, i) = c;
            grad_b += 2.0 * r * pair_scale;
          }
        }
      }
    }
    if (task == Task::kMetric) {
      // sum_ij w_ij (x_i - x_j)(x_i - x_j)^T / 2 via the Laplacian identity.
      const Eigen::VectorXd deg = w.rowwise().sum();
      grad.noalias() = x.transpose() * (deg.asDiagonal() * x - w * x);
    } else {
      grad.noalias() = x.transpose() * (w * x);
      grad = 0.5 * (grad + grad.transpose()).eval();
    }

    const double nrm = detail::matrix_norm(m, kind);
    if (nrm > 0.0) {
      grad.noalias() += 2.0 * lambda * nrm * detail::norm_subgradient(m, kind);
    }

    const double eta = config.step_scale / std::sqrt(static_cast<double>(t));
    m.noalias() -= eta * grad;
    b -= eta * grad_b;
    m = 0.5 * (m + m.transpose()).eval();
    if (config.project) m = project_ball_raw(m, kind, radius);

    m_sum += m;
    b_sum += b;
    m_avg = m_sum / static_cast<double>(t);
    const double b_avg = b_sum / static_cast<double>(t);
    const double obj = fast_objective(task, kind, lambda, m_avg, b_avg, x, rel, ws);
    result.objective_trace.push_back(obj);
    if (obj < best_obj) {
      best_obj = obj;
      best_m = m_avg;
      best_b = b_avg;
    }
  }

  result.model = Model{SymMatrix(best_m), best_b};
  result.final_objective = best_obj;
  result.iterations_run = config.max_iters;
  return result;
}

}  // namespace msl
