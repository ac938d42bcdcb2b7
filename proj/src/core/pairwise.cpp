#include "core/pairwise.hpp"

#include <stdexcept>

namespace msl {

namespace {

inline double hinge(double v) { return v > 0.0 ? v : 0.0; }

// Compensated accumulator for pair sums.
struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// x^T M x' accumulated as diag + off-diag pair terms. Each off-diagonal term
// is x_k x'_l M_kl + x_l x'_k M_kl, which is commutative in (x, x'), so the
// result is bitwise identical under swapping the arguments.
double bilinear(const Eigen::MatrixXd& m, const Eigen::VectorXd& x,
                const Eigen::VectorXd& x2) {
  const Eigen::Index d = m.rows();
  double acc = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    acc += m(k, k) * (x(k) * x2(k));
    for (Eigen::Index l = k + 1; l < d; ++l) {
      acc += m(k, l) * (x(k) * x2(l) + x(l) * x2(k));
    }
  }
  return acc;
}

double score_raw(Task task, const Eigen::MatrixXd& m, const Eigen::VectorXd& x,
                 const Eigen::VectorXd& x2) {
  if (task == Task::kMetric) {
    const Eigen::VectorXd u = x - x2;
    return bilinear(m, u, u);
  }
  return bilinear(m, x, x2);
}

double pair_loss_raw(Task task, const Eigen::MatrixXd& m, double b,
                     const Eigen::VectorXd& x, std::int64_t y,
                     const Eigen::VectorXd& x2, std::int64_t y2) {
  const double r = static_cast<double>(relation(y, y2));
  const double s = score_raw(task, m, x, x2);
  if (task == Task::kMetric) return hinge(1.0 + r * (s - b));
  return hinge(1.0 - r * (s - b));
}

void require_pairs(const Dataset& data, const char* op) {
  if (data.size() < 2) {
    throw std::invalid_argument(std::string(op) + ": needs at least 2 points");
  }
}

}  // namespace

int relation(std::int64_t y, std::int64_t y2) { return y == y2 ? 1 : -1; }

double score(Task task, const SymMatrix& m, const Eigen::VectorXd& x,
             const Eigen::VectorXd& x2) {
  if (x.size() != x2.size() || x.size() != m.dim()) {
    throw std::invalid_argument("score: dimension mismatch");
  }
  return score_raw(task, m.mat(), x, x2);
}

double pair_loss(Task task, const Model& model, const Eigen::VectorXd& x,
                 std::int64_t y, const Eigen::VectorXd& x2, std::int64_t y2) {
  if (x.size() != x2.size() || x.size() != model.m.dim()) {
    throw std::invalid_argument("pair_loss: dimension mismatch");
  }
  return pair_loss_raw(task, model.m.mat(), model.b, x, y, x2, y2);
}

double empirical_risk(Task task, const Model& model, const Dataset& data) {
  require_pairs(data, "empirical_risk");
  if (data.dim() != model.m.dim()) {
    throw std::invalid_argument("empirical_risk: dimension mismatch");
  }
  const Eigen::Index n = data.size();
  // Losses are symmetric in (i, j), so the ordered sum is twice the
  // unordered one.
  Kahan acc;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd xi = data.points().row(i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Eigen::VectorXd xj = data.points().row(j);
      acc.add(2.0 * pair_loss_raw(task, model.m.mat(), model.b, xi,
                                  data.label(i), xj, data.label(j)));
    }
  }
  return acc.sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double block_risk(Task task, const Model& model, const Dataset& data) {
  require_pairs(data, "block_risk");
  if (data.dim() != model.m.dim()) {
    throw std::invalid_argument("block_risk: dimension mismatch");
  }
  const Eigen::Index m = data.size() / 2;
  Kahan acc;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::VectorXd xi = data.points().row(i);
    const Eigen::VectorXd xj = data.points().row(m + i);
    acc.add(pair_loss_raw(task, model.m.mat(), model.b, xi, data.label(i), xj,
                          data.label(m + i)));
  }
  return acc.sum / static_cast<double>(m);
}

double risk_estimate(Task task, const Model& model, const Dataset& test) {
  require_pairs(test, "risk_estimate");
  return empirical_risk(task, model, test);
}

}  // namespace msl
