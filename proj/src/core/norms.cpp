#include "core/norms.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace msl {

namespace {

constexpr double kEigZeroTol = 1e-12;

void require_finite(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("matrix with non-finite entries");
  }
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigendecomposition failed");
  }
  return solver;
}

}  // namespace

namespace detail {

double matrix_norm(const Eigen::MatrixXd& m, NormKind kind) {
  switch (kind) {
    case NormKind::kFrobenius:
      return m.norm();
    case NormKind::kEntrywiseL1:
      return m.cwiseAbs().sum();
    case NormKind::kMixed21:
      return m.rowwise().norm().sum();
    case NormKind::kTrace:
      return eig(m).eigenvalues().cwiseAbs().sum();
  }
  return 0.0;
}

double dual_norm(const Eigen::MatrixXd& x, NormKind kind) {
  if (x.size() == 0) return 0.0;
  switch (kind) {
    case NormKind::kFrobenius:
      return x.norm();
    case NormKind::kEntrywiseL1:
      return x.cwiseAbs().maxCoeff();
    case NormKind::kMixed21:
      return x.rowwise().norm().maxCoeff();
    case NormKind::kTrace:
      return eig(x).eigenvalues().cwiseAbs().maxCoeff();
  }
  return 0.0;
}

Eigen::MatrixXd norm_subgradient(const Eigen::MatrixXd& m, NormKind kind) {
  const Eigen::Index d = m.rows();
  switch (kind) {
    case NormKind::kFrobenius: {
      const double n = m.norm();
      if (n == 0.0) return Eigen::MatrixXd::Zero(d, d);
      return m / n;
    }
    case NormKind::kEntrywiseL1: {
      Eigen::MatrixXd g(d, d);
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
          g(i, j) = m(i, j) > 0.0 ? 1.0 : (m(i, j) < 0.0 ? -1.0 : 0.0);
        }
      }
      return g;
    }
    case NormKind::kMixed21: {
      // Row-wise subgradient of the rectangular (2,1) norm, then symmetrized:
      // on the symmetric subspace <G, H> = <sym(G), H>, so sym(G) is a valid
      // subgradient for symmetric arguments.
      Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
      for (Eigen::Index i = 0; i < d; ++i) {
        const double r = m.row(i).norm();
        if (r > 0.0) g.row(i) = m.row(i) / r;
      }
      return 0.5 * (g + g.transpose());
    }
    case NormKind::kTrace: {
      const auto solver = eig(m);
      Eigen::VectorXd s = solver.eigenvalues();
      for (Eigen::Index i = 0; i < d; ++i) {
        s(i) = std::abs(s(i)) < kEigZeroTol ? 0.0 : (s(i) > 0.0 ? 1.0 : -1.0);
      }
      Eigen::MatrixXd g =
          solver.eigenvectors() * s.asDiagonal() * solver.eigenvectors().transpose();
      return 0.5 * (g + g.transpose());
    }
  }
  return Eigen::MatrixXd::Zero(d, d);
}

}  // namespace detail

double matrix_norm(const SymMatrix& m, NormKind kind) {
  require_finite(m.mat());
  return detail::matrix_norm(m.mat(), kind);
}

double dual_norm(const SymMatrix& x, NormKind kind) {
  require_finite(x.mat());
  return detail::dual_norm(x.mat(), kind);
}

SymMatrix norm_subgradient(const SymMatrix& m, NormKind kind) {
  require_finite(m.mat());
  return SymMatrix(detail::norm_subgradient(m.mat(), kind));
}

}  // namespace msl
