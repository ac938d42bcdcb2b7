#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace msl {

// Regularizer family. Each norm is paired with a fixed dual:
// Frobenius <-> Frobenius, entrywise L1 <-> entrywise Linf,
// mixed (2,1) <-> mixed (2,inf), trace <-> spectral.
enum class NormKind { kFrobenius, kEntrywiseL1, kMixed21, kTrace };

// Which pairwise score is learned: squared Mahalanobis distance or
// bilinear similarity.
enum class Task { kMetric, kSimilarity };

const char* to_string(NormKind kind);
const char* dual_name(NormKind kind);
const char* to_string(Task task);
std::optional<NormKind> norm_kind_from_string(std::string_view name);
std::optional<NormKind> norm_kind_from_dual_string(std::string_view name);
std::optional<Task> task_from_string(std::string_view name);

// Symmetric d x d matrix. Symmetry is enforced on construction by storing
// (A + A^T) / 2, which is exact in IEEE arithmetic.
class SymMatrix {
 public:
  SymMatrix() = default;  // empty 0 x 0 placeholder
  explicit SymMatrix(const Eigen::MatrixXd& a);

  static SymMatrix Zero(Eigen::Index d);
  // Adopts `m` without the symmetrizing pass. Caller guarantees m == m^T.
  static SymMatrix FromSymmetric(Eigen::MatrixXd m);

  Eigen::Index dim() const { return mat_.rows(); }
  const Eigen::MatrixXd& mat() const { return mat_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

 private:
  Eigen::MatrixXd mat_;
};

// Ordered list of labeled points. Row i of points() is x_i. Row order is
// significant: block pairing and the block risk depend on it.
class Dataset {
 public:
  Dataset(Eigen::MatrixXd points, std::vector<std::int64_t> labels);

  Eigen::Index size() const { return points_.rows(); }
  Eigen::Index dim() const { return points_.cols(); }
  const Eigen::MatrixXd& points() const { return points_; }
  const std::vector<std::int64_t>& labels() const { return labels_; }
  std::int64_t label(Eigen::Index i) const { return labels_[static_cast<std::size_t>(i)]; }

 private:
  Eigen::MatrixXd points_;
  std::vector<std::int64_t> labels_;
};

// Learned scorer: symmetric matrix plus offset.
struct Model {
  SymMatrix m;
  double b = 0.0;
};

}  // namespace msl
