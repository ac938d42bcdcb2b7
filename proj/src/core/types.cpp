#include "core/types.hpp"

#include <stdexcept>
#include <utility>

namespace msl {

const char* to_string(NormKind kind) {
  switch (kind) {
    case NormKind::kFrobenius: return "fro";
    case NormKind::kEntrywiseL1: return "l1";
    case NormKind::kMixed21: return "l21";
    case NormKind::kTrace: return "trace";
  }
  return "?";
}

const char* dual_name(NormKind kind) {
  switch (kind) {
    case NormKind::kFrobenius: return "fro";
    case NormKind::kEntrywiseL1: return "linf";
    case NormKind::kMixed21: return "l2inf";
    case NormKind::kTrace: return "spectral";
  }
  return "?";
}

const char* to_string(Task task) {
  return task == Task::kMetric ? "metric" : "similarity";
}

std::optional<NormKind> norm_kind_from_string(std::string_view name) {
  if (name == "fro" || name == "frobenius") return NormKind::kFrobenius;
  if (name == "l1") return NormKind::kEntrywiseL1;
  if (name == "l21") return NormKind::kMixed21;
  if (name == "trace") return NormKind::kTrace;
  return std::nullopt;
}

std::optional<NormKind> norm_kind_from_dual_string(std::string_view name) {
  if (name == "fro") return NormKind::kFrobenius;
  if (name == "linf") return NormKind::kEntrywiseL1;
  if (name == "l2inf") return NormKind::kMixed21;
  if (name == "spectral") return NormKind::kTrace;
  return std::nullopt;
}

std::optional<Task> task_from_string(std::string_view name) {
  if (name == "metric") return Task::kMetric;
  if (name == "similarity") return Task::kSimilarity;
  return std::nullopt;
}

SymMatrix::SymMatrix(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("SymMatrix: matrix must be square");
  }
  mat_ = 0.5 * (a + a.transpose());
}

SymMatrix SymMatrix::Zero(Eigen::Index d) {
  if (d < 1) throw std::invalid_argument("SymMatrix: dimension must be >= 1");
  SymMatrix s;
  s.mat_ = Eigen::MatrixXd::Zero(d, d);
  return s;
}

SymMatrix SymMatrix::FromSymmetric(Eigen::MatrixXd m) {
  SymMatrix s;
  s.mat_ = std::move(m);
  return s;
}

Dataset::Dataset(Eigen::MatrixXd points, std::vector<std::int64_t> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  if (static_cast<std::size_t>(points_.rows()) != labels_.size()) {
    throw std::invalid_argument("Dataset: point/label count mismatch");
  }
  if (points_.rows() > 0 && points_.cols() < 1) {
    throw std::invalid_argument("Dataset: dimension must be >= 1");
  }
  if (!points_.allFinite()) {
    throw std::invalid_argument("Dataset: non-finite coordinates");
  }
}

}  // namespace msl
