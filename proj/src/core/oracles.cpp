#include "core/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "core/pairwise.hpp"

namespace msl {

namespace {

constexpr double kPassGrace = 1e-9;

CheckResult make_result(double lhs, double rhs, std::string detail) {
  CheckResult r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.passed = r.slack >= -kPassGrace;
  r.detail = std::move(detail);
  return r;
}

}  // namespace

CheckResult khinchin_check(std::span<const double> f, double p, double q) {
  if (f.size() > 20) {
    throw std::invalid_argument("khinchin_check: refusing length > 20");
  }
  if (!(p > 1.0) || !(q > p)) {
    throw std::invalid_argument("khinchin_check: need 1 < p < q");
  }
  const std::size_t n = f.size();
  const std::uint64_t count = 1ull << n;
  double moment_p = 0.0;
  double moment_q = 0.0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s += (mask >> i) & 1u ? f[i] : -f[i];
    }
    const double a = std::abs(s);
    moment_p += std::pow(a, p);
    moment_q += std::pow(a, q);
  }
  const double cnt = static_cast<double>(count);
  const double lhs = std::pow(moment_q / cnt, 1.0 / q);
  const double rhs =
      std::sqrt((q - 1.0) / (p - 1.0)) * std::pow(moment_p / cnt, 1.0 / p);

  std::ostringstream detail;
  detail << "moment comparison over " << count << " sign vectors, p=" << p
         << " q=" << q;
  return make_result(lhs, rhs, detail.str());
}

CheckResult ustat_permutation_check(const Eigen::MatrixXd& values, int n) {
  if (n != 4 && n != 6) {
    throw std::invalid_argument("ustat_permutation_check: n must be 4 or 6");
  }
  if (values.rows() != n || values.cols() != n) {
    throw std::invalid_argument("ustat_permutation_check: table size mismatch");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (values(i, j) != values(j, i)) {
        throw std::invalid_argument("ustat_permutation_check: table not symmetric");
      }
    }
  }

  const int m = n / 2;
  double u_stat = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) u_stat += values(i, j);
  u_stat /= static_cast<double>(n) * static_cast<double>(n - 1);

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  double perm_sum = 0.0;
  std::uint64_t perm_count = 0;
  do {
    double block = 0.0;
    for (int i = 0; i < m; ++i) {
      block += values(perm[static_cast<std::size_t>(i)],
                      perm[static_cast<std::size_t>(m + i)]);
    }
    perm_sum += block / static_cast<double>(m);
    ++perm_count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double perm_avg = perm_sum / static_cast<double>(perm_count);

  // Identity check: report the achieved discrepancy against the 1e-12
  // allowance so that slack keeps its usual meaning.
  std::ostringstream detail;
  detail << "permutation average " << perm_avg << " vs U-statistic " << u_stat
         << " over " << perm_count << " permutations";
  return make_result(std::abs(perm_avg - u_stat), 1e-12, detail.str());
}

CheckResult margin_check(Task task, const Model& model, const Dataset& data,
                         double tol) {
  if (data.size() < 2) {
    throw std::invalid_argument("margin_check: needs at least 2 points");
  }
  const Eigen::Index n = data.size();
  double min_sb = std::numeric_limits<double>::infinity();
  double max_sb = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd xi = data.points().row(i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Eigen::VectorXd xj = data.points().row(j);
      const double sb = score(task, model.m, xi, xj) - model.b;
      min_sb = std::min(min_sb, sb);
      max_sb = std::max(max_sb, sb);
    }
  }
  // Both conditions folded into one violation measure: positive when either
  // margin fails by that amount.
  const double violation = std::max(min_sb - 1.0, -1.0 - max_sb);
  std::ostringstream detail;
  detail << "min[score-b]=" << min_sb << " max[score-b]=" << max_sb
         << " b=" << model.b << " tol=" << tol;
  return make_result(violation, tol, detail.str());
}

}  // namespace msl
