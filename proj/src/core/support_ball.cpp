#include "support_ball.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <string>

#include "stable_meb/coreset.hpp"
#include "stable_meb/errors.hpp"

namespace smeb::detail {

namespace {

constexpr double kHullTolerance = 1e-9;
constexpr double kRankThreshold = 1e-10;

using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kExactMaxDim + 1,
                                  kExactMaxDim + 1>;
using SmallVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kExactMaxDim + 1, 1>;

void require_tiny(const PointSet& points) {
  if (points.n() > kExactMaxPoints || points.d() > kExactMaxDim) {
    throw ContractViolation("enumeration oracle limited to n <= 16 and d <= 8, got n = " +
                            std::to_string(points.n()) + ", d = " + std::to_string(points.d()));
  }
}

}  // namespace

SupportBallSolver::SupportBallSolver(const PointSet& points)
    : points_(points), n_(points.n()), gram_(points.n() * points.n()) {
  const std::size_t d = points.d();
  std::vector<double> mean(d, 0.0);
  for (Index i = 0; i < n_; ++i) {
    auto p = points.row(i);
    for (std::size_t k = 0; k < d; ++k) mean[k] += p[k];
  }
  for (double& m : mean) m /= static_cast<double>(n_);
  std::vector<double> centered(n_ * d);
  for (Index i = 0; i < n_; ++i) {
    auto p = points.row(i);
    for (std::size_t k = 0; k < d; ++k) centered[i * d + k] = p[k] - mean[k];
  }
  for (Index i = 0; i < n_; ++i) {
    for (Index j = i; j < n_; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += centered[i * d + k] * centered[j * d + k];
      gram_[i * n_ + j] = s;
      gram_[j * n_ + i] = s;
    }
    scale_sq_ = std::max(scale_sq_, gram_[i * n_ + i]);
  }
}

SupportBall SupportBallSolver::solve(std::span<const Index> support) const {
  SupportBall out;
  if (support.empty()) return out;
  const std::size_t k = support.size() - 1;
  if (k == 0) {
    out.valid = out.full_rank = true;
    return out;
  }
  const Index p0 = support[0];
  SmallMatrix vv(k, k);
  SmallVector rhs(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      const Index i = support[a + 1];
      const Index j = support[b + 1];
      const double g = gram(i, j) - gram(i, p0) - gram(p0, j) + gram(p0, p0);
      vv(a, b) = g;
      vv(b, a) = g;
    }
    rhs(a) = vv(a, a);
  }
  Eigen::FullPivLU<SmallMatrix> lu(2.0 * vv);
  lu.setThreshold(kRankThreshold);
  if (lu.rank() < static_cast<Eigen::Index>(k)) return out;
  out.full_rank = true;
  const SmallVector lambda = lu.solve(rhs);
  out.radius_sq = std::max(0.0, lambda.dot(vv * lambda));
  out.lambda.assign(lambda.data(), lambda.data() + k);
  double first = 1.0;
  bool inside = true;
  for (double l : out.lambda) {
    first -= l;
    if (l < -kHullTolerance) inside = false;
  }
  if (first < -kHullTolerance) inside = false;
  out.valid = inside;
  return out;
}

double SupportBallSolver::dist_sq_to_center(Index p, std::span<const Index> support,
                                            const SupportBall& ball) const {
  const Index p0 = support[0];
  double d2 = gram(p, p) - 2.0 * gram(p, p0) + gram(p0, p0);
  for (std::size_t j = 0; j < ball.lambda.size(); ++j) {
    const Index v = support[j + 1];
    const double w = gram(p, v) - gram(p, p0) - gram(p0, v) + gram(p0, p0);
    d2 -= 2.0 * ball.lambda[j] * w;
  }
  return d2 + ball.radius_sq;
}

std::vector<double> SupportBallSolver::center(std::span<const Index> support,
                                              const SupportBall& ball) const {
  auto base = points_.row(support[0]);
  std::vector<double> c(base.begin(), base.end());
  for (std::size_t j = 0; j < ball.lambda.size(); ++j) {
    auto v = points_.row(support[j + 1]);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += ball.lambda[j] * (v[k] - base[k]);
  }
  return c;
}

std::vector<Index> mask_to_rows(std::uint32_t mask, std::size_t n) {
  std::vector<Index> rows;
  for (Index i = 0; i < n; ++i) {
    if (mask & (std::uint32_t{1} << i)) rows.push_back(i);
  }
  return rows;
}

SubsetRadiusTable::SubsetRadiusTable(const PointSet& points)
    : n_(points.n()), table_(std::size_t{1} << points.n(), 0.0) {
  require_tiny(points);
  const SupportBallSolver solver(points);
  const int max_support = static_cast<int>(std::min(points.n(), points.d() + 1));
  const std::uint32_t full = full_mask();
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) > max_support) continue;
    const auto rows = mask_to_rows(mask, n_);
    const SupportBall ball = solver.solve(rows);
    if (ball.valid) table_[mask] = ball.radius_sq;
  }
  // Rad(Q) is the largest Rad(S) over supports S inside Q: max over submasks.
  for (std::size_t bit = 0; bit < n_; ++bit) {
    const std::uint32_t b = std::uint32_t{1} << bit;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      if (mask & b) table_[mask] = std::max(table_[mask], table_[mask ^ b]);
    }
  }
}

}  // namespace smeb::detail
