#include "stable_meb/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stable_meb/errors.hpp"

namespace smeb {

PointSet::PointSet(std::size_t n, std::size_t d, std::vector<double> data)
    : n_(n), d_(d), data_(std::move(data)) {
  if (n_ == 0 || d_ == 0) throw ContractViolation("point set needs n >= 1 and d >= 1");
  if (data_.size() != n_ * d_) {
    throw ContractViolation("point set data has " + std::to_string(data_.size()) +
                            " values, expected n*d = " + std::to_string(n_ * d_));
  }
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!std::isfinite(data_[k])) {
      throw ContractViolation("non-finite coordinate at row " + std::to_string(k / d_) +
                              ", column " + std::to_string(k % d_));
    }
  }
}

PointSet PointSet::subset(std::span<const Index> rows) const {
  if (rows.empty()) throw ContractViolation("subset of zero rows");
  std::vector<double> out;
  out.reserve(rows.size() * d_);
  for (Index r : rows) {
    if (r >= n_) throw ContractViolation("row index out of range");
    auto p = row(r);
    out.insert(out.end(), p.begin(), p.end());
  }
  return PointSet(rows.size(), d_, std::move(out));
}

double dist_sq(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw ContractViolation("dimension mismatch: " + std::to_string(p.size()) + " vs " +
                            std::to_string(q.size()));
  }
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double t = p[k] - q[k];
    s += t * t;
  }
  return s;
}

double dist(std::span<const double> p, std::span<const double> q) {
  return std::sqrt(dist_sq(p, q));
}

double norm(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) s += x * x;
  return std::sqrt(s);
}

std::size_t coverage_count(const PointSet& points, const Ball& ball, double slack) {
  if (ball.center.size() != points.d()) throw ContractViolation("ball dimension mismatch");
  if (slack < 0.0) throw ContractViolation("coverage slack must be >= 0");
  const double limit = ball.radius * (1.0 + slack);
  const double limit_sq = limit * limit;
  std::size_t count = 0;
  for (Index i = 0; i < points.n(); ++i) {
    if (dist_sq(points.row(i), ball.center) <= limit_sq) ++count;
  }
  return count;
}

IndexDistance farthest_in(const PointSet& points, std::span<const Index> indices,
                          std::span<const double> c) {
  if (indices.empty()) throw ContractViolation("farthest_in over an empty index list");
  IndexDistance best{indices[0], -1.0};
  for (Index i : indices) {
    if (i >= points.n()) throw ContractViolation("row index out of range");
    const double d2 = dist_sq(points.row(i), c);
    if (d2 > best.distance || (d2 == best.distance && i < best.index)) best = {i, d2};
  }
  best.distance = std::sqrt(best.distance);
  return best;
}

IndexDistance kth_farthest(const PointSet& points, std::span<const Index> indices,
                           std::span<const double> c, std::size_t t) {
  if (t < 1 || t > indices.size()) {
    throw ContractViolation("rank t = " + std::to_string(t) + " outside [1, " +
                            std::to_string(indices.size()) + "]");
  }
  std::vector<IndexDistance> ranked;
  ranked.reserve(indices.size());
  for (Index i : indices) {
    if (i >= points.n()) throw ContractViolation("row index out of range");
    ranked.push_back({i, dist_sq(points.row(i), c)});
  }
  auto farther = [](const IndexDistance& a, const IndexDistance& b) {
    return a.distance > b.distance || (a.distance == b.distance && a.index < b.index);
  };
  std::nth_element(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(t - 1),
                   ranked.end(), farther);
  IndexDistance out = ranked[t - 1];
  out.distance = std::sqrt(out.distance);
  return out;
}

std::vector<Index> sample_indices(RngStream& rng, std::size_t n, std::size_t m) {
  if (n == 0) throw ContractViolation("cannot sample from zero rows");
  std::vector<Index> out(m);
  for (auto& idx : out) idx = static_cast<Index>(rng.uniform_index(n));
  return out;
}

}  // namespace smeb
