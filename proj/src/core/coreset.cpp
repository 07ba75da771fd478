#include "stable_meb/coreset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stable_meb/errors.hpp"
#include "stable_meb/formulas.hpp"
#include "support_ball.hpp"

namespace smeb {

ApproxCenterSolver::ApproxCenterSolver(std::size_t dim) : dim_(dim), center_(dim, 0.0) {
  if (dim == 0) throw ContractViolation("center solver needs dimension >= 1");
}

void ApproxCenterSolver::add_point(std::span<const double> p) {
  if (p.size() != dim_) throw ContractViolation("center solver: dimension mismatch");
  points_.insert(points_.end(), p.begin(), p.end());
  weights_.push_back(count_ == 0 ? 1.0 : 0.0);
  dist_sq_.push_back(0.0);
  ++count_;
  recompute();
}

void ApproxCenterSolver::recompute() {
  std::fill(center_.begin(), center_.end(), 0.0);
  for (std::size_t i = 0; i < count_; ++i) {
    const double w = weights_[i];
    if (w == 0.0) continue;
    const double* t = points_.data() + i * dim_;
    for (std::size_t k = 0; k < dim_; ++k) center_[k] += w * t[k];
  }
  phi_ = 0.0;
  max_dist_sq_ = 0.0;
  for (std::size_t i = 0; i < count_; ++i) {
    const double* t = points_.data() + i * dim_;
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      const double diff = t[k] - center_[k];
      s += diff * diff;
    }
    dist_sq_[i] = s;
    phi_ += weights_[i] * s;
    max_dist_sq_ = std::max(max_dist_sq_, s);
  }
}

bool ApproxCenterSolver::refine(double xi) {
  if (count_ == 0) throw ContractViolation("center solver has no points");
  if (!(xi > 0.0 && xi < 1.0)) throw ContractViolation("center accuracy must lie in (0, 1)");
  const double target = xi * xi;
  const double budget = 4.0 * std::ceil(1.0 / target);
  const std::size_t max_steps =
      budget > 1e9 ? std::size_t{1'000'000'000} : static_cast<std::size_t>(budget);

  for (std::size_t step = 0;; ++step) {
    if (max_dist_sq_ == 0.0) return true;
    if (phi_ > 0.0 && max_dist_sq_ <= (1.0 + target) * phi_) return true;
    if (step >= max_steps) return false;

    std::size_t toward = 0;
    std::size_t away = count_;
    for (std::size_t i = 0; i < count_; ++i) {
      if (dist_sq_[i] > dist_sq_[toward]) toward = i;
      if (weights_[i] > 0.0 && (away == count_ || dist_sq_[i] < dist_sq_[away])) away = i;
    }
    const double gain_toward = phi_ > 0.0 ? max_dist_sq_ / phi_ - 1.0 : 1.0;
    const double gain_away = phi_ > 0.0 ? 1.0 - dist_sq_[away] / phi_ : 0.0;

    if (gain_toward >= gain_away || weights_[away] >= 1.0) {
      const double lambda = (max_dist_sq_ - phi_) / (2.0 * max_dist_sq_);
      for (double& w : weights_) w *= 1.0 - lambda;
      weights_[toward] += lambda;
    } else {
      const double u = weights_[away];
      const double drop = u / (1.0 - u);
      const double line = gain_away / (2.0 * (1.0 - gain_away));
      const double lambda = std::min(line, drop);
      for (double& w : weights_) w *= 1.0 + lambda;
      weights_[away] = lambda >= drop ? 0.0 : weights_[away] - lambda;
    }
    ++steps_;
    recompute();
  }
}

double ApproxCenterSolver::max_distance() const { return std::sqrt(max_dist_sq_); }

double ApproxCenterSolver::radius_lower_bound() const { return std::sqrt(std::max(0.0, phi_)); }

std::vector<double> approx_center(const PointSet& points, std::span<const Index> rows, double xi) {
  if (rows.empty()) throw ContractViolation("approx_center over an empty index list");
  ApproxCenterSolver solver(points.d());
  for (Index r : rows) {
    if (r >= points.n()) throw ContractViolation("row index out of range");
    solver.add_point(points.row(r));
  }
  solver.refine(xi);
  auto c = solver.center();
  return {c.begin(), c.end()};
}

CoresetResult coreset_meb(const PointSet& points, double epsilon, double s) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ConfigError("coreset epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
  if (!(s > 0.0 && s < 1.0)) {
    throw ConfigError("coreset s must lie in (0, 1), got " + std::to_string(s));
  }
  CoresetResult result;
  CoresetState& state = result.state;
  state.s = s;
  state.xi = formulas::center_accuracy(epsilon, s);
  state.iteration_cap = formulas::coreset_iteration_cap(epsilon, s);

  ApproxCenterSolver solver(points.d());
  solver.add_point(points.row(0));
  state.coreset.push_back(0);

  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    solver.refine(state.xi);
    const auto center = solver.center();

    // Full scan for the farthest point; ties go to the smallest row.
    Index far_row = 0;
    double far_sq = -1.0;
    for (Index i = 0; i < points.n(); ++i) {
      const double d2 = dist_sq(points.row(i), center);
      if (d2 > far_sq) {
        far_sq = d2;
        far_row = i;
      }
    }
    const double far = std::sqrt(far_sq);
    const double lower = solver.radius_lower_bound();
    state.farthest_history.push_back(far);
    state.lower_bound_history.push_back(lower);
    state.center.assign(center.begin(), center.end());
    if (far < best) {
      best = far;
      result.ball.center.assign(center.begin(), center.end());
      result.ball.radius = far;
    }
    if (far == 0.0 || far <= (1.0 + epsilon) * lower) {
      state.certified = true;
      break;
    }
    if (state.iterations >= state.iteration_cap) break;
    solver.add_point(points.row(far_row));
    state.coreset.push_back(far_row);
    ++state.iterations;
  }
  return result;
}

Ball exact_meb_small(const PointSet& points) {
  if (points.n() > kExactMaxPoints || points.d() > kExactMaxDim) {
    throw ContractViolation("exact_meb_small limited to n <= 16 and d <= 8, got n = " +
                            std::to_string(points.n()) + ", d = " + std::to_string(points.d()));
  }
  const detail::SupportBallSolver solver(points);
  const std::size_t n = points.n();
  const std::size_t max_support = std::min(n, points.d() + 1);
  const double abs_slack = 1e-18 * std::max(solver.scale_sq(), 1e-300);

  double best_sq = std::numeric_limits<double>::infinity();
  std::vector<Index> best_support;
  detail::SupportBall best_ball;

  // Enumerate supports of each size in lexicographic order.
  for (std::size_t size = 1; size <= max_support; ++size) {
    std::vector<Index> support(size);
    for (std::size_t k = 0; k < size; ++k) support[k] = k;
    for (;;) {
      const detail::SupportBall ball = solver.solve(support);
      if (ball.valid && ball.radius_sq < best_sq) {
        const double limit = ball.radius_sq * (1.0 + 1e-9) * (1.0 + 1e-9) + abs_slack;
        bool covers = true;
        for (Index p = 0; p < n && covers; ++p) {
          covers = solver.dist_sq_to_center(p, support, ball) <= limit;
        }
        if (covers) {
          best_sq = ball.radius_sq;
          best_support = support;
          best_ball = ball;
        }
      }
      // Next combination.
      std::size_t pos = size;
      while (pos > 0 && support[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++support[pos - 1];
      for (std::size_t k = pos; k < size; ++k) support[k] = support[k - 1] + 1;
    }
  }
  Ball out;
  out.center = solver.center(best_support, best_ball);
  double r_sq = 0.0;
  for (Index p = 0; p < n; ++p) r_sq = std::max(r_sq, dist_sq(points.row(p), out.center));
  out.radius = std::sqrt(r_sq);
  return out;
}

}  // namespace smeb
