#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stable_meb/geometry.hpp"

namespace smeb {

/// Incremental approximate enclosing-ball center for a growing point list.
///
/// Keeps convex weights over the added points (the dual of the enclosing-ball
/// problem) and moves them with Frank-Wolfe toward and away steps using exact
/// line search. For weights u with center c = sum u_i t_i, the value
/// phi = sum u_i |t_i - c|^2 is a lower bound on the squared exact radius r*^2
/// and R = max_i |t_i - c| satisfies |c - c*|^2 <= R^2 - r*^2. refine() stops
/// once R^2 <= (1 + xi^2) phi, which certifies |c - c*| <= xi * r*.
/// Points added later start with zero weight, so refining after each addition
/// reuses the previous solution.
class ApproxCenterSolver {
 public:
  explicit ApproxCenterSolver(std::size_t dim);

  void add_point(std::span<const double> p);

  /// Returns true when the xi certificate holds. The step budget per call is
  /// 4 * ceil(1/xi^2); on exhaustion the best-effort center is kept.
  bool refine(double xi);

  std::size_t size() const { return count_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> center() const { return center_; }
  /// Distance from the center to the farthest added point.
  double max_distance() const;
  /// sqrt(phi); never exceeds the exact radius of the added points.
  double radius_lower_bound() const;
  std::size_t steps_taken() const { return steps_; }

 private:
  void recompute();

  std::size_t dim_;
  std::size_t count_ = 0;
  std::vector<double> points_;   // count_ x dim_, row-major
  std::vector<double> weights_;
  std::vector<double> center_;
  std::vector<double> dist_sq_;
  double phi_ = 0.0;
  double max_dist_sq_ = 0.0;
  std::size_t steps_ = 0;
};

/// Center within xi * r* of the exact enclosing-ball center of rows T.
/// Requires T nonempty and 0 < xi < 1.
std::vector<double> approx_center(const PointSet& points, std::span<const Index> rows, double xi);

struct CoresetState {
  std::vector<Index> coreset;        // T, in insertion order
  std::vector<double> center;        // o_i of the last iteration
  std::size_t iterations = 0;        // growth steps performed (|T| - 1)
  std::size_t iteration_cap = 0;     // z = ceil(2/((1-s) eps))
  double s = 0.0;
  double xi = 0.0;
  bool certified = false;            // stopped by the (1+eps) certificate
  std::vector<double> farthest_history;     // full-scan farthest distance per iteration
  std::vector<double> lower_bound_history;  // certified lower bound on Rad(T) per iteration
};

struct CoresetResult {
  Ball ball;
  CoresetState state;
};

/// Full-pass (1+eps)-approximate enclosing ball by core-set growth with
/// approximate centers (xi = s*eps/(1+eps)). T starts at row 0; each iteration
/// adds the point of P farthest from the current center. Stops when the
/// farthest distance is within (1+eps) of a certified lower bound on Rad(T),
/// or after z growth steps. The returned ball is the best center seen with
/// radius equal to its farthest distance, so it always covers P.
CoresetResult coreset_meb(const PointSet& points, double epsilon, double s = 1.0 / 3.0);

/// Exact enclosing ball of a tiny set (n <= 16, d <= 8) by enumerating support
/// subsets of size 1..d+1 and keeping the smallest circumscribed ball that
/// covers every point.
Ball exact_meb_small(const PointSet& points);

inline constexpr std::size_t kExactMaxPoints = 16;
inline constexpr std::size_t kExactMaxDim = 8;

}  // namespace smeb
