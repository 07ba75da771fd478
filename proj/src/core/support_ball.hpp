#pragma once

// Circumscribed balls of small support subsets, shared by the exact
// enclosing-ball oracle and the subset-radius table of the stability lab.

#include <cstdint>
#include <span>
#include <vector>

#include "stable_meb/geometry.hpp"

namespace smeb::detail {

struct SupportBall {
  bool valid = false;            // affinely independent and center inside conv(S)
  bool full_rank = false;
  double radius_sq = 0.0;
  std::vector<double> lambda;    // c = p0 + sum_j lambda_j (p_j - p0)
};

/// Precomputes the Gram matrix of the centered point set so that the
/// circumscribed ball of any support subset costs O(k^3) and checking a
/// point against it costs O(k).
class SupportBallSolver {
 public:
  explicit SupportBallSolver(const PointSet& points);

  std::size_t n() const { return n_; }

  /// Smallest ball with every listed row on its boundary, restricted to the
  /// affine hull of the rows.
  SupportBall solve(std::span<const Index> support) const;

  /// Squared distance from row p to the center described by (support, ball).
  double dist_sq_to_center(Index p, std::span<const Index> support, const SupportBall& ball) const;

  /// Center coordinates in the original frame.
  std::vector<double> center(std::span<const Index> support, const SupportBall& ball) const;

  double scale_sq() const { return scale_sq_; }

 private:
  double gram(Index i, Index j) const { return gram_[i * n_ + j]; }

  const PointSet& points_;
  std::size_t n_;
  std::vector<double> gram_;
  double scale_sq_ = 0.0;
};

/// Rad(S)^2 for every subset S of a tiny point set, indexed by bitmask.
class SubsetRadiusTable {
 public:
  explicit SubsetRadiusTable(const PointSet& points);

  double radius_sq(std::uint32_t mask) const { return table_[mask]; }
  std::uint32_t full_mask() const { return (std::uint32_t{1} << n_) - 1; }
  std::size_t n() const { return n_; }

 private:
  std::size_t n_;
  std::vector<double> table_;
};

std::vector<Index> mask_to_rows(std::uint32_t mask, std::size_t n);

}  // namespace smeb::detail
