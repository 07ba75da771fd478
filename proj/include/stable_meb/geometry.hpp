#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "stable_meb/rng.hpp"

namespace smeb {

using Index = std::size_t;

/// Immutable n x d matrix of finite doubles, row-major. Every algorithm in the
/// library reads points only through row().
class PointSet {
 public:
  /// Throws ContractViolation unless n >= 1, d >= 1, data.size() == n*d and
  /// every coordinate is finite.
  PointSet(std::size_t n, std::size_t d, std::vector<double> data);

  std::size_t n() const { return n_; }
  std::size_t d() const { return d_; }

  std::span<const double> row(Index i) const { return {data_.data() + i * d_, d_}; }
  std::span<const double> data() const { return data_; }

  /// Copy of the listed rows, in order (duplicates kept).
  PointSet subset(std::span<const Index> rows) const;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> data_;
};

struct Ball {
  std::vector<double> center;
  double radius = 0.0;
};

struct IndexDistance {
  Index index = 0;
  double distance = 0.0;
};

double dist(std::span<const double> p, std::span<const double> q);
double dist_sq(std::span<const double> p, std::span<const double> q);
double norm(std::span<const double> p);

/// Evaluation-only full scan: number of rows within radius * (1 + slack) of the
/// center. Never called from inside the sub-linear algorithms.
std::size_t coverage_count(const PointSet& points, const Ball& ball, double slack);

/// Farthest listed row from c; ties go to the smallest row index.
IndexDistance farthest_in(const PointSet& points, std::span<const Index> indices,
                          std::span<const double> c);

/// Listed row of rank t (1 = farthest) in decreasing distance to c, using
/// expected linear-time selection. Equal distances rank the smaller row index
/// as farther.
IndexDistance kth_farthest(const PointSet& points, std::span<const Index> indices,
                           std::span<const double> c, std::size_t t);

/// m row indices drawn uniformly from [0, n) with replacement.
std::vector<Index> sample_indices(RngStream& rng, std::size_t n, std::size_t m);

}  // namespace smeb
