#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stable_meb/geometry.hpp"

namespace smeb {

enum class Family { UniformBall, Gaussian, RegularSimplex, PlantedOutliers };

std::string_view family_name(Family f);
/// Accepts the canonical names plus "simplex" and "planted".
Family parse_family(std::string_view name);

struct InstanceSpec {
  Family family = Family::UniformBall;
  std::size_t n = 1000;
  std::size_t d = 2;
  double gamma = 0.0;            // outlier fraction, planted-outliers only
  double outlier_spread = 10.0;  // outlier distance in units of the inlier radius
  std::uint64_t seed = 0;
};

/// Throws ConfigError on an invalid spec (gamma*n not integral for planted
/// outliers, spread < 1, zero sizes, ...).
void validate(const InstanceSpec& spec);

struct GeneratedInstance {
  PointSet points;
  std::optional<std::vector<Index>> inliers;  // sorted; planted-outliers only
};

/// Deterministic given spec.seed.
///  - uniform-ball: radial method, direction = normalized Gaussian vector and
///    radius = U^(1/d), inside the unit ball.
///  - gaussian: i.i.d. standard normal coordinates.
///  - regular-simplex: the d+1 vertices of a unit-edge simplex in R^d
///    (n is ignored).
///  - planted-outliers: (1-gamma)n uniform-ball inliers and gamma*n points at
///    distance outlier_spread in uniform random directions, rows shuffled.
GeneratedInstance generate(const InstanceSpec& spec);

struct OutlierSolution {
  Ball ball;
  std::vector<Index> kept;  // sorted row indices of the optimal subset
};

/// Exact MEB with k_remove outliers on a tiny set (n <= 16, d <= 8) by
/// enumerating every subset of size n - k_remove. Ties in radius go to the
/// lexicographically smallest index set.
OutlierSolution brute_meb_outliers(const PointSet& points, std::size_t k_remove);

struct StabilityReport {
  double epsilon = 0.0;
  std::size_t m_star = 0;  // fewest removals that push the radius below (1-eps) Rad(P)
  double beta_max = 0.0;   // (m_star - 1) / n
  double base_radius = 0.0;
};

StabilityReport stability_coefficient(const PointSet& points, double epsilon);

/// True when the set with the given removal budget is beta-stable, i.e.
/// beta * n <= m_star - 1.
bool is_stable(const StabilityReport& report, double beta, std::size_t n);

/// Brute-force check that the optimal inlier set of a beta-stable outlier
/// instance (P, gamma) is a beta/(1-gamma)-stable MEB instance. gamma * n must
/// be an integer.
bool check_outlier_stability_claim(const PointSet& points, double gamma, double epsilon);

}  // namespace smeb
