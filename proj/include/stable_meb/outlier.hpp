#pragma once

#include <cstddef>

#include "stable_meb/config.hpp"
#include "stable_meb/geometry.hpp"
#include "stable_meb/sublinear.hpp"

namespace smeb {

struct OutlierWitness {
  RadiusRange range;
  std::size_t sample_size = 0;  // m
  std::size_t rank = 0;         // t = floor((2g+2b)/(2g+b) g m) + 1
  std::size_t rank_proof = 0;   // floor((1+sigma) g m) + 1, recorded only
};

/// Sample size m and selection rank t for a config. Throws ConfigError when
/// t > m or the ranks leave the window (1+2sigma) g m < t <= (1-sigma)(g+b) m + 1.
OutlierWitness outlier_plan(const OutlierConfig& cfg);

/// p1 uniform, m uniform samples Q, p2 = t-th farthest of Q from p1; returns
/// [|p1-p2|/2, |p1-p2|/(1-eps)] as a range for the optimal inlier radius.
OutlierWitness outlier_radius_witness(const PointSet& points, const OutlierConfig& cfg,
                                      RngStream& rng);

/// B(p1, 2/(1-eps) |p1-p2|), aiming to cover (1-gamma)n points.
TrialOutcome meb_outliers_sublinear(const PointSet& points, const OutlierConfig& cfg,
                                    RngStream& rng);

/// ceil((1-gamma) n).
std::size_t outlier_target_coverage(std::size_t n, double gamma);

}  // namespace smeb
