#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stable_meb/config.hpp"
#include "stable_meb/geometry.hpp"
#include "stable_meb/report.hpp"

namespace smeb {

struct TrialOutcome {
  Ball ball;
  TrialReport report;
};

/// Interval [a, b] bracketing an enclosing radius, built from two witness rows.
struct RadiusRange {
  double a = 0.0;  // witness_distance / 2
  double b = 0.0;  // witness_distance / (1 - eps)
  Index p1 = 0;
  Index p2 = 0;
  double witness_distance = 0.0;
  std::size_t samples_drawn = 0;
};

struct OracleOutcome {
  bool yes = false;
  std::optional<std::vector<double>> center;  // present on yes
  std::size_t iterations_used = 0;
  std::size_t samples_drawn = 0;
};

/// Sample ceil(c_net (d/beta) ln(d/beta + e)) rows, take a (1+eps)-approximate
/// core-set ball B(c, r) of the sample and return B(c, expansion * r) with
/// expansion = (1+(2+sqrt2)sqrt(eps))/(1-eps). Reads only the sampled rows.
TrialOutcome alg1_meb(const PointSet& points, const AlgoConfig& cfg, RngStream& rng);

/// p1 uniform, Q of ceil(c_hit (1/beta) ln(1/eta)) uniform rows, p2 farthest
/// of Q from p1; returns [|p1-p2|/2, |p1-p2|/(1-eps)].
RadiusRange estimate_radius_range(const PointSet& points, const AlgoConfig& cfg, RngStream& rng);

/// B(p1, 2/(1-eps) * witness distance).
Ball quick_meb_from_range(const PointSet& points, const RadiusRange& range, double epsilon);
Ball quick_meb(const PointSet& points, const AlgoConfig& cfg, RngStream& rng);

/// Randomized test of a candidate radius h: grow a core-set from a random row,
/// each round sampling ceil(c_hit (1/beta) ln(z/eta)) rows and adding the
/// farthest one, answering yes as soon as that farthest sample lies within h
/// of the approximate center and no after z rounds.
OracleOutcome oracle_test_h(const PointSet& points, double h, const AlgoConfig& cfg,
                            RngStream& rng);

/// Grid value (1+eps)^i (1-eps) a for i = 0..w.
std::vector<double> search_grid(double a, double epsilon);

/// Binary search over the radius grid with the oracle, a final oracle call at
/// h = (1+eps)^(i0+2) a, and output B(center, factor * h). Falls back to the
/// two-point ball (and marks the report) when the search or final call fails.
TrialOutcome alg2_meb(const PointSet& points, const AlgoConfig& cfg, RngStream& rng);

/// Upper bound on rows read per algorithm for this cfg, independent of n.
std::size_t alg1_sample_budget(std::size_t d, const AlgoConfig& cfg);
std::size_t quick_sample_budget(const AlgoConfig& cfg);
std::size_t oracle_sample_budget(const AlgoConfig& cfg);
std::size_t alg2_sample_budget(const AlgoConfig& cfg);

/// Largest sample matrix (rows * d) the epsilon-net algorithm will allocate.
inline constexpr std::size_t kMaxSampleValues = std::size_t{1} << 28;

}  // namespace smeb
