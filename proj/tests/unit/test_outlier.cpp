#include <doctest.h>

#include <vector>

#include "stable_meb/errors.hpp"
#include "stable_meb/outlier.hpp"
#include "stable_meb/stability.hpp"

using namespace smeb;

TEST_CASE("outlier plan") {
  OutlierConfig cfg;
  cfg.gamma = 0.1;
  cfg.beta = 0.05;
  cfg.eta = 0.1;
  const OutlierWitness w = outlier_plan(cfg);
  CHECK(w.sample_size == 1152);
  CHECK(w.rank == 139);  // floor(1.2 * 0.1 * 1152) + 1
  CHECK(w.rank_proof == 127);  // floor(1.1 * 0.1 * 1152) + 1

  cfg.gamma = 0.0;
  CHECK_THROWS_AS(outlier_plan(cfg), ConfigError);
  cfg.gamma = 0.7;
  cfg.beta = 0.3;
  CHECK_THROWS_AS(outlier_plan(cfg), ConfigError);
}

TEST_CASE("target coverage rounds up") {
  CHECK(outlier_target_coverage(100, 0.1) == 90);
  CHECK(outlier_target_coverage(10, 0.25) == 8);
  CHECK(outlier_target_coverage(12, 1.0 / 6) == 10);
}

TEST_CASE("identical points") {
  const PointSet same(20, 2, std::vector<double>(40, -1.0));
  OutlierConfig cfg;
  RngStream rng(1, 1);
  const TrialOutcome out = meb_outliers_sublinear(same, cfg, rng);
  CHECK(out.ball.radius == 0.0);
  CHECK(coverage_count(same, out.ball, 0.0) == 20);
  CHECK(out.report.samples_drawn == 1 + out.report.outlier_sample_size.value());
  CHECK(out.report.target_coverage == 18);
}

TEST_CASE("witness radius relation") {
  InstanceSpec spec;
  spec.family = Family::PlantedOutliers;
  spec.n = 1000;
  spec.d = 4;
  spec.gamma = 0.1;
  spec.seed = 3;
  const PointSet p = generate(spec).points;
  OutlierConfig cfg;
  cfg.epsilon = 0.2;
  RngStream rng(4, 0);
  const OutlierWitness w = outlier_radius_witness(p, cfg, rng);
  CHECK(w.range.a == doctest::Approx(w.range.witness_distance / 2));
  CHECK(w.range.b == doctest::Approx(w.range.witness_distance / 0.8));
  RngStream again(4, 0);
  const TrialOutcome out = meb_outliers_sublinear(p, cfg, again);
  CHECK(out.ball.radius == doctest::Approx(2.5 * w.range.witness_distance));
}

TEST_CASE("tiny planted instances against the brute-force optimum") {
  // n = 12, gamma = 1/6: two outliers; 300 trials.
  OutlierConfig cfg;
  cfg.gamma = 1.0 / 6;
  cfg.beta = 0.05;
  cfg.epsilon = 0.2;
  cfg.eta = 0.1;
  InstanceSpec spec;
  spec.family = Family::PlantedOutliers;
  spec.n = 12;
  spec.d = 3;
  spec.gamma = cfg.gamma;
  spec.seed = 21;
  const PointSet p = generate(spec).points;
  const double opt = brute_meb_outliers(p, 2).ball.radius;
  int ok = 0;
  for (std::uint64_t s = 0; s < 300; ++s) {
    RngStream rng(99, s);
    const TrialOutcome out = meb_outliers_sublinear(p, cfg, rng);
    ok += coverage_count(p, out.ball, 1e-9) >= 10 && out.ball.radius <= 4.0 / 0.8 * opt;
  }
  const double p_need = (1 - cfg.eta) * (1 - cfg.gamma);
  CHECK(static_cast<double>(ok) / 300 >= p_need - 2.576 * std::sqrt(p_need * (1 - p_need) / 300));
}
