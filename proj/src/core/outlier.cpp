#include "stable_meb/outlier.hpp"

#include <cmath>
#include <string>

#include "stable_meb/errors.hpp"
#include "stable_meb/formulas.hpp"

namespace smeb {

OutlierWitness outlier_plan(const OutlierConfig& cfg) {
  validate(cfg);
  OutlierWitness plan;
  plan.sample_size = formulas::outlier_sample_size(cfg.gamma, cfg.beta, cfg.eta, cfg.c_out);
  plan.rank = formulas::outlier_rank(cfg.gamma, cfg.beta, plan.sample_size);
  plan.rank_proof = formulas::outlier_rank_proof(cfg.gamma, cfg.beta, plan.sample_size);
  const double m = static_cast<double>(plan.sample_size);
  const double t = static_cast<double>(plan.rank);
  const double sigma = formulas::outlier_sigma(cfg.gamma, cfg.beta);
  const bool in_window = (1.0 + 2.0 * sigma) * cfg.gamma * m < t + 1e-9 * m &&
                         t <= (1.0 - sigma) * (cfg.gamma + cfg.beta) * m + 1.0 + 1e-9 * m;
  if (plan.rank > plan.sample_size || !in_window) {
    throw ConfigError("outlier rank t = " + std::to_string(plan.rank) +
                      " is unusable for sample size m = " + std::to_string(plan.sample_size));
  }
  return plan;
}

OutlierWitness outlier_radius_witness(const PointSet& points, const OutlierConfig& cfg,
                                      RngStream& rng) {
  OutlierWitness w = outlier_plan(cfg);
  RadiusRange& range = w.range;
  range.p1 = static_cast<Index>(rng.uniform_index(points.n()));
  const auto sample = sample_indices(rng, points.n(), w.sample_size);
  const IndexDistance sel = kth_farthest(points, sample, points.row(range.p1), w.rank);
  range.p2 = sel.index;
  range.witness_distance = sel.distance;
  range.a = 0.5 * sel.distance;
  range.b = sel.distance / (1.0 - cfg.epsilon);
  range.samples_drawn = 1 + w.sample_size;
  return w;
}

std::size_t outlier_target_coverage(std::size_t n, double gamma) {
  return formulas::ceil_count((1.0 - gamma) * static_cast<double>(n));
}

TrialOutcome meb_outliers_sublinear(const PointSet& points, const OutlierConfig& cfg,
                                    RngStream& rng) {
  const OutlierWitness w = outlier_radius_witness(points, cfg, rng);
  TrialOutcome out;
  out.ball = quick_meb_from_range(points, w.range, cfg.epsilon);

  TrialReport& r = out.report;
  r.algorithm = "outlier";
  r.seed = rng.seed();
  r.stream = rng.stream_id();
  r.n = points.n();
  r.d = points.d();
  r.cfg.epsilon = cfg.epsilon;
  r.cfg.beta = cfg.beta;
  r.cfg.eta = cfg.eta;
  r.outlier_cfg = cfg;
  r.radius = out.ball.radius;
  r.center_norm = norm(out.ball.center);
  r.samples_drawn = w.range.samples_drawn;
  r.sample_budget = 1 + w.sample_size;
  r.target_coverage = outlier_target_coverage(points.n(), cfg.gamma);
  r.outlier_sample_size = w.sample_size;
  r.outlier_rank = w.rank;
  r.outlier_rank_proof = w.rank_proof;
  return out;
}

}  // namespace smeb
