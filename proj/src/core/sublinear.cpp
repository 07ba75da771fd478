#include "stable_meb/sublinear.hpp"

#include <cmath>
#include <string>

#include "stable_meb/coreset.hpp"
#include "stable_meb/errors.hpp"
#include "stable_meb/formulas.hpp"

namespace smeb {

namespace {

TrialReport base_report(std::string_view algorithm, const PointSet& points, const AlgoConfig& cfg,
                        const RngStream& rng) {
  TrialReport r;
  r.algorithm = std::string(algorithm);
  r.seed = rng.seed();
  r.stream = rng.stream_id();
  r.n = points.n();
  r.d = points.d();
  r.cfg = cfg;
  r.target_coverage = points.n();
  return r;
}

std::size_t bisection_calls(std::size_t w) {
  // Open interval (-1, w+1) holds w+1 candidates.
  std::size_t calls = 0;
  for (std::size_t span = w + 2; span > 1; span = (span + 1) / 2) ++calls;
  return calls;
}

}  // namespace

std::size_t alg1_sample_budget(std::size_t d, const AlgoConfig& cfg) {
  return formulas::net_sample_size(d, cfg.beta, cfg.c_net);
}

TrialOutcome alg1_meb(const PointSet& points, const AlgoConfig& cfg, RngStream& rng) {
  validate(cfg);
  const std::size_t m = alg1_sample_budget(points.d(), cfg);
  if (m == 0 || m > kMaxSampleValues / points.d()) {
    throw ConfigError("epsilon-net sample of " + std::to_string(m) + " rows in dimension " +
                      std::to_string(points.d()) + " exceeds the sample memory cap");
  }
  const auto rows = sample_indices(rng, points.n(), m);
  const PointSet sample = points.subset(rows);
  CoresetResult inner = coreset_meb(sample, cfg.epsilon, cfg.s);

  TrialOutcome out;
  out.ball.center = std::move(inner.ball.center);
  out.ball.radius = formulas::net_expansion(cfg.epsilon) * inner.ball.radius;
  out.report = base_report("alg1", points, cfg, rng);
  out.report.radius = out.ball.radius;
  out.report.center_norm = norm(out.ball.center);
  out.report.samples_drawn = m;
  out.report.sample_budget = m;
  out.report.coreset_iterations = inner.state.iterations;
  return out;
}

RadiusRange estimate_radius_range(const PointSet& points, const AlgoConfig& cfg, RngStream& rng) {
  validate(cfg);
  const std::size_t q = formulas::range_sample_size(cfg.beta, cfg.eta, cfg.c_hit);
  RadiusRange range;
  range.p1 = static_cast<Index>(rng.uniform_index(points.n()));
  const auto sample = sample_indices(rng, points.n(), q);
  const IndexDistance far = farthest_in(points, sample, points.row(range.p1));
  range.p2 = far.index;
  range.witness_distance = far.distance;
  range.a = 0.5 * far.distance;
  range.b = far.distance / (1.0 - cfg.epsilon);
  range.samples_drawn = 1 + q;
  return range;
}

std::size_t quick_sample_budget(const AlgoConfig& cfg) {
  return 1 + formulas::range_sample_size(cfg.beta, cfg.eta, cfg.c_hit);
}

Ball quick_meb_from_range(const PointSet& points, const RadiusRange& range, double epsilon) {
  auto c = points.row(range.p1);
  return Ball{{c.begin(), c.end()}, 2.0 / (1.0 - epsilon) * range.witness_distance};
}

Ball quick_meb(const PointSet& points, const AlgoConfig& cfg, RngStream& rng) {
  return quick_meb_from_range(points, estimate_radius_range(points, cfg, rng), cfg.epsilon);
}

std::size_t oracle_sample_budget(const AlgoConfig& cfg) {
  const std::size_t z = formulas::coreset_iteration_cap(cfg.epsilon, cfg.s);
  return 1 + z * formulas::oracle_sample_size(cfg.beta, cfg.eta, z, cfg.c_hit);
}

OracleOutcome oracle_test_h(const PointSet& points, double h, const AlgoConfig& cfg,
                            RngStream& rng) {
  validate(cfg);
  if (!(h > 0.0)) throw ContractViolation("oracle radius h must be > 0");
  const std::size_t z = formulas::coreset_iteration_cap(cfg.epsilon, cfg.s);
  const double xi = formulas::center_accuracy(cfg.epsilon, cfg.s);
  const std::size_t q = formulas::oracle_sample_size(cfg.beta, cfg.eta, z, cfg.c_hit);

  OracleOutcome out;
  ApproxCenterSolver solver(points.d());
  solver.add_point(points.row(static_cast<Index>(rng.uniform_index(points.n()))));
  out.samples_drawn = 1;
  for (std::size_t i = 1; i <= z; ++i) {
    solver.refine(xi);
    const auto center = solver.center();
    const auto sample = sample_indices(rng, points.n(), q);
    out.samples_drawn += q;
    out.iterations_used = i;
    const IndexDistance far = farthest_in(points, sample, center);
    if (far.distance < h) {
      out.yes = true;
      out.center = std::vector<double>(center.begin(), center.end());
      return out;
    }
    solver.add_point(points.row(far.index));
  }
  return out;
}

std::vector<double> search_grid(double a, double epsilon) {
  const std::size_t w = formulas::search_grid_length(epsilon);
  std::vector<double> grid(w + 1);
  for (std::size_t i = 0; i <= w; ++i) {
    grid[i] = std::pow(1.0 + epsilon, static_cast<double>(i)) * (1.0 - epsilon) * a;
  }
  return grid;
}

std::size_t alg2_sample_budget(const AlgoConfig& cfg) {
  const std::size_t w = formulas::search_grid_length(cfg.epsilon);
  AlgoConfig search = cfg;
  search.eta = formulas::search_eta(cfg.eta0, w);
  AlgoConfig last = cfg;
  last.eta = cfg.eta0 / 2.0;
  return quick_sample_budget(cfg) + 2 * bisection_calls(w) * oracle_sample_budget(search) +
         oracle_sample_budget(last);
}

TrialOutcome alg2_meb(const PointSet& points, const AlgoConfig& cfg, RngStream& rng) {
  validate(cfg);
  TrialOutcome out;
  out.report = base_report("alg2", points, cfg, rng);
  out.report.sample_budget = alg2_sample_budget(cfg);

  const RadiusRange range = estimate_radius_range(points, cfg, rng);
  std::size_t samples = range.samples_drawn;
  std::size_t calls = 0;

  const std::size_t w = formulas::search_grid_length(cfg.epsilon);
  out.report.grid_length = w;
  out.report.search_restarted = false;

  auto finish_with_fallback = [&] {
    out.ball = quick_meb_from_range(points, range, cfg.epsilon);
    out.report.fallback = true;
  };

  if (range.witness_distance == 0.0) {
    finish_with_fallback();
  } else {
    const std::vector<double> grid = search_grid(range.a, cfg.epsilon);
    AlgoConfig search_cfg = cfg;
    search_cfg.eta = formulas::search_eta(cfg.eta0, w);

    std::optional<long long> boundary;
    for (int attempt = 0; attempt < 2 && !boundary; ++attempt) {
      // Smallest grid index answering yes; lo is a virtual "no", hi a virtual "yes".
      long long lo = -1;
      auto hi = static_cast<long long>(w) + 1;
      while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        const OracleOutcome o =
            oracle_test_h(points, grid[static_cast<std::size_t>(mid)], search_cfg, rng);
        samples += o.samples_drawn;
        ++calls;
        (o.yes ? hi : lo) = mid;
      }
      if (hi <= static_cast<long long>(w)) {
        boundary = hi - 1;
      } else {
        out.report.search_restarted = true;
      }
    }

    if (!boundary) {
      finish_with_fallback();
    } else {
      out.report.boundary_index = *boundary;
      const double h =
          std::pow(1.0 + cfg.epsilon, static_cast<double>(*boundary + 2)) * range.a;
      AlgoConfig final_cfg = cfg;
      final_cfg.eta = cfg.eta0 / 2.0;
      OracleOutcome o = oracle_test_h(points, h, final_cfg, rng);
      samples += o.samples_drawn;
      ++calls;
      if (o.yes) {
        out.ball.center = std::move(*o.center);
        out.ball.radius = formulas::search_radius_factor(cfg.epsilon) * h;
      } else {
        finish_with_fallback();
      }
    }
  }

  out.report.radius = out.ball.radius;
  out.report.center_norm = norm(out.ball.center);
  out.report.samples_drawn = samples;
  out.report.oracle_calls = calls;
  return out;
}

}  // namespace smeb
