#include "stable_meb/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <json.hpp>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "stable_meb/coreset.hpp"
#include "stable_meb/errors.hpp"
#include "stable_meb/formulas.hpp"
#include "stable_meb/outlier.hpp"
#include "stable_meb/stability.hpp"

namespace smeb {

std::string_view reference_mode_name(ReferenceMode m) {
  switch (m) {
    case ReferenceMode::None: return "none";
    case ReferenceMode::CoresetHighPrec: return "coreset-highprec";
    case ReferenceMode::GroundTruth: return "ground-truth";
    case ReferenceMode::BruteForce: return "brute-force";
  }
  return "unknown";
}

ReferenceMode parse_reference_mode(std::string_view name) {
  if (name == "none") return ReferenceMode::None;
  if (name == "coreset-highprec") return ReferenceMode::CoresetHighPrec;
  if (name == "ground-truth") return ReferenceMode::GroundTruth;
  if (name == "brute-force") return ReferenceMode::BruteForce;
  throw ConfigError("unknown reference mode '" + std::string(name) + "'");
}

Ball reference_ball(const PointSet& points, ReferenceMode mode,
                    const std::optional<std::vector<Index>>& inliers, std::size_t remove_count) {
  switch (mode) {
    case ReferenceMode::None:
      throw ConfigError("reference mode 'none' has no reference ball");
    case ReferenceMode::CoresetHighPrec:
      return coreset_meb(points, kReferenceEpsilon).ball;
    case ReferenceMode::GroundTruth: {
      if (!inliers || inliers->empty()) {
        throw ConfigError("ground-truth reference needs inlier indices in the sidecar");
      }
      for (Index i : *inliers) {
        if (i >= points.n()) throw ConfigError("inlier index out of range");
      }
      return coreset_meb(points.subset(*inliers), kReferenceEpsilon).ball;
    }
    case ReferenceMode::BruteForce: {
      if (points.n() > kExactMaxPoints || points.d() > kExactMaxDim) {
        throw ConfigError("brute-force reference needs n <= 16 and d <= 8");
      }
      if (remove_count == 0) return exact_meb_small(points);
      return brute_meb_outliers(points, remove_count).ball;
    }
  }
  throw ConfigError("unknown reference mode");
}

void validate(const ExperimentPlan& plan) {
  if (plan.trials == 0) throw ConfigError("trials must be >= 1");
  if (plan.algorithm == Algorithm::Outlier) {
    validate(plan.outlier_cfg);
    outlier_plan(plan.outlier_cfg);
  } else {
    validate(plan.cfg);
  }
}

std::size_t reference_remove_count(const ExperimentPlan& plan, std::size_t n) {
  if (plan.algorithm != Algorithm::Outlier) return 0;
  return n - outlier_target_coverage(n, plan.outlier_cfg.gamma);
}

namespace {

TrialOutcome run_algorithm(const PointSet& points, const ExperimentPlan& plan, RngStream& rng) {
  switch (plan.algorithm) {
    case Algorithm::Coreset: {
      validate(plan.cfg);
      CoresetResult res = coreset_meb(points, plan.cfg.epsilon, plan.cfg.s);
      TrialOutcome out;
      out.ball = std::move(res.ball);
      TrialReport& r = out.report;
      r.algorithm = "coreset";
      r.seed = rng.seed();
      r.stream = rng.stream_id();
      r.n = points.n();
      r.d = points.d();
      r.cfg = plan.cfg;
      r.target_coverage = points.n();
      r.samples_drawn = points.n();
      r.sample_budget = points.n();
      r.coreset_iterations = res.state.iterations;
      return out;
    }
    case Algorithm::Alg1:
      return alg1_meb(points, plan.cfg, rng);
    case Algorithm::Quick: {
      validate(plan.cfg);
      const RadiusRange range = estimate_radius_range(points, plan.cfg, rng);
      TrialOutcome out;
      out.ball = quick_meb_from_range(points, range, plan.cfg.epsilon);
      TrialReport& r = out.report;
      r.algorithm = "quick";
      r.seed = rng.seed();
      r.stream = rng.stream_id();
      r.n = points.n();
      r.d = points.d();
      r.cfg = plan.cfg;
      r.target_coverage = points.n();
      r.samples_drawn = range.samples_drawn;
      r.sample_budget = quick_sample_budget(plan.cfg);
      return out;
    }
    case Algorithm::Alg2:
      return alg2_meb(points, plan.cfg, rng);
    case Algorithm::Outlier:
      return meb_outliers_sublinear(points, plan.outlier_cfg, rng);
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace

TrialOutcome run_trial(const PointSet& points, const ExperimentPlan& plan, std::size_t trial,
                       std::optional<double> reference_radius) {
  RngStream rng(plan.base_seed, plan.base_seed + trial);
  const auto start = std::chrono::steady_clock::now();
  TrialOutcome out = run_algorithm(points, plan, rng);
  const auto stop = std::chrono::steady_clock::now();
  TrialReport& r = out.report;
  r.radius = out.ball.radius;
  r.center_norm = norm(out.ball.center);
  r.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  r.coverage_count = coverage_count(points, out.ball, kCoverageSlack);
  if (reference_radius) {
    r.reference_radius = *reference_radius;
    if (*reference_radius > 0.0) {
      r.ratio_vs_reference = out.ball.radius / *reference_radius;
    } else {
      r.ratio_vs_reference = out.ball.radius == 0.0 ? 1.0 : HUGE_VAL;
    }
  }
  return out;
}

std::vector<TrialReport> run_plan(const PointSet& points, const ExperimentPlan& plan,
                                  std::optional<double> reference_radius, std::size_t threads) {
  validate(plan);
  std::vector<TrialReport> reports(plan.trials);
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, plan.trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= plan.trials) return;
      try {
        reports[i] = run_trial(points, plan, i, reference_radius).report;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(plan.trials);
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return reports;
}

std::optional<double> default_ratio_bound(const TrialReport& r) {
  const double eps = r.cfg.epsilon;
  if (r.algorithm == "coreset") return 1.0 + eps;
  if (r.algorithm == "alg1") return formulas::net_ratio(eps);
  if (r.algorithm == "quick") return formulas::quick_ratio(eps);
  if (r.algorithm == "alg2") return formulas::search_ratio(eps);
  if (r.algorithm == "outlier" && r.outlier_cfg) return formulas::quick_ratio(r.outlier_cfg->epsilon);
  return std::nullopt;
}

std::optional<double> default_threshold(const TrialReport& r) {
  if (r.algorithm == "coreset") return 1.0;
  if (r.algorithm == "quick") return 1.0 - r.cfg.eta;
  if (r.algorithm == "alg2") return 1.0 - r.cfg.eta0;
  if (r.algorithm == "outlier" && r.outlier_cfg) {
    return (1.0 - r.outlier_cfg->eta) * (1.0 - r.outlier_cfg->gamma);
  }
  // The epsilon-net algorithm only promises a constant success probability.
  return std::nullopt;
}

double binomial_margin(double p, std::size_t trials, double z) {
  if (trials == 0) return 0.0;
  return z * std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

namespace {

std::string group_key(const TrialReport& r) {
  std::ostringstream os;
  os << std::setprecision(6) << r.algorithm;
  if (r.outlier_cfg) {
    os << " gamma=" << r.outlier_cfg->gamma << " beta=" << r.outlier_cfg->beta
       << " eps=" << r.outlier_cfg->epsilon << " eta=" << r.outlier_cfg->eta;
  } else {
    os << " eps=" << r.cfg.epsilon << " beta=" << r.cfg.beta << " eta=" << r.cfg.eta;
    if (r.algorithm == "alg2") os << " eta0=" << r.cfg.eta0;
  }
  os << " n=" << r.n << " d=" << r.d;
  return os.str();
}

}  // namespace

EvalSummary evaluate_lines(std::string_view text, const EvalOptions& options) {
  EvalSummary summary;
  std::map<std::string, std::size_t> index;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    ++summary.lines;
    TrialReport r;
    try {
      r = parse_json_line(line);
    } catch (const Error& e) {
      summary.malformed.push_back("line " + std::to_string(line_no) + ": " + e.what());
      continue;
    }
    const std::string key = group_key(r);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, summary.groups.size()).first;
      EvalGroup g;
      g.algorithm = r.algorithm;
      g.key = key;
      g.ratio_bound = options.ratio_bound ? options.ratio_bound : default_ratio_bound(r);
      g.threshold = options.threshold ? options.threshold : default_threshold(r);
      summary.groups.push_back(g);
    }
    EvalGroup& g = summary.groups[it->second];
    ++g.trials;
    if (r.fallback) ++g.fallbacks;
    const bool covered = r.coverage_count && *r.coverage_count >= r.target_coverage;
    const bool ratio_ok =
        !g.ratio_bound || !r.ratio_vs_reference || *r.ratio_vs_reference <= *g.ratio_bound;
    if (!covered) ++g.coverage_failures;
    if (!ratio_ok) ++g.ratio_failures;
    if (covered && ratio_ok) ++g.successes;
  }

  bool all = !summary.groups.empty() && summary.malformed.empty();
  for (EvalGroup& g : summary.groups) {
    g.frequency = static_cast<double>(g.successes) / static_cast<double>(g.trials);
    if (g.threshold) {
      g.margin = binomial_margin(*g.threshold, g.trials, options.z);
      g.pass = g.frequency >= *g.threshold - g.margin;
    }
    all = all && g.pass;
  }
  summary.pass = all;
  return summary;
}

std::string summary_json(const EvalSummary& summary) {
  nlohmann::json j;
  j["pass"] = summary.pass;
  j["lines"] = summary.lines;
  j["malformed"] = summary.malformed;
  j["groups"] = nlohmann::json::array();
  for (const EvalGroup& g : summary.groups) {
    j["groups"].push_back({
        {"group", g.key},
        {"algorithm", g.algorithm},
        {"trials", g.trials},
        {"successes", g.successes},
        {"coverage_failures", g.coverage_failures},
        {"ratio_failures", g.ratio_failures},
        {"fallbacks", g.fallbacks},
        {"frequency", g.frequency},
        {"ratio_bound", g.ratio_bound ? nlohmann::json(*g.ratio_bound) : nlohmann::json(nullptr)},
        {"threshold", g.threshold ? nlohmann::json(*g.threshold) : nlohmann::json(nullptr)},
        {"margin", g.margin},
        {"pass", g.pass},
    });
  }
  return j.dump();
}

std::string summary_table(const EvalSummary& summary) {
  std::ostringstream os;
  if (summary.groups.empty()) os << "no trials\n";
  for (const EvalGroup& g : summary.groups) {
    os << (g.pass ? "PASS " : "FAIL ") << g.key << "  trials=" << g.trials
       << " success=" << g.successes << std::fixed << std::setprecision(4)
       << " freq=" << g.frequency;
    if (g.threshold) {
      os << " need>=" << (*g.threshold - g.margin) << " (p=" << *g.threshold
         << " margin=" << g.margin << ")";
    } else {
      os << " (informational)";
    }
    if (g.ratio_bound) os << " ratio<=" << *g.ratio_bound;
    os << " cov_fail=" << g.coverage_failures << " ratio_fail=" << g.ratio_failures
       << " fallback=" << g.fallbacks << '\n';
    os.unsetf(std::ios::fixed);
    os << std::setprecision(6);
  }
  for (const auto& m : summary.malformed) os << "malformed " << m << '\n';
  if (!summary.malformed.empty()) os << summary.malformed.size() << " malformed line(s)\n";
  return os.str();
}

}  // namespace smeb
