#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stable_meb/config.hpp"
#include "stable_meb/geometry.hpp"
#include "stable_meb/report.hpp"
#include "stable_meb/sublinear.hpp"

namespace smeb {

enum class ReferenceMode { None, CoresetHighPrec, GroundTruth, BruteForce };

std::string_view reference_mode_name(ReferenceMode m);
ReferenceMode parse_reference_mode(std::string_view name);

/// Accuracy of the near-exact reference ball.
inline constexpr double kReferenceEpsilon = 1e-3;

/// Relative slack used by the evaluation-only coverage scan.
inline constexpr double kCoverageSlack = 1e-9;

/// Reference ball for ratio evaluation.
///  - coreset-highprec: coreset_meb(P, 1e-3).
///  - ground-truth: coreset_meb(P[inliers], 1e-3); needs inliers.
///  - brute-force: exact_meb_small(P), or brute_meb_outliers(P, n - target)
///    when remove_count > 0; tiny instances only.
/// Throws ConfigError for mode None or missing inliers.
Ball reference_ball(const PointSet& points, ReferenceMode mode,
                    const std::optional<std::vector<Index>>& inliers, std::size_t remove_count);

struct ExperimentPlan {
  Algorithm algorithm = Algorithm::Quick;
  AlgoConfig cfg;
  OutlierConfig outlier_cfg;
  std::size_t trials = 1;
  std::uint64_t base_seed = 0;
  ReferenceMode reference = ReferenceMode::None;
};

void validate(const ExperimentPlan& plan);

/// Number of rows an outlier-aware reference may drop for this plan.
std::size_t reference_remove_count(const ExperimentPlan& plan, std::size_t n);

/// One run on stream base_seed + trial. Times the algorithm alone, then adds
/// the evaluation-only coverage count and the ratio to reference_radius.
TrialOutcome run_trial(const PointSet& points, const ExperimentPlan& plan, std::size_t trial,
                       std::optional<double> reference_radius);

/// All trials of a plan on up to `threads` workers; reports come back in
/// trial order.
std::vector<TrialReport> run_plan(const PointSet& points, const ExperimentPlan& plan,
                                  std::optional<double> reference_radius, std::size_t threads);

/// Success criteria applied to a group of reports sharing algorithm and cfg.
struct EvalOptions {
  std::optional<double> ratio_bound;  // default: the algorithm's guarantee
  std::optional<double> threshold;    // default: the algorithm's success probability
  double z = 2.576;                   // two-sided 99% normal quantile
};

struct EvalGroup {
  std::string algorithm;
  std::string key;  // algorithm plus cfg values
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t coverage_failures = 0;
  std::size_t ratio_failures = 0;
  std::size_t fallbacks = 0;
  double frequency = 0.0;
  std::optional<double> ratio_bound;
  std::optional<double> threshold;  // absent: informational only
  double margin = 0.0;
  bool pass = true;
};

struct EvalSummary {
  std::vector<EvalGroup> groups;
  std::vector<std::string> malformed;  // "line N: message"
  std::size_t lines = 0;
  bool pass = false;
};

/// Default ratio bound and success threshold for a report's algorithm.
std::optional<double> default_ratio_bound(const TrialReport& r);
std::optional<double> default_threshold(const TrialReport& r);

/// margin = z * sqrt(p (1 - p) / trials).
double binomial_margin(double p, std::size_t trials, double z);

/// Parses JSON lines (blank lines skipped) and evaluates each group. Passes
/// iff there is at least one trial, no malformed line and every group meets
/// frequency >= threshold - margin.
EvalSummary evaluate_lines(std::string_view text, const EvalOptions& options);

std::string summary_json(const EvalSummary& summary);
std::string summary_table(const EvalSummary& summary);

}  // namespace smeb
