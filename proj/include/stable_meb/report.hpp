#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "stable_meb/config.hpp"
#include "stable_meb/geometry.hpp"

namespace smeb {

enum class Algorithm { Coreset, Alg1, Quick, Alg2, Outlier };

std::string_view algorithm_name(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

/// Per-run record. The algorithm fills what it observes; coverage and the
/// reference ratio are filled afterwards by an evaluation-only full scan.
struct TrialReport {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  AlgoConfig cfg;
  std::optional<OutlierConfig> outlier_cfg;

  double radius = 0.0;
  double center_norm = 0.0;
  std::size_t samples_drawn = 0;   // rows actually read by the algorithm
  std::size_t sample_budget = 0;   // worst-case rows for this cfg; never depends on n
  std::optional<std::size_t> coverage_count;
  std::size_t target_coverage = 0;
  std::optional<double> reference_radius;
  std::optional<double> ratio_vs_reference;
  bool fallback = false;
  double wall_time_ms = 0.0;

  // Algorithm-specific detail.
  std::optional<std::size_t> coreset_iterations;
  std::optional<long long> boundary_index;     // i0 of the binary search
  std::optional<std::size_t> grid_length;      // w
  std::optional<std::size_t> oracle_calls;
  std::optional<bool> search_restarted;
  std::optional<std::size_t> outlier_sample_size;
  std::optional<std::size_t> outlier_rank;        // t used
  std::optional<std::size_t> outlier_rank_proof;  // (1+sigma) gamma m + 1
};

/// One JSON object on a single line. The field set matches
/// docs/trial_report.schema.json.
std::string to_json_line(const TrialReport& report);

/// Inverse of to_json_line; throws Error on malformed input.
TrialReport parse_json_line(std::string_view line);

/// Same as to_json_line but without wall_time_ms, for determinism checks.
std::string deterministic_fields(const TrialReport& report);

}  // namespace smeb
