#include "stable_meb/stability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "stable_meb/coreset.hpp"
#include "stable_meb/errors.hpp"
#include "support_ball.hpp"

namespace smeb {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::UniformBall: return "uniform-ball";
    case Family::Gaussian: return "gaussian";
    case Family::RegularSimplex: return "regular-simplex";
    case Family::PlantedOutliers: return "planted-outliers";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "uniform-ball") return Family::UniformBall;
  if (name == "gaussian") return Family::Gaussian;
  if (name == "regular-simplex" || name == "simplex") return Family::RegularSimplex;
  if (name == "planted-outliers" || name == "planted") return Family::PlantedOutliers;
  throw ConfigError("unknown instance family '" + std::string(name) + "'");
}

namespace {

std::size_t outlier_count(const InstanceSpec& spec) {
  return static_cast<std::size_t>(std::llround(spec.gamma * static_cast<double>(spec.n)));
}

void random_direction(RngStream& rng, std::span<double> out) {
  double len = 0.0;
  do {
    len = 0.0;
    for (double& x : out) {
      x = rng.normal();
      len += x * x;
    }
  } while (len == 0.0);
  len = std::sqrt(len);
  for (double& x : out) x /= len;
}

void uniform_ball_point(RngStream& rng, std::span<double> out) {
  random_direction(rng, out);
  const double r = std::pow(rng.uniform01(), 1.0 / static_cast<double>(out.size()));
  for (double& x : out) x *= r;
}

}  // namespace

void validate(const InstanceSpec& spec) {
  if (spec.d == 0) throw ConfigError("instance dimension must be >= 1");
  if (spec.family != Family::RegularSimplex && spec.n == 0) {
    throw ConfigError("instance size must be >= 1");
  }
  if (spec.family == Family::PlantedOutliers) {
    if (!(spec.gamma >= 0.0 && spec.gamma < 1.0)) {
      throw ConfigError("gamma must lie in [0, 1), got " + std::to_string(spec.gamma));
    }
    const double count = spec.gamma * static_cast<double>(spec.n);
    if (std::abs(count - std::round(count)) > 1e-9) {
      throw ConfigError("gamma * n = " + std::to_string(count) + " is not an integer");
    }
    if (outlier_count(spec) >= spec.n) throw ConfigError("planted instance has no inliers");
    if (!(spec.outlier_spread >= 1.0)) {
      throw ConfigError("outlier spread must be >= 1, got " + std::to_string(spec.outlier_spread));
    }
  }
}

GeneratedInstance generate(const InstanceSpec& spec) {
  validate(spec);
  RngStream rng(spec.seed, 0);
  const std::size_t d = spec.d;

  switch (spec.family) {
    case Family::UniformBall:
    case Family::Gaussian: {
      std::vector<double> data(spec.n * d);
      for (std::size_t i = 0; i < spec.n; ++i) {
        std::span<double> row(data.data() + i * d, d);
        if (spec.family == Family::UniformBall) {
          uniform_ball_point(rng, row);
        } else {
          for (double& x : row) x = rng.normal();
        }
      }
      return {PointSet(spec.n, d, std::move(data)), std::nullopt};
    }
    case Family::RegularSimplex: {
      // e_i / sqrt(2) for i < d, plus t * (1, ..., 1) at unit distance from each.
      const double dd = static_cast<double>(d);
      const double t = (1.0 - std::sqrt(1.0 + dd)) / (dd * std::sqrt(2.0));
      std::vector<double> data((d + 1) * d, 0.0);
      for (std::size_t i = 0; i < d; ++i) data[i * d + i] = 1.0 / std::sqrt(2.0);
      for (std::size_t k = 0; k < d; ++k) data[d * d + k] = t;
      return {PointSet(d + 1, d, std::move(data)), std::nullopt};
    }
    case Family::PlantedOutliers: {
      const std::size_t outliers = outlier_count(spec);
      const std::size_t inliers = spec.n - outliers;
      std::vector<double> data(spec.n * d);
      for (std::size_t i = 0; i < spec.n; ++i) {
        std::span<double> row(data.data() + i * d, d);
        if (i < inliers) {
          uniform_ball_point(rng, row);
        } else {
          random_direction(rng, row);
          for (double& x : row) x *= spec.outlier_spread;
        }
      }
      // Fisher-Yates over row positions.
      std::vector<Index> order(spec.n);
      for (Index i = 0; i < spec.n; ++i) order[i] = i;
      for (std::size_t i = spec.n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_index(i));
        std::swap(order[i - 1], order[j]);
      }
      std::vector<double> shuffled(spec.n * d);
      std::vector<Index> truth;
      for (Index pos = 0; pos < spec.n; ++pos) {
        const Index src = order[pos];
        std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(src * d), d,
                    shuffled.begin() + static_cast<std::ptrdiff_t>(pos * d));
        if (src < inliers) truth.push_back(pos);
      }
      return {PointSet(spec.n, d, std::move(shuffled)), std::move(truth)};
    }
  }
  throw ConfigError("unhandled instance family");
}

namespace {

bool radius_tie(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return false;
  return std::abs(a - b) <= 1e-12 * std::max({a, b, 1e-300});
}

/// Lexicographically smallest mask among the minimum-radius subsets of the
/// given size that lie inside `within`.
std::uint32_t best_subset(const detail::SubsetRadiusTable& table, std::uint32_t within,
                          int size) {
  std::uint32_t best = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  std::vector<Index> best_rows;
  // Walk submasks of `within`.
  for (std::uint32_t mask = within;; mask = (mask - 1) & within) {
    if (std::popcount(mask) == size) {
      const double r = table.radius_sq(mask);
      if (r < best_sq && !radius_tie(r, best_sq)) {
        best_sq = r;
        best = mask;
        best_rows.clear();
      } else if (radius_tie(r, best_sq)) {
        if (best_rows.empty()) best_rows = detail::mask_to_rows(best, table.n());
        auto rows = detail::mask_to_rows(mask, table.n());
        if (rows < best_rows) {
          best = mask;
          best_rows = std::move(rows);
          best_sq = std::min(best_sq, r);
        }
      }
    }
    if (mask == 0) break;
  }
  return best;
}

/// Fewest removals from `within` whose best remaining subset has squared
/// radius strictly below threshold_sq; returns |within| if none does.
std::size_t min_breaking_removals(const detail::SubsetRadiusTable& table, std::uint32_t within,
                                  double threshold_sq, std::size_t offset = 0) {
  const auto size = static_cast<std::size_t>(std::popcount(within));
  // Precompute the minimum radius per subset size.
  std::vector<double> min_by_size(size + 1, std::numeric_limits<double>::infinity());
  for (std::uint32_t mask = within;; mask = (mask - 1) & within) {
    const auto c = static_cast<std::size_t>(std::popcount(mask));
    min_by_size[c] = std::min(min_by_size[c], table.radius_sq(mask));
    if (mask == 0) break;
  }
  for (std::size_t m = 1; m + offset < size; ++m) {
    if (min_by_size[size - offset - m] < threshold_sq) return m;
  }
  return size - offset;
}

}  // namespace

OutlierSolution brute_meb_outliers(const PointSet& points, std::size_t k_remove) {
  if (points.n() > kExactMaxPoints || points.d() > kExactMaxDim) {
    throw ContractViolation("brute_meb_outliers limited to n <= 16 and d <= 8");
  }
  if (k_remove >= points.n()) {
    throw ContractViolation("k_remove must be < n, got " + std::to_string(k_remove));
  }
  const detail::SubsetRadiusTable table(points);
  const std::uint32_t mask =
      best_subset(table, table.full_mask(), static_cast<int>(points.n() - k_remove));
  OutlierSolution out;
  out.kept = detail::mask_to_rows(mask, points.n());
  out.ball = exact_meb_small(points.subset(out.kept));
  return out;
}

StabilityReport stability_coefficient(const PointSet& points, double epsilon) {
  if (points.n() > kExactMaxPoints || points.d() > kExactMaxDim) {
    throw ContractViolation("stability_coefficient limited to n <= 16 and d <= 8");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  const detail::SubsetRadiusTable table(points);
  const double rad_sq = table.radius_sq(table.full_mask());
  const double threshold_sq = (1.0 - epsilon) * (1.0 - epsilon) * rad_sq;
  StabilityReport report;
  report.epsilon = epsilon;
  report.base_radius = std::sqrt(rad_sq);
  report.m_star = min_breaking_removals(table, table.full_mask(), threshold_sq);
  report.beta_max = static_cast<double>(report.m_star - 1) / static_cast<double>(points.n());
  return report;
}

bool is_stable(const StabilityReport& report, double beta, std::size_t n) {
  return beta * static_cast<double>(n) <= static_cast<double>(report.m_star - 1) + 1e-9;
}

bool check_outlier_stability_claim(const PointSet& points, double gamma, double epsilon) {
  if (points.n() > kExactMaxPoints || points.d() > kExactMaxDim) {
    throw ContractViolation("check_outlier_stability_claim limited to n <= 16 and d <= 8");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in [0, 1)");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  const double n = static_cast<double>(points.n());
  const double outliers_real = gamma * n;
  if (std::abs(outliers_real - std::round(outliers_real)) > 1e-9) {
    throw ContractViolation("gamma * n must be an integer");
  }
  const auto outliers = static_cast<std::size_t>(std::llround(outliers_real));
  if (outliers >= points.n()) throw ContractViolation("gamma leaves no inliers");

  const detail::SubsetRadiusTable table(points);
  const std::uint32_t opt =
      best_subset(table, table.full_mask(), static_cast<int>(points.n() - outliers));
  const double threshold_sq = (1.0 - epsilon) * (1.0 - epsilon) * table.radius_sq(opt);

  // Outlier stability: removals beyond the gamma*n outliers, over all of P.
  const std::size_t m_outlier =
      min_breaking_removals(table, table.full_mask(), threshold_sq, outliers);
  const double beta = static_cast<double>(m_outlier - 1) / n;

  // Plain stability of P_opt against its own radius.
  const std::size_t opt_size = points.n() - outliers;
  StabilityReport inner;
  inner.epsilon = epsilon;
  inner.m_star = min_breaking_removals(table, opt, threshold_sq);
  return is_stable(inner, beta / (1.0 - gamma), opt_size);
}

}  // namespace smeb
