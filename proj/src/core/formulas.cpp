#include "stable_meb/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace smeb::formulas {

namespace {
constexpr double kRoundingSlack = 1e-9;
}

std::size_t ceil_count(double x) {
  const double tol = kRoundingSlack * std::max(1.0, std::abs(x));
  const double r = std::ceil(x - tol);
  return r <= 0.0 ? 0 : static_cast<std::size_t>(r);
}

std::size_t floor_count(double x) {
  const double tol = kRoundingSlack * std::max(1.0, std::abs(x));
  const double r = std::floor(x + tol);
  return r <= 0.0 ? 0 : static_cast<std::size_t>(r);
}

double center_accuracy(double epsilon, double s) { return s * epsilon / (1.0 + epsilon); }

std::size_t coreset_iteration_cap(double epsilon, double s) {
  return ceil_count(2.0 / ((1.0 - s) * epsilon));
}

double net_expansion(double epsilon) {
  return (1.0 + (2.0 + std::numbers::sqrt2) * std::sqrt(epsilon)) / (1.0 - epsilon);
}

double net_ratio(double epsilon) { return net_expansion(epsilon) * (1.0 + epsilon); }

std::size_t net_sample_size(std::size_t d, double beta, double c_net) {
  const double ratio = static_cast<double>(d) / beta;
  return ceil_count(c_net * ratio * std::log(ratio + std::numbers::e));
}

std::size_t range_sample_size(double beta, double eta, double c_hit) {
  return std::max<std::size_t>(1, ceil_count(c_hit / beta * std::log(1.0 / eta)));
}

std::size_t oracle_sample_size(double beta, double eta, std::size_t z, double c_hit) {
  return std::max<std::size_t>(
      1, ceil_count(c_hit / beta * std::log(static_cast<double>(z) / eta)));
}

double quick_ratio(double epsilon) { return 4.0 / (1.0 - epsilon); }

std::size_t search_grid_length(double epsilon) {
  const double span = 2.0 / ((1.0 - epsilon) * (1.0 - epsilon));
  return ceil_count(std::log(span) / std::log1p(epsilon)) + 1;
}

double search_eta(double eta0, std::size_t w) {
  return eta0 / (2.0 * std::log2(static_cast<double>(w)));
}

double search_radius_factor(double epsilon) {
  const double x2 = (4.0 + 4.0 * std::numbers::sqrt2) * std::sqrt(epsilon / (1.0 - epsilon));
  return (1.0 + x2) / (1.0 + epsilon);
}

double search_ratio(double epsilon) {
  const double x1 = 8.0 * epsilon / (1.0 - epsilon);
  return (1.0 + x1) * search_radius_factor(epsilon);
}

std::size_t outlier_sample_size(double gamma, double beta, double eta, double c_out) {
  const double spread = (2.0 * gamma + beta) / beta;
  return ceil_count(c_out * std::max(1.0 / beta, 1.0 / gamma) * spread * spread *
                    std::log(1.0 / eta));
}

double outlier_sigma(double gamma, double beta) { return 0.5 * beta / (2.0 * gamma + beta); }

std::size_t outlier_rank(double gamma, double beta, std::size_t m) {
  return floor_count((2.0 * gamma + 2.0 * beta) * gamma * static_cast<double>(m) /
                     (2.0 * gamma + beta)) +
         1;
}

std::size_t outlier_rank_proof(double gamma, double beta, std::size_t m) {
  return floor_count((1.0 + outlier_sigma(gamma, beta)) * gamma * static_cast<double>(m)) + 1;
}

double center_shift_bound(double epsilon) {
  return (2.0 + std::numbers::sqrt2) * std::sqrt(epsilon);
}

}  // namespace smeb::formulas
