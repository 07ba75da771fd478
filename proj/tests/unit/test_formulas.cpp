#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "stable_meb/formulas.hpp"

using namespace smeb::formulas;

TEST_CASE("tolerant rounding") {
  CHECK(ceil_count(2.0 / ((1.0 - 1.0 / 3.0) * 0.1)) == 30);
  CHECK(ceil_count(575.65) == 576);
  CHECK(ceil_count(3.0) == 3);
  CHECK(floor_count(119.99999999999999) == 120);
  CHECK(floor_count(120.4) == 120);
}

TEST_CASE("core-set constants") {
  CHECK(coreset_iteration_cap(0.1, 1.0 / 3.0) == 30);
  CHECK(coreset_iteration_cap(0.05, 1.0 / 3.0) == 60);
  CHECK(center_accuracy(0.1, 1.0 / 3.0) == doctest::Approx(0.1 / 3.0 / 1.1));
}

TEST_CASE("epsilon-net sample size and ratio") {
  // 50 * ln(50 + e) = 50 * 3.96494... -> 199
  CHECK(net_sample_size(5, 0.1, 1.0) == 199);
  CHECK(net_sample_size(5, 0.1, 2.0) == 397);
  CHECK(net_expansion(0.01) == doctest::Approx(1.35497).epsilon(1e-5));
  CHECK(net_ratio(0.01) == doctest::Approx(1.36852).epsilon(1e-5));
}

TEST_CASE("hitting-sample sizes") {
  CHECK(range_sample_size(0.05, 0.1, 1.0) == 47);       // 20 ln 10 = 46.05
  CHECK(oracle_sample_size(0.05, 0.1, 30, 1.0) == 115);  // 20 ln 300 = 114.08
  CHECK(range_sample_size(0.9, 0.9, 1.0) >= 1);
}

TEST_CASE("binary-search grid and ratio") {
  CHECK(search_grid_length(0.2) == 8);
  const double eps = 0.04;
  const double x1 = 8 * eps / (1 - eps);
  const double x2 = (4 + 4 * std::sqrt(2.0)) * std::sqrt(eps / (1 - eps));
  CHECK(x1 == doctest::Approx(0.333333).epsilon(1e-5));
  CHECK(x2 == doctest::Approx(1.97119).epsilon(1e-5));
  CHECK(search_ratio(eps) == doctest::Approx(3.80922).epsilon(1e-5));
  CHECK(search_radius_factor(eps) == doctest::Approx((1 + x2) / (1 + eps)));
  CHECK(quick_ratio(0.1) == doctest::Approx(4.0 / 0.9));
  CHECK(search_eta(0.1, 8) == doctest::Approx(0.1 / 6.0));
}

TEST_CASE("outlier estimator constants") {
  CHECK(outlier_rank(0.1, 0.05, 1000) == 121);
  // max(1/beta, 1/gamma) = 20 at gamma = 0.1, beta = 0.05:
  // 20 * 25 * ln 10 = 1151.29 -> 1152.
  CHECK(outlier_sample_size(0.1, 0.05, 0.1, 1.0) == 1152);
  CHECK(outlier_sigma(0.1, 0.05) == doctest::Approx(0.1));
  // (1 + 0.1) * 0.1 * 1000 + 1
  CHECK(outlier_rank_proof(0.1, 0.05, 1000) == 111);
  CHECK(center_shift_bound(0.1) == doctest::Approx((2 + std::sqrt(2.0)) * std::sqrt(0.1)));
}

TEST_CASE("statement rank stays inside the gap window") {
  for (double g : {0.01, 0.05, 0.1, 0.2, 0.3, 0.45}) {
    for (double b : {0.01, 0.05, 0.1, 0.2}) {
      if (g + b >= 1.0) continue;
      for (std::size_t m : {10u, 100u, 577u, 1000u, 12345u}) {
        const double s = outlier_sigma(g, b);
        const double t = static_cast<double>(outlier_rank(g, b, m));
        CHECK(t > (1 + 2 * s) * g * static_cast<double>(m) - 1e-9);
        CHECK(t <= (1 - s) * (g + b) * static_cast<double>(m) + 1.0 + 1e-9);
      }
    }
  }
}
