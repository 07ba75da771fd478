#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "stable_meb/coreset.hpp"
#include "stable_meb/errors.hpp"
#include "stable_meb/stability.hpp"

using namespace smeb;

namespace {

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

double simplex_radius(std::size_t d) {
  return std::sqrt(static_cast<double>(d) / (2.0 * (1.0 + static_cast<double>(d))));
}

// Fewest removals whose best remaining subset has radius below (1-eps) Rad(P),
// by enumerating subsets and solving each with the Welzl oracle.
std::size_t brute_m_star(const PointSet& p, double eps) {
  const auto rows = oracle::rows(to_vec(p.data()), p.n(), p.d());
  const double rad = oracle::meb(rows).r;
  for (std::size_t m = 1; m < p.n(); ++m) {
    if (oracle::min_radius_of_size(rows, p.n() - m) < (1 - eps) * rad * (1 - 1e-12)) return m;
  }
  return p.n();
}

PointSet triangle_plus_far() {
  return PointSet(4, 2, {0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2, 0.5, 10.0});
}

}  // namespace

TEST_CASE("family names") {
  CHECK(parse_family("uniform-ball") == Family::UniformBall);
  CHECK(parse_family("gaussian") == Family::Gaussian);
  CHECK(parse_family("regular-simplex") == Family::RegularSimplex);
  CHECK(parse_family("simplex") == Family::RegularSimplex);
  CHECK(parse_family("planted-outliers") == Family::PlantedOutliers);
  CHECK_THROWS_AS(parse_family("cube"), ConfigError);
  CHECK(family_name(Family::PlantedOutliers) == "planted-outliers");
}

TEST_CASE("regular simplex generator") {
  for (std::size_t d = 2; d <= 8; ++d) {
    InstanceSpec spec;
    spec.family = Family::RegularSimplex;
    spec.d = d;
    const PointSet p = generate(spec).points;
    REQUIRE(p.n() == d + 1);
    for (Index i = 0; i < p.n(); ++i) {
      for (Index j = i + 1; j < p.n(); ++j) CHECK(std::fabs(dist(p.row(i), p.row(j)) - 1.0) < 1e-12);
    }
    CHECK(exact_meb_small(p).radius == doctest::Approx(simplex_radius(d)).epsilon(1e-9));
  }
}

TEST_CASE("uniform ball and gaussian generators") {
  InstanceSpec spec;
  spec.n = 10'000;
  spec.d = 2;
  spec.seed = 4;
  const PointSet p = generate(spec).points;
  for (Index i = 0; i < p.n(); ++i) CHECK(norm(p.row(i)) <= 1.0);
  std::vector<Index> sub;
  for (Index i = 0; i < 16; ++i) sub.push_back(i * 600);
  CHECK(exact_meb_small(p.subset(sub)).radius <= 1.0);

  const auto again = generate(spec).points;
  CHECK(std::equal(p.data().begin(), p.data().end(), again.data().begin()));

  spec.family = Family::Gaussian;
  spec.d = 3;
  const PointSet g = generate(spec).points;
  double s = 0.0;
  for (double x : g.data()) s += x * x;
  CHECK(s / static_cast<double>(g.data().size()) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("planted outlier generator") {
  InstanceSpec spec;
  spec.family = Family::PlantedOutliers;
  spec.n = 10;
  spec.d = 3;
  spec.gamma = 0.3;
  spec.seed = 1;
  CHECK_NOTHROW(validate(spec));
  const GeneratedInstance g = generate(spec);
  REQUIRE(g.inliers.has_value());
  CHECK(g.inliers->size() == 7);
  std::size_t far = 0;
  for (Index i = 0; i < g.points.n(); ++i) far += norm(g.points.row(i)) > 9.999;
  CHECK(far == 3);

  spec.gamma = 0.25;
  CHECK_THROWS_AS(validate(spec), ConfigError);
  CHECK_THROWS_AS(generate(spec), ConfigError);
  spec.gamma = 0.3;
  spec.outlier_spread = 0.5;
  CHECK_THROWS_AS(validate(spec), ConfigError);
}

TEST_CASE("brute force recovers planted inliers") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    InstanceSpec spec;
    spec.family = Family::PlantedOutliers;
    spec.n = 10;
    spec.d = 3;
    spec.gamma = 0.1;
    spec.outlier_spread = 10.0;
    spec.seed = seed;
    const GeneratedInstance g = generate(spec);
    const OutlierSolution sol = brute_meb_outliers(g.points, 1);
    CHECK(sol.kept == *g.inliers);
  }
}

TEST_CASE("brute_meb_outliers examples") {
  const PointSet tri = triangle_plus_far();
  const OutlierSolution a = brute_meb_outliers(tri, 1);
  CHECK(a.kept == std::vector<Index>{0, 1, 2});
  CHECK(a.ball.radius == doctest::Approx(0.5773503).epsilon(1e-7));

  const OutlierSolution none = brute_meb_outliers(tri, 0);
  CHECK(none.ball.radius == doctest::Approx(exact_meb_small(tri).radius));

  const PointSet line(5, 1, {0, 1, 2, 3, 100});
  const OutlierSolution b = brute_meb_outliers(line, 1);
  CHECK(b.kept == std::vector<Index>{0, 1, 2, 3});
  CHECK(b.ball.radius == doctest::Approx(1.5));

  // Ties go to the lexicographically smallest kept set.
  const PointSet sym(3, 1, {0, 1, 2});
  CHECK(brute_meb_outliers(sym, 1).kept == std::vector<Index>{0, 1});

  CHECK_THROWS_AS(brute_meb_outliers(line, 5), ContractViolation);
}

TEST_CASE("stability coefficient examples") {
  const StabilityReport r = stability_coefficient(triangle_plus_far(), 0.1);
  CHECK(r.m_star == 1);
  CHECK(r.beta_max == 0.0);

  const PointSet same(5, 2, std::vector<double>(10, 3.0));
  CHECK(stability_coefficient(same, 0.1).m_star == 5);
}

TEST_CASE("simplex stability matches the closed form") {
  for (std::size_t d = 2; d <= 7; ++d) {
    for (double eps : {0.01, 0.05, 0.2}) {
      InstanceSpec spec;
      spec.family = Family::RegularSimplex;
      spec.d = d;
      const PointSet p = generate(spec).points;
      const StabilityReport r = stability_coefficient(p, eps);
      // Removing m vertices leaves a regular simplex of dimension d - m.
      std::size_t want = d + 1;
      for (std::size_t m = 1; m <= d; ++m) {
        if (simplex_radius(d - m) < (1 - eps) * simplex_radius(d)) {
          want = m;
          break;
        }
      }
      CHECK(r.m_star == want);
      // The largest stable fraction satisfies 1 - beta <= 1/(1+(2eps-eps^2)d)
      // only in the limit; the kept fraction (n - m_star)/n must.
      const double kept = static_cast<double>(p.n() - r.m_star) / static_cast<double>(p.n());
      CHECK(kept <= 1.0 / (1.0 + (2 * eps - eps * eps) * static_cast<double>(d)) + 1e-12);
    }
  }
}

TEST_CASE("stability coefficient matches brute enumeration") {
  RngStream rng(31, 0);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 3 + rng.uniform_index(6);
    const std::size_t d = 1 + rng.uniform_index(3);
    std::vector<double> data(n * d);
    for (auto& x : data) x = rng.normal();
    const PointSet p(n, d, data);
    for (double eps : {0.05, 0.2}) {
      CHECK(stability_coefficient(p, eps).m_star == brute_m_star(p, eps));
    }
  }
}

TEST_CASE("optimal inlier set inherits stability") {
  RngStream rng(5, 5);
  int checked = 0;
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t d = 1 + rng.uniform_index(3);
    std::vector<double> data(12 * d);
    for (auto& x : data) x = rng.normal();
    const PointSet p(12, d, data);
    for (double gamma : {1.0 / 12, 2.0 / 12}) {
      for (double eps : {0.05, 0.2}) {
        CHECK(check_outlier_stability_claim(p, gamma, eps));
        ++checked;
      }
    }
  }
  CHECK(checked == 240);

  const PointSet same(6, 2, std::vector<double>(12, 1.0));
  CHECK(check_outlier_stability_claim(same, 1.0 / 6, 0.1));
  CHECK(check_outlier_stability_claim(triangle_plus_far(), 0.0, 0.1));
  CHECK_THROWS_AS(check_outlier_stability_claim(triangle_plus_far(), 0.3, 0.1), ContractViolation);
}
