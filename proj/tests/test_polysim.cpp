#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "ppl/exactlaw.hpp"
#include "ppl/polysim.hpp"

using namespace ppl;
using namespace ppl::polysim;

namespace {

PointCloud cloud_from_rows(std::vector<std::vector<double>> rows) {
  PointCloud cloud;
  cloud.d = static_cast<int>(rows[0].size());
  cloud.points.resize((long)rows.size(), cloud.d);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < cloud.d; ++j) cloud.points((long)i, j) = rows[i][j];
  return cloud;
}

}  // namespace

TEST_CASE("poisson ball sampler basics") {
  CHECK(sample_poisson_ball(3, -std::numeric_limits<double>::infinity(), 7).size() == 0);
  CHECK_THROWS_AS(sample_poisson_ball(3, std::log(2e7), 7), resource_error);

  // Mean count over 2000 draws at e^L = 50 within 3 sigma.
  long total = 0;
  const int reps = 2000;
  for (int i = 0; i < reps; ++i)
    total += sample_poisson_ball(4, std::log(50.0), 1000 + i).size();
  const double mean = (double)total / reps;
  CHECK(std::fabs(mean - 50.0) <= 3.0 * std::sqrt(50.0 / reps));

  // Norms stay inside the ball; empirical mean of |X|^d is 1/2 within 3 sigma.
  const auto cloud = sample_poisson_ball(5, std::log(20000.0), 42);
  double acc = 0.0;
  for (long i = 0; i < cloud.size(); ++i) {
    const double norm = cloud.points.row(i).norm();
    CHECK(norm <= 1.0 + 1e-12);
    acc += std::pow(norm, cloud.d);
  }
  const double n = (double)cloud.size();
  CHECK(std::fabs(acc / n - 0.5) <= 3.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("support value") {
  auto cloud = cloud_from_rows({{0.3, 0.4}});
  Eigen::VectorXd u(2);
  u << 1.0, 0.0;
  CHECK(support_value(cloud, u) == doctest::Approx(0.3));
  Eigen::VectorXd bad(2);
  bad << 2.0, 0.0;
  CHECK_THROWS_AS(support_value(cloud, bad), domain_error);

  // Symmetrized cloud: h(u) = h(-u).
  const auto base = sample_poisson_ball(4, std::log(30.0), 5);
  PointCloud sym;
  sym.d = 4;
  sym.points.resize(2 * base.size(), 4);
  sym.points << base.points, -base.points;
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd dir = detail::random_unit_vector(4, rng);
    CHECK(support_value(sym, dir) == doctest::Approx(support_value(sym, -dir)).epsilon(1e-12));
  }
}

TEST_CASE("hull2d matches brute-force extreme points") {
  Rng rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 40 + (int)(160 * rng.uniform());
    std::vector<Eigen::Vector2d> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = {2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
    const auto poly = hull2d(pts);
    const auto brute = oracle::extreme_points_bruteforce(pts);
    CHECK(poly.vertices.size() == brute.size());
    // Same vertex set.
    for (int idx : brute) {
      bool found = false;
      for (const auto& v : poly.vertices)
        found = found || (v - pts[idx]).norm() <= 1e-12;
      CHECK(found);
    }
    // CCW orientation: positive signed area.
    double area2 = 0.0;
    const auto& vs = poly.vertices;
    for (size_t i = 0; i < vs.size(); ++i) {
      const auto& a = vs[i];
      const auto& b = vs[(i + 1) % vs.size()];
      area2 += a.x() * b.y() - a.y() * b.x();
    }
    CHECK(area2 > 0.0);
  }
}

TEST_CASE("hull2d handles structured inputs") {
  const auto tri = hull2d({{0, 0}, {1, 0}, {0, 1}});
  CHECK(tri.vertices.size() == 3);
  // All points on a circle are vertices.
  std::vector<Eigen::Vector2d> circle;
  for (int k = 0; k < 32; ++k)
    circle.push_back({std::cos(2 * M_PI * k / 32.0), std::sin(2 * M_PI * k / 32.0)});
  CHECK(hull2d(circle).vertices.size() == 32);
  // Idempotence.
  const auto again = hull2d(hull2d(circle).vertices);
  CHECK(again.vertices.size() == 32);
  // Degenerate inputs.
  CHECK(hull2d({{0.5, 0.5}}).vertices.size() == 1);
  CHECK(hull2d({{0, 0}, {1, 1}}).vertices.size() == 2);
  CHECK(polygon_origin_inradius(hull2d({{0, 0}, {1, 1}})) ==
        -std::numeric_limits<double>::infinity());
}

TEST_CASE("projected sectional minimum") {
  // Square [-1,1]^2 embedded in d = 4: inradius 1.
  auto square = cloud_from_rows({{1, 1, 0, 0}, {-1, 1, 0, 0}, {-1, -1, 0, 0}, {1, -1, 0, 0}});
  CHECK(sf_dm_via_projection(square) == doctest::Approx(1.0).epsilon(1e-12));
  // Hull that misses the origin: value <= 0.
  auto shifted = cloud_from_rows({{2, 1, 0, 0}, {2, -1, 0, 0}, {3, 0, 0, 0}});
  CHECK(sf_dm_via_projection(shifted) <= 0.0);
  CHECK_THROWS_AS(sf_dm_via_projection(square, 3), domain_error);

  // Rotation invariance in the section plane.
  const auto cloud = sample_poisson_ball(6, std::log(500.0), 77);
  const double base = sf_dm_via_projection(cloud);
  Rng rng(78);
  for (int i = 0; i < 5; ++i) {
    const double theta = 2.0 * M_PI * rng.uniform();
    PointCloud rotated = cloud;
    for (long k = 0; k < cloud.size(); ++k) {
      const double x = cloud.points(k, 0), y = cloud.points(k, 1);
      rotated.points(k, 0) = std::cos(theta) * x - std::sin(theta) * y;
      rotated.points(k, 1) = std::sin(theta) * x + std::cos(theta) * y;
    }
    CHECK(sf_dm_via_projection(rotated) == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("convex-hull membership LP") {
  auto tri = cloud_from_rows({{1, 0}, {0, 1}, {-1, -1}});
  Eigen::VectorXd inside(2), outside(2);
  inside << 0.05, 0.05;
  outside << 0.8, 0.8;
  CHECK(detail::in_convex_hull(tri.points, inside));
  CHECK_FALSE(detail::in_convex_hull(tri.points, outside));
  Eigen::VectorXd vertex(2);
  vertex << 1.0, 0.0;
  CHECK(detail::in_convex_hull(tri.points, vertex));
}

TEST_CASE("radius-vector value") {
  // Simplex containing the origin; direction toward a vertex exits there.
  auto simplex = cloud_from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}});
  Eigen::VectorXd e1(3);
  e1 << 1.0, 0.0, 0.0;
  const auto rv = radius_vector_value(simplex, e1, 1e-10);
  CHECK_FALSE(rv.origin_outside);
  CHECK(rv.value == doctest::Approx(1.0).epsilon(1e-8));

  // Cube vertices {+-1/sqrt(d)}^d: the ray along e1 exits the facet at 1/sqrt(d).
  const int d = 4;
  std::vector<std::vector<double>> rows;
  for (int mask = 0; mask < (1 << d); ++mask) {
    std::vector<double> row(d);
    for (int j = 0; j < d; ++j) row[j] = ((mask >> j) & 1 ? 1.0 : -1.0) / std::sqrt((double)d);
    rows.push_back(row);
  }
  auto cube = cloud_from_rows(rows);
  Eigen::VectorXd dir(d);
  dir.setZero();
  dir[0] = 1.0;
  CHECK(radius_vector_value(cube, dir).value == doctest::Approx(0.5).epsilon(1e-7));

  // Origin outside: flagged, value 0.
  auto far_cloud = cloud_from_rows({{0.5, 0.1}, {0.6, 0.2}, {0.7, 0.05}});
  Eigen::VectorXd u2(2);
  u2 << 1.0, 0.0;
  const auto outside = radius_vector_value(far_cloud, u2);
  CHECK(outside.origin_outside);
  CHECK(outside.value == 0.0);
}

TEST_CASE("rho <= h on random clouds") {
  Rng rng(55);
  int trials = 0;
  while (trials < 200) {
    const auto cloud = sample_poisson_ball(4, std::log(25.0), 9000 + trials);
    if (cloud.size() == 0) continue;
    const Eigen::VectorXd u = detail::random_unit_vector(4, rng);
    const double h = support_value(cloud, u);
    const auto rho = radius_vector_value(cloud, u);
    CHECK(rho.value <= h + 1e-9);
    ++trials;
  }
}

TEST_CASE("volume ratio estimate") {
  CHECK(volume_ratio_estimate(3, -std::numeric_limits<double>::infinity(), 4, 8, 3).mean == 0.0);
  // Dense disk: volume ratio close to 1.
  const auto dense = volume_ratio_estimate(2, std::log(10000.0), 8, 24, 5);
  CHECK(dense.mean > 0.9);
  CHECK(dense.mean < 1.0 + 1e-12);
}

TEST_CASE("Wendel cross-check: fixed n = 3 in the plane") {
  // Hull of three symmetric points contains the origin with probability 1/4.
  Rng rng(66);
  const int n = 100000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    Eigen::Vector2d p[3];
    for (auto& pt : p) {
      // Symmetric sampling: uniform in the disk.
      double x, y;
      do {
        x = 2.0 * rng.uniform() - 1.0;
        y = 2.0 * rng.uniform() - 1.0;
      } while (x * x + y * y > 1.0);
      pt = {x, y};
    }
    const double c1 = p[0].x() * p[1].y() - p[0].y() * p[1].x();
    const double c2 = p[1].x() * p[2].y() - p[1].y() * p[2].x();
    const double c3 = p[2].x() * p[0].y() - p[2].y() * p[0].x();
    if ((c1 > 0 && c2 > 0 && c3 > 0) || (c1 < 0 && c2 < 0 && c3 < 0)) ++hits;
  }
  const double freq = (double)hits / n;
  CHECK(std::fabs(freq - 0.25) <= 3.0 * std::sqrt(0.25 * 0.75 / n));
}

TEST_CASE("Wendel cross-check: Poissonized origin containment") {
  const exactlaw::ModelParams params{3, std::log(30.0)};
  const double exact = exactlaw::origin_probability(params).value;
  const int n = 20000;
  int hits = 0;
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(3);
  for (int i = 0; i < n; ++i) {
    const auto cloud = sample_poisson_ball(3, params.L, 40000 + i);
    if (cloud.size() == 0) continue;
    if (detail::in_convex_hull(cloud.points, origin)) ++hits;
  }
  const double freq = (double)hits / n;
  CHECK(std::fabs(freq - exact) <= 3.0 * std::sqrt(exact * (1.0 - exact) / n));
}
