#include "ppl/polysim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ppl/errors.hpp"

namespace ppl::polysim {

namespace {

constexpr double kDedupTol = 1e-12;

double cross(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

}  // namespace

PointCloud sample_poisson_ball(int d, double L, std::uint64_t seed) {
  if (d < 2) throw domain_error("sample_poisson_ball: d must be >= 2");
  const double mean = std::exp(L);
  if (mean > 1e7) throw resource_error("sample_poisson_ball: expected count above 1e7 cap");
  Rng rng(seed);
  const long n = rng.poisson(mean);
  PointCloud cloud;
  cloud.d = d;
  cloud.seed = seed;
  cloud.points.resize(n, d);
  Eigen::VectorXd g(d);
  for (long i = 0; i < n; ++i) {
    double norm2;
    do {
      for (int j = 0; j < d; ++j) g[j] = rng.normal();
      norm2 = g.squaredNorm();
    } while (norm2 == 0.0);
    const double radius = std::exp(std::log(rng.uniform_pos()) / d);
    cloud.points.row(i) = (radius / std::sqrt(norm2)) * g.transpose();
  }
  return cloud;
}

double support_value(const PointCloud& cloud, const Eigen::VectorXd& u) {
  if (u.size() != cloud.d) throw domain_error("support_value: direction dimension mismatch");
  if (std::fabs(u.norm() - 1.0) > 1e-10) throw domain_error("support_value: u must be unit");
  if (cloud.size() == 0) return -std::numeric_limits<double>::infinity();
  return (cloud.points * u).maxCoeff();
}

Polygon2D hull2d(std::vector<Eigen::Vector2d> pts) {
  Polygon2D poly;
  std::sort(pts.begin(), pts.end(), [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
                          return std::fabs(a.x() - b.x()) <= kDedupTol &&
                                 std::fabs(a.y() - b.y()) <= kDedupTol;
                        }),
            pts.end());
  const size_t n = pts.size();
  if (n <= 2) {
    poly.vertices = std::move(pts);
    return poly;
  }
  std::vector<Eigen::Vector2d> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper chain
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  poly.vertices = std::move(h);
  return poly;
}

double polygon_origin_inradius(const Polygon2D& poly) {
  const size_t n = poly.vertices.size();
  if (n < 3) return -std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = poly.vertices[i];
    const Eigen::Vector2d& b = poly.vertices[(i + 1) % n];
    const double len = (b - a).norm();
    if (len <= kDedupTol) continue;
    // > 0 iff the origin lies left of the directed edge a -> b.
    const double signed_dist = (a.x() * b.y() - a.y() * b.x()) / len;
    best = std::min(best, signed_dist);
  }
  return best;
}

double sf_dm_via_projection(const PointCloud& cloud, int m) {
  if (m != 2) throw domain_error("sf_dm_via_projection: only m = 2 is exact");
  if (cloud.d < 2) throw domain_error("sf_dm_via_projection: cloud dimension < 2");
  std::vector<Eigen::Vector2d> proj(cloud.size());
  for (long i = 0; i < cloud.size(); ++i)
    proj[i] = Eigen::Vector2d(cloud.points(i, 0), cloud.points(i, 1));
  return polygon_origin_inradius(hull2d(std::move(proj)));
}

namespace detail {

bool in_convex_hull(const Eigen::MatrixXd& points, const Eigen::VectorXd& target, double tol) {
  const long n = points.rows();
  const int d = static_cast<int>(points.cols());
  if (n == 0) return false;
  // Phase-1 LP: find w >= 0 with points^T w = target, 1^T w = 1, by
  // minimizing the sum of artificials.  Rows: d equality + convexity.
  const int rows = d + 1;
  const long cols = n + rows;  // structural + artificial
  Eigen::MatrixXd T(rows + 1, cols + 1);
  T.setZero();
  for (int r = 0; r < d; ++r) {
    for (long j = 0; j < n; ++j) T(r, j) = points(j, r);
    T(r, cols) = target[r];
  }
  for (long j = 0; j < n; ++j) T(d, j) = 1.0;
  T(d, cols) = 1.0;
  for (int r = 0; r < rows; ++r) {
    if (T(r, cols) < 0.0) T.row(r) = -T.row(r);
    T(r, n + r) = 1.0;
  }
  // Objective row: minimize sum of artificials, expressed in reduced costs.
  for (int r = 0; r < rows; ++r) T.row(rows) -= T.row(r);

  std::vector<long> basis(rows);
  for (int r = 0; r < rows; ++r) basis[r] = n + r;

  const double pivot_eps = 1e-11;
  const long max_pivots = 200 + 40L * (n + rows);
  for (long iter = 0; iter < max_pivots; ++iter) {
    // Bland: entering variable = lowest index with negative reduced cost.
    long enter = -1;
    for (long j = 0; j < cols; ++j) {
      if (T(rows, j) < -pivot_eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    long leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows; ++r) {
      if (T(r, enter) > pivot_eps) {
        const double ratio = T(r, cols) / T(r, enter);
        if (ratio < best_ratio - 1e-15 ||
            (ratio < best_ratio + 1e-15 && (leave < 0 || basis[r] < basis[leave]))) {
          best_ratio = ratio;
          leave = r;
        }
      }
    }
    if (leave < 0) throw numeric_error("in_convex_hull: unbounded phase-1 LP");
    T.row(leave) /= T(leave, enter);
    for (int r = 0; r <= rows; ++r) {
      if (r == leave) continue;
      const double f = T(r, enter);
      if (f != 0.0) T.row(r) -= f * T.row(leave);
    }
    basis[leave] = enter;
  }
  return -T(rows, cols) <= tol;
}

Eigen::VectorXd random_unit_vector(int d, Rng& rng) {
  Eigen::VectorXd u(d);
  double norm2;
  do {
    for (int j = 0; j < d; ++j) u[j] = rng.normal();
    norm2 = u.squaredNorm();
  } while (norm2 == 0.0);
  return u / std::sqrt(norm2);
}

}  // namespace detail

RadiusVectorValue radius_vector_value(const PointCloud& cloud, const Eigen::VectorXd& u,
                                      double tol) {
  if (cloud.size() == 0) throw domain_error("radius_vector_value: empty cloud");
  if (std::fabs(u.norm() - 1.0) > 1e-10)
    throw domain_error("radius_vector_value: u must be unit");
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(cloud.d);
  if (!detail::in_convex_hull(cloud.points, origin, tol)) return {0.0, true};
  double hi = support_value(cloud, u);
  if (hi <= 0.0) return {0.0, false};
  double lo = 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (detail::in_convex_hull(cloud.points, mid * u, tol))
      lo = mid;
    else
      hi = mid;
  }
  return {lo, false};
}

VolumeRatioEstimate volume_ratio_estimate(int d, double L, int n_dirs, int n_clouds,
                                          std::uint64_t seed) {
  if (n_dirs < 1 || n_clouds < 1) throw domain_error("volume_ratio_estimate: counts must be >= 1");
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n_clouds; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    PointCloud cloud = sample_poisson_ball(d, L, rng.next_u64());
    double cloud_mean = 0.0;
    if (cloud.size() > 0) {
      for (int j = 0; j < n_dirs; ++j) {
        const Eigen::VectorXd u = detail::random_unit_vector(d, rng);
        const RadiusVectorValue rho = radius_vector_value(cloud, u);
        cloud_mean += std::pow(rho.value, d);
      }
      cloud_mean /= n_dirs;
    }
    sum += cloud_mean;
    sum_sq += cloud_mean * cloud_mean;
  }
  VolumeRatioEstimate out{};
  out.n_samples = static_cast<long>(n_clouds) * n_dirs;
  out.mean = sum / n_clouds;
  const double var = std::max(0.0, sum_sq / n_clouds - out.mean * out.mean);
  out.std_error = std::sqrt(var / n_clouds);
  return out;
}

}  // namespace ppl::polysim
