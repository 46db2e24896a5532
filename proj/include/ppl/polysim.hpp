#pragma once

// Direct simulation of the Poisson polytope at small dimension: Poisson
// sampling in the ball, support-function evaluation, 2-D projected hull
// inradius, and the LP-backed radius-vector function.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ppl/rng.hpp"

namespace ppl::polysim {

/// A Poisson sample in the unit ball; one point per row.
struct PointCloud {
  int d = 0;
  Eigen::MatrixXd points;  ///< N x d, every row has norm <= 1 + 1e-12
  std::uint64_t seed = 0;

  long size() const { return points.rows(); }
};

/// Convex polygon, vertices in counterclockwise order (possibly degenerate:
/// 0, 1 or 2 vertices).
struct Polygon2D {
  std::vector<Eigen::Vector2d> vertices;
};

struct RadiusVectorValue {
  double value;
  bool origin_outside;  ///< true when the hull does not contain the origin
};

struct VolumeRatioEstimate {
  double mean;
  double std_error;
  long n_samples;
};

/// N ~ Poisson(e^L) points i.i.d. uniform in the d-ball, each generated as
/// U^{1/d} G/|G|.  Deterministic in (d, L, seed).  Requires e^L <= 1e7.
PointCloud sample_poisson_ball(int d, double L, std::uint64_t seed);

/// max_i <u, x_i>; -inf on the empty cloud.  u must be unit length.
double support_value(const PointCloud& cloud, const Eigen::VectorXd& u);

/// Convex hull by monotone chain; collinear points are dropped so the vertex
/// sequence is strictly convex.  Coincident inputs are deduplicated at 1e-12.
Polygon2D hull2d(std::vector<Eigen::Vector2d> points);

/// Signed distance from the origin to the polygon boundary through its edge
/// support lines: the inradius about the origin when the origin is inside,
/// a value <= 0 otherwise.  -inf for degenerate polygons.
double polygon_origin_inradius(const Polygon2D& poly);

/// inf over the first-2-coordinates circle of the support function of the
/// projected cloud; equals the origin inradius of the projected hull.
/// Only m = 2 is supported.
double sf_dm_via_projection(const PointCloud& cloud, int m = 2);

/// Largest t with t u in conv(points), by bisection over an LP membership
/// test (two-phase simplex, Bland's rule).  Returns 0 with origin_outside
/// set when the hull misses the origin.
RadiusVectorValue radius_vector_value(const PointCloud& cloud, const Eigen::VectorXd& u,
                                      double tol = 1e-9);

/// Monte Carlo estimate of E[rho^d] = E|K| / kappa_d over independent clouds
/// and uniform directions; the standard error is computed across clouds.
VolumeRatioEstimate volume_ratio_estimate(int d, double L, int n_dirs, int n_clouds,
                                          std::uint64_t seed);

namespace detail {
/// Is `target` a convex combination of the rows of `points`?  Phase-1
/// simplex feasibility with Bland's rule; `tol` bounds the residual.
bool in_convex_hull(const Eigen::MatrixXd& points, const Eigen::VectorXd& target,
                    double tol = 1e-9);
/// Uniform direction on S^{d-1}.
Eigen::VectorXd random_unit_vector(int d, Rng& rng);
}  // namespace detail

}  // namespace ppl::polysim
