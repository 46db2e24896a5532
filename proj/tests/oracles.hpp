#pragma once

// Test-side oracles, kept independent of the library's evaluation paths:
// big-float log-gamma (MPFR), adaptive-Simpson quadrature for the incomplete
// beta integral, brute-force hull extraction, and a rasterized grid check
// for circle coverage.

#include <Eigen/Dense>
#include <vector>

#include "ppl/covering.hpp"

namespace oracle {

/// ln Gamma(z) at 256-bit precision.
double lgamma_mpfr(double z);

/// ln \int_0^x v^{p-1}(1-v)^{q-1} dv by adaptive Simpson on the rescaled
/// linear integrand, with knots packed around v = 0, the interior mode, and
/// v = 1 - 2^{-k} near the right endpoint.
double log_beta_quadrature(double x, double p, double q);

/// Indices of the extreme points of a planar set, O(n^3): p is extreme iff
/// some line through p and another point has all remaining points strictly
/// on one side.
std::vector<int> extreme_points_bruteforce(const std::vector<Eigen::Vector2d>& pts);

/// Coverage check by rasterizing arcs onto a uniform grid of `grid` angles.
bool circle_covered_grid(const ppl::covering::ArcSet& arcs, int grid);

}  // namespace oracle
