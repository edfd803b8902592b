#pragma once

#include <functional>

#include "ncat/types.hpp"

namespace ncat {

using Vec3c = Eigen::Vector3cd;

struct QuadResult {
  Vec3c value = Vec3c::Zero();
  double error = 0.0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) over [a, b] for a vector of three complex
/// components. Intervals are bisected until |K15 - G7| <= max(abs_tol,
/// rel_tol |I|) on each piece (tolerance split evenly between halves).
/// Throws NonConvergence beyond max_depth bisections.
QuadResult integrate_gk15(const std::function<Vec3c(double)>& f, double a, double b, double abs_tol,
                          double rel_tol = 0.0, int max_depth = 40);

/// Trapezoid rule on the circle center + r e^{i theta}: returns the
/// contour integral of f(z) dz with n equally spaced samples.
Vec3c circle_integral(const std::function<Vec3c(cplx)>& f, cplx center, double radius, int n);

}  // namespace ncat
