#pragma once

#include <vector>

#include "ncat/surface.hpp"

namespace ncat::detail {

/// Local coordinate on the sphere: s = z, or s = 1/z when inverted. P, Q
/// and R are rewritten so that g = P/Q and omega = -c (Q/R)^2 dz hold in s.
struct Chart {
  Poly P, Q, R;
  Poly dP, dQ;
  cplx c = 1.0;
  bool inverted = false;
  /// Punctures in the local coordinate.
  std::vector<cplx> punctures;

  static Chart finite(const WeierstrassData& w);
  static Chart at_infinity(const WeierstrassData& w);

  /// Throws AtPuncture when s is (numerically) a puncture.
  void check(cplx s) const;
  /// Coefficients of the form triple with respect to ds.
  Vec3c density(cplx s) const;
  double metric(cplx s) const;
  /// Unit normal in the working frame.
  Vec3 normal(cplx s) const;
  /// omega dg / ds^2.
  cplx hopf(cplx s) const;
  /// Integral of the form triple along a polyline from a to b that keeps
  /// clear of every puncture.
  Vec3c path(cplx a, cplx b, double tol) const;
};

/// Placement of end patches and the bulk region in the z-plane.
struct Layout {
  std::vector<int> finite_ends;
  std::vector<double> patch_radius;
  int infinity_end = -1;
  /// Patch radius in the 1/z chart and the matching z-radius of the bulk disk.
  double inf_radius = 0.0;
  double bulk_radius = 0.0;
  Eigen::Vector2d lo, hi;

  Layout(const WeierstrassData& w, const SamplingConfig& cfg);
  bool in_bulk(cplx z) const;
};

}  // namespace ncat::detail
