#pragma once

// Evaluation of Weierstrass data: surface points, contour oracles for flux
// and weights, the induced metric, and triangulated meshes.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ncat/quadrature.hpp"
#include "ncat/residues.hpp"

namespace ncat {

struct SamplingConfig {
  /// Base point of the integration; chosen automatically when empty.
  std::optional<cplx> base_point;
  /// Cap on contour and end-patch radii.
  double end_truncation = 0.5;
  int radial_steps = 8;
  int angular_steps = 24;
  /// Bulk grid resolution per side; 0 leaves only the end patches.
  int grid_steps = 16;
  int contour_samples = 1024;
  /// Absolute tolerance of the path quadrature.
  double integration_tol = 1e-10;
  /// Growth of sqrt(metric) across an end patch used to pick its inner radius.
  double metric_growth = 100.0;

  void validate() const;
};

struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  /// End index for vertices in an end patch, -1 in the bulk.
  std::vector<int> end_labels;
  std::vector<Vec3> normals;
  /// Domain parameter of each vertex.
  std::vector<cplx> params;

  void validate() const;
};

struct WeierstrassValue {
  StereoPoint g;
  cplx omega_density;
};

/// g(z) and the coefficient of dz in omega. Throws AtPuncture.
WeierstrassValue eval_weierstrass(const WeierstrassData& w, cplx z);

/// (1 + |g|^2)^2 |omega/dz|^2. Throws AtPuncture.
double metric_density(const WeierstrassData& w, cplx z);

/// Unit normal at z in the data's output frame.
Vec3 normal_at(const WeierstrassData& w, cplx z);

/// The three coefficients of ((1-g^2) w, i(1+g^2) w, 2 g w) with respect to dz.
Vec3c form_density(const WeierstrassData& w, cplx z);

/// Base point used when the config leaves it empty.
cplx default_base_point(const WeierstrassData& w, const SamplingConfig& cfg);
/// cfg.base_point or the default, checked against the punctures.
cplx base_point(const WeierstrassData& w, const SamplingConfig& cfg);

/// Re of the integral from the base point to z, rotated into the output frame.
Vec3 integrate_point(const WeierstrassData& w, cplx z, const SamplingConfig& cfg);

/// Integral of the form triple from a to b along a polyline avoiding the
/// punctures (complex values, working frame).
Vec3c integrate_path(const WeierstrassData& w, cplx a, cplx b, const SamplingConfig& cfg);

/// Radius of the contour around end j (in the chart 1/z for an end at infinity).
double contour_radius(const WeierstrassData& w, int j, const SamplingConfig& cfg);

/// Counter-clockwise period of the form triple around end j (working frame).
Vec3c end_period(const WeierstrassData& w, int j, const SamplingConfig& cfg);

/// -Im of the period, rotated into the output frame.
Vec3 contour_flux(const WeierstrassData& w, int j, const SamplingConfig& cfg);

/// Re of the period; zero for single-valued data.
Vec3 loop_closure(const WeierstrassData& w, int j, const SamplingConfig& cfg);

/// Coefficient of the double pole of omega dg at end j.
cplx hopf_coefficient(const WeierstrassData& w, int j, const SamplingConfig& cfg);
double hopf_weight(const WeierstrassData& w, int j, const SamplingConfig& cfg);

/// Contour-quadrature cross-check of a candidate, end by end.
struct OracleReport {
  std::vector<Vec3> flux;
  /// |flux - 4 pi a nu(p)| / (4 pi max(1, |a|))
  std::vector<double> flux_errors;
  std::vector<cplx> hopf;
  /// |Re hopf - a|
  std::vector<double> hopf_errors;
  /// |Re period| / |period|
  std::vector<double> closure;
  /// |sum flux| / sum |flux|
  double total_flux = 0.0;

  double max_flux_error() const;
  double max_hopf_error() const;
  double max_hopf_imag() const;
  double max_closure() const;
  /// Flux 1e-6, Hopf weight 1e-8, total flux 1e-8, closure 1e-6.
  bool passed() const;
};

OracleReport check_oracles(const SolutionCandidate& c, const SamplingConfig& cfg);

SurfaceMesh sample_surface(const WeierstrassData& w, const SamplingConfig& cfg);

/// ASCII OBJ with v, vn and f lines. Throws SinkFailure.
void export_obj(const SurfaceMesh& m, std::ostream& out);

}  // namespace ncat
