#pragma once

// The residue system for evenly branched n-end catenoids: matrix A,
// closed-form end residues, verification and Weierstrass data.

#include <optional>
#include <string>
#include <vector>

#include "ncat/poly.hpp"
#include "ncat/types.hpp"

namespace ncat {

/// One solution (q, b, p, a) of the algebraic system. The stereographic
/// points p live in the solver's working frame; `frame` maps that frame
/// back to the caller's coordinates (original normal = frame * nu(p_j)).
struct SolutionCandidate {
  std::vector<Puncture> q;
  std::vector<cplx> b;
  std::vector<StereoPoint> p;
  std::vector<double> a;
  Mat3 frame = Mat3::Identity();
  std::string origin;
  std::string label;
  /// Branch status when the producing solver determined it.
  std::optional<bool> branched;

  int n() const { return static_cast<int>(q.size()); }
  /// Index with q = p = infinity, or -1.
  int infinity_index() const;
  /// Throws InvalidInput / CoincidentPunctures on malformed data.
  void validate() const;
};

/// n x n matrix of the second residue equation. Row/column of an index at
/// infinity uses conj(p_j) in its column and -p_k in its row.
Eigen::MatrixXcd build_matrix_A(const std::vector<StereoPoint>& p, const std::vector<Puncture>& q);

struct EndResidues {
  cplx omega;
  cplx g_omega;
  cplx g2_omega;
};

/// Closed-form residues of omega, g omega, g^2 omega at a finite end j.
/// Throws InfinityEnd when q_j is the point at infinity.
EndResidues end_residues(const SolutionCandidate& c, int j);
/// Residues at every end; the end at infinity (if any) gets minus the sum
/// of the finite residues.
std::vector<EndResidues> all_end_residues(const SolutionCandidate& c);

/// Flux vector -2 pi Re(Res((1-g^2)w), Res(i(1+g^2)w), Res(2gw)), in the
/// working frame.
Vec3 flux_from_residues(const EndResidues& r);

/// Implied weight b_j * sum_k b_k (p_k - p_j)/(q_k - q_j) (complex; the
/// imaginary part measures failure of reality).
cplx implied_weight(const SolutionCandidate& c, int j);

struct VerificationReport {
  double reduction2_residual = 0.0;
  double red_residual = 0.0;
  std::vector<double> weight_errors;
  std::vector<double> flux_vector_errors;
  double flux_sum_norm = 0.0;
  bool single_valued = false;
  /// Tolerance used to decide single_valued.
  double tolerance = 0.0;
};

VerificationReport verify_solution(const SolutionCandidate& c, double tol_residual = 1e-9);

/// g = P/Q and omega = -c (Q/R)^2 dz with c = omega_scale.
struct WeierstrassData {
  Poly P;
  Poly Q;
  Poly R;
  cplx omega_scale = 1.0;
  std::vector<Puncture> punctures;
  /// Degree of g as a rational function (common factors removed).
  int gauss_degree = 0;
  /// max(deg P, deg Q) before cancellation.
  int raw_degree = 0;
  bool branched = false;
  cplx resultant = 0.0;
  Mat3 frame = Mat3::Identity();

  int n() const { return static_cast<int>(punctures.size()); }
};

WeierstrassData weierstrass_from_solution(const SolutionCandidate& c);

/// Fills gauss_degree, raw_degree, branched and resultant from P, Q and the
/// number of ends.
void annotate_branching(WeierstrassData& w);

}  // namespace ncat
