#pragma once

// Constructive solvers for 4-end data of TYPE III and II, the parallel-end
// (TYPE I) families and the named closed-form examples.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncat/flux.hpp"
#include "ncat/poly.hpp"
#include "ncat/residues.hpp"

namespace ncat {

struct SolveOptions {
  double tol_residual = 1e-9;
  double tol_root = 1e-9;
  std::uint64_t seed = 20240611;
  /// Forces the end sent to infinity in the TYPE III solver (-1: automatic).
  int infinity_index = -1;
  /// When false, the TYPE II solver runs even on the antipodal-and-parallel
  /// pattern instead of refusing it.
  bool screen_obstructions = true;
  int newton_restarts = 50;
};

struct NormalizedProblem {
  Mat3 rotation = Mat3::Identity();
  /// index_map[k] = original index placed at position k; the last entry
  /// is the end at infinity.
  std::vector<int> index_map;
  std::vector<StereoPoint> p;
  std::vector<double> a;
};

/// Index whose vector maximizes the minimum distance to the others.
int choose_infinity_end(const FluxData& d);
NormalizedProblem normalize_to_infinity(const FluxData& d, int infinity_index);

// ---- TYPE III (n = 4) ----

/// (p2-p3)^2 (t-p2)^2 (t-p3)^2 det A(t) for q = (t, p2, p3, inf).
/// Throws DegenerateConfiguration when the leading coefficient vanishes.
Poly phi_quartic(cplx p1, cplx p2, cplx p3);

/// The 4x4 matrix whose determinant is phi_quartic, evaluated at t.
Eigen::Matrix4cd phi_matrix(cplx t, cplx p1, cplx p2, cplx p3);

/// A(t) with q = (t, p2, p3, inf) and p4 = inf.
Eigen::Matrix4cd matrix_A_of_t(cplx t, cplx p1, cplx p2, cplx p3);

struct KernelVector {
  std::array<cplx, 4> B;
};
KernelVector kernel_B(cplx t, cplx p1, cplx p2, cplx p3);

/// b with b4 (b1 + b2 + b3) = a4 on the principal square-root branch.
/// Throws RejectedRoot when B2 B3 B4 or B1 + B2 + B3 vanishes.
std::array<cplx, 4> assemble_b(cplx t, cplx p1, cplx p2, cplx p3, double a4);

struct TildePolys {
  Poly P;
  Poly Q;
  Poly R;
};
TildePolys tilde_polys(cplx t, cplx p1, cplx p2, cplx p3);

std::vector<SolutionCandidate> solve_type3(const FluxData& d, const SolveOptions& opt = {});

// ---- TYPE II (n = 4) ----

/// s-quadratic whose roots give q1 + 1/q1 for q = (q1, -q1, 1, -1).
Poly phi_type2(double p1, double p2, double p3, double p4);

std::vector<SolutionCandidate> solve_type2(const FluxData& d, const SolveOptions& opt = {});

// ---- TYPE I ----

/// max_j |sum_{k != j} a_k/(q_k - q_j)| relative to sum |a_k/(q_k-q_j)|.
double eqf_residual(const std::vector<cplx>& q, const std::vector<double>& a);

/// Parallel-end family: one end at infinity with weight sum_k a_k, the
/// others at the finite punctures q with weights a.
struct FamilySolution {
  /// Per original index; the odd end holds infinity.
  std::vector<Puncture> q;
  std::vector<double> a;
  int infinity_index = 0;
  Mat3 frame = Mat3::Identity();
  double eqf_residual = 0.0;
  std::string method;

  /// Member with parameter t != 0: g_t = -1/(t f), omega_t = -t f^2 dz.
  SolutionCandidate candidate(cplx t) const;
  WeierstrassData weierstrass(cplx t) const;
};

FamilySolution solve_type1_family(const FluxData& d, const SolveOptions& opt = {});

/// Solves the finite-puncture system for weights a (a.size() >= 1); the
/// result starts with q = 0 (and q = 1 when a.size() >= 2).
std::vector<cplx> solve_eqf(const std::vector<double>& a, const SolveOptions& opt, std::string* method = nullptr);

/// Closed-form punctures for four finite ends; sign selects the sixth root
/// of unity (1 + sign*sqrt(3) i)/2. Empty when a denominator vanishes.
std::vector<cplx> eqf_four_finite(const std::vector<double>& a, int sign);

// ---- dispatch ----

struct SolveResult {
  TypeClass type;
  ObstructionReport obstructions;
  std::vector<SolutionCandidate> solutions;
  std::optional<FamilySolution> family;
  std::string note;
};

/// Classifies, screens and dispatches. Throws InvalidInput for unbalanced
/// data; unsupported or obstructed inputs yield an empty result with a note.
SolveResult solve(const FluxData& d, const SolveOptions& opt = {});

/// Puts candidates into the deterministic order (Re q1, Im q1).
void sort_candidates(std::vector<SolutionCandidate>& c);

// ---- congruence ----

/// Flux data of a candidate in the caller's frame.
FluxData candidate_flux(const SolutionCandidate& c);

/// True when the two candidates have the same weights and flux directions up
/// to an orthogonal map, and their punctures agree up to a Moebius map
/// compatible with the end matching.
bool congruent(const SolutionCandidate& x, const SolutionCandidate& y, double tol = 1e-7);

// ---- named examples ----

struct NamedExample {
  std::vector<SolutionCandidate> candidates;
  std::optional<FamilySolution> family;
  cplx family_t = 1.0;
  /// Set for data that is not an n-end catenoid (e.g. flat ends).
  bool flagged = false;
  std::string note;
};

/// Names: tetrahedral, tetrahedral-flat, square-flux (p), jorge-meeks,
/// parallel4 (t, a2, a3), parallel5 (t, sign, a2, a3, a4), zm (m, t).
NamedExample named_example(const std::string& name, const std::map<std::string, double>& params);

/// Distinct roots of (p^2-1) q^4 - 4p q^3 + 4p q + (p^2-1), excluding q = 0
/// and q^4 = -1, ordered by (real, imag).
std::vector<cplx> square_flux_roots(double p);

/// Candidate of the symmetric four-end data at parameters (p, q).
/// Throws ParamOutOfRange when r^2 is infinite or zero.
SolutionCandidate square_flux_candidate(double p, cplx q);

/// Cross-ratio (z1, z2; z3, z4) = (z1-z3)(z2-z4)/((z1-z4)(z2-z3)); factors
/// containing infinity are dropped.
cplx cross_ratio(const Puncture& z1, const Puncture& z2, const Puncture& z3, const Puncture& z4);

}  // namespace ncat
