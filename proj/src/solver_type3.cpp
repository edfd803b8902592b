#include <algorithm>
#include <cmath>

#include "ncat/solver.hpp"

namespace ncat {

namespace {

SolutionCandidate to_original_order(const NormalizedProblem& np, const std::vector<Puncture>& q,
                                    const std::vector<cplx>& b) {
  const int n = static_cast<int>(np.index_map.size());
  SolutionCandidate c;
  c.q.resize(n);
  c.b.resize(n);
  c.p.resize(n);
  c.a.resize(n);
  for (int k = 0; k < n; ++k) {
    const int j = np.index_map[k];
    c.q[j] = q[k];
    c.b[j] = b[k];
    c.p[j] = np.p[k];
    c.a[j] = np.a[k];
  }
  c.frame = np.rotation.transpose();
  return c;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace

Eigen::Matrix4cd phi_matrix(cplx t, cplx p1, cplx p2, cplx p3) {
  const cplx c1 = std::conj(p1), c2 = std::conj(p2), c3 = std::conj(p3);
  const cplx d23 = p2 - p3;
  Eigen::Matrix4cd m;
  m << 0.0, -(c1 * p2 + 1.0) * (t - p3), -(c1 * p3 + 1.0) * (t - p2), c1 * (t - p2) * (t - p3),
      (c2 * p1 + 1.0) * d23, 0.0, -(c2 * p3 + 1.0) * (t - p2), c2 * d23 * (t - p2),
      (c3 * p1 + 1.0) * d23, (c3 * p2 + 1.0) * (t - p3), 0.0, c3 * d23 * (t - p3),
      -p1, -p2, -p3, 0.0;
  return m;
}

Eigen::Matrix4cd matrix_A_of_t(cplx t, cplx p1, cplx p2, cplx p3) {
  const cplx c1 = std::conj(p1), c2 = std::conj(p2), c3 = std::conj(p3);
  Eigen::Matrix4cd m;
  m << 0.0, (c1 * p2 + 1.0) / (p2 - t), (c1 * p3 + 1.0) / (p3 - t), c1,
      (c2 * p1 + 1.0) / (t - p2), 0.0, (c2 * p3 + 1.0) / (p3 - p2), c2,
      (c3 * p1 + 1.0) / (t - p3), (c3 * p2 + 1.0) / (p2 - p3), 0.0, c3,
      -p1, -p2, -p3, 0.0;
  return m;
}

Poly phi_quartic(cplx p1, cplx p2, cplx p3) {
  const double radius = 1.0 + std::max({std::abs(p1), std::abs(p2), std::abs(p3)});
  const std::vector<cplx> x = chebyshev_nodes(5, radius);
  std::vector<cplx> y;
  for (const cplx& t : x) y.push_back(phi_matrix(t, p1, p2, p3).determinant());
  std::vector<cplx> c = interpolate(x, y).coeffs();
  c.resize(5);
  const Poly phi(c);
  const double lead = std::norm(p1) * std::norm(std::conj(p2) * p3 + 1.0);
  if (lead <= 1e-12 * std::max(1.0, phi.max_norm()))
    throw Error(ErrorCode::DegenerateConfiguration, "leading coefficient of the quartic vanishes");
  return phi;
}

KernelVector kernel_B(cplx t, cplx p1, cplx p2, cplx p3) {
  const cplx c2 = std::conj(p2), c3 = std::conj(p3);
  const cplx d23 = p2 - p3;
  KernelVector k;
  k.B[0] = (c3 * p2 - c2 * p3) * d23 * (t - p2) * (t - p3);
  Eigen::Matrix3cd ap;
  ap << -std::norm(p3) * d23, c2 * p3 * d23, c3 * (c2 * p3 + 1.0) * d23,
      c3 * p2 * d23, -std::norm(p2) * d23, -c2 * (c3 * p2 + 1.0) * d23,
      p3 * (c3 * p2 + 1.0), -p2 * (c2 * p3 + 1.0), -std::norm(c2 * p3 + 1.0);
  Eigen::Vector3cd u((c2 * p1 + 1.0) * d23 * (t - p3), (c3 * p1 + 1.0) * d23 * (t - p2),
                     -p1 * (t - p2) * (t - p3));
  const Eigen::Vector3cd r = ap * u;
  k.B[1] = r[0];
  k.B[2] = r[1];
  k.B[3] = r[2];
  return k;
}

std::array<cplx, 4> assemble_b(cplx t, cplx p1, cplx p2, cplx p3, double a4) {
  const KernelVector k = kernel_B(t, p1, p2, p3);
  double scale = 0.0;
  for (const cplx& x : k.B) scale = std::max(scale, std::abs(x));
  const double cut = 1e-8 * scale;
  if (scale == 0.0 || std::abs(k.B[0]) <= cut)
    throw Error(ErrorCode::RejectedRoot, "B1 vanishes at this root");
  for (int j = 1; j < 4; ++j)
    if (std::abs(k.B[j]) <= cut) throw Error(ErrorCode::RejectedRoot, "B2 B3 B4 vanishes at this root");
  const cplx s = k.B[0] + k.B[1] + k.B[2];
  if (std::abs(s) <= cut) throw Error(ErrorCode::RejectedRoot, "B1 + B2 + B3 vanishes at this root");
  const cplx f = std::sqrt(cplx(a4) / (k.B[3] * s));
  return {k.B[0] * f, k.B[1] * f, k.B[2] * f, k.B[3] * f};
}

TildePolys tilde_polys(cplx t, cplx p1, cplx p2, cplx p3) {
  const KernelVector k = kernel_B(t, p1, p2, p3);
  const Poly zt = Poly::linear(t), z2 = Poly::linear(p2), z3 = Poly::linear(p3);
  TildePolys out;
  out.Q = k.B[0] * (z2 * z3) + k.B[1] * (zt * z3) + k.B[2] * (zt * z2);
  out.P = (p1 * k.B[0]) * (z2 * z3) + (p2 * k.B[1]) * (zt * z3) + (p3 * k.B[2]) * (zt * z2) -
          k.B[3] * (zt * z2 * z3);
  out.R = zt * z2 * z3;
  return out;
}

std::vector<SolutionCandidate> solve_type3(const FluxData& d, const SolveOptions& opt) {
  d.validate();
  if (d.n() != 4) throw Error(ErrorCode::InvalidInput, "the TYPE III solver needs four ends");
  if (classify_type(d).kind != Kind::TypeIII)
    throw Error(ErrorCode::DegenerateConfiguration, "flux data is not of TYPE III");
  const int inf = opt.infinity_index >= 0 ? opt.infinity_index : choose_infinity_end(d);
  const NormalizedProblem np = normalize_to_infinity(d, inf);
  for (int k = 0; k < 3; ++k)
    if (np.p[k].is_infinite())
      throw Error(ErrorCode::DegenerateConfiguration, "two ends share the direction sent to infinity");
  const cplx p1 = np.p[0].value(), p2 = np.p[1].value(), p3 = np.p[2].value();

  const Poly phi = phi_quartic(p1, p2, p3);
  RootOptions ro;
  ro.tol_root = opt.tol_root;
  std::vector<SolutionCandidate> out;
  for (const RootCluster& rc : distinct_roots(phi, ro)) {
    const cplx t = rc.value;
    std::array<cplx, 4> b;
    try {
      b = assemble_b(t, p1, p2, p3, np.a[3]);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::RejectedRoot) continue;
      throw;
    }
    if (std::abs(t - p2) < 1e-10 * (1.0 + std::abs(t)) || std::abs(t - p3) < 1e-10 * (1.0 + std::abs(t)))
      continue;
    SolutionCandidate c = to_original_order(np, {Puncture(t), Puncture(p2), Puncture(p3), Puncture::infinity()},
                                            {b[0], b[1], b[2], b[3]});
    c.origin = "type3";
    const VerificationReport rep = verify_solution(c, opt.tol_residual);
    if (!rep.single_valued || max_abs(rep.weight_errors) > 1e-8) continue;
    const TildePolys tp = tilde_polys(t, p1, p2, p3);
    const ResultantTest psi = resultant_test(tp.P, tp.Q);
    c.branched = psi.vanishes || std::max(tp.P.degree(), tp.Q.degree()) < 3;
    out.push_back(std::move(c));
  }
  sort_candidates(out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].label = "type3-" + std::to_string(i + 1);
  return out;
}

}  // namespace ncat
