#include <algorithm>
#include <cmath>
#include <numeric>

#include "ncat/solver.hpp"

namespace ncat {

namespace {

/// |b_j b_k| sqrt((1+|p_j|^2)(1+|p_k|^2)) / |q_j - q_k| for finite ends;
/// unchanged by Moebius maps of the domain and by isometries of space.
double pair_invariant(const SolutionCandidate& c, int j, int k) {
  const cplx qj = c.q[j].value(), qk = c.q[k].value();
  const double pj = std::norm(c.p[j].value()), pk = std::norm(c.p[k].value());
  return std::abs(c.b[j] * c.b[k]) * std::sqrt((1.0 + pj) * (1.0 + pk)) / std::abs(qj - qk);
}

bool close(cplx x, cplx y, double rel) { return std::abs(x - y) <= rel * (1.0 + std::abs(x) + std::abs(y)); }

}  // namespace

FluxData candidate_flux(const SolutionCandidate& c) {
  FluxData d;
  for (int j = 0; j < c.n(); ++j) d.vectors.push_back(c.frame * inverse_stereographic(c.p[j]));
  d.weights = c.a;
  return d;
}

cplx cross_ratio(const Puncture& z1, const Puncture& z2, const Puncture& z3, const Puncture& z4) {
  auto diff = [](const Puncture& x, const Puncture& y) -> std::optional<cplx> {
    if (x.is_infinite() || y.is_infinite()) return std::nullopt;
    return x.value() - y.value();
  };
  cplx num = 1.0, den = 1.0;
  if (auto d = diff(z1, z3)) num *= *d;
  if (auto d = diff(z2, z4)) num *= *d;
  if (auto d = diff(z1, z4)) den *= *d;
  if (auto d = diff(z2, z3)) den *= *d;
  return num / den;
}

bool congruent(const SolutionCandidate& x, const SolutionCandidate& y, double tol) {
  const int n = x.n();
  if (n != y.n()) return false;
  const FluxData fx = candidate_flux(x), fy = candidate_flux(y);
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    bool weights_ok = true;
    for (int j = 0; j < n && weights_ok; ++j)
      weights_ok = std::abs(x.a[j] - y.a[sigma[j]]) <= tol * std::max(1.0, std::abs(x.a[j]));
    if (!weights_ok) continue;

    bool invariants_ok = true;
    for (int j = 0; j < n && invariants_ok; ++j)
      for (int k = j + 1; k < n && invariants_ok; ++k) {
        if (x.q[j].is_infinite() || x.q[k].is_infinite() || y.q[sigma[j]].is_infinite() ||
            y.q[sigma[k]].is_infinite())
          continue;
        const double u = pair_invariant(x, j, k), v = pair_invariant(y, sigma[j], sigma[k]);
        invariants_ok = std::abs(u - v) <= 1e-6 * (u + v);
      }
    if (!invariants_ok) continue;

    // Orthogonal Procrustes, trying both orientations.
    Mat3 h = Mat3::Zero();
    for (int j = 0; j < n; ++j) h += fx.vectors[j] * fy.vectors[sigma[j]].transpose();
    Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    for (double flip : {1.0, -1.0}) {
      const Mat3 rot = svd.matrixV() * Eigen::Vector3d(1.0, 1.0, flip).asDiagonal() * svd.matrixU().transpose();
      bool aligned = true;
      for (int j = 0; j < n && aligned; ++j) aligned = (rot * fx.vectors[j] - fy.vectors[sigma[j]]).norm() <= tol;
      if (!aligned) continue;
      const bool improper = rot.determinant() < 0.0;
      bool conformal = true;
      for (int k = 3; k < n && conformal; ++k) {
        cplx cx = cross_ratio(x.q[0], x.q[1], x.q[2], x.q[k]);
        const cplx cy = cross_ratio(y.q[sigma[0]], y.q[sigma[1]], y.q[sigma[2]], y.q[sigma[k]]);
        if (improper) cx = std::conj(cx);
        conformal = close(cx, cy, 1e-6);
      }
      if (conformal) return true;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return false;
}

}  // namespace ncat
