#include <algorithm>
#include <cmath>
#include <numbers>

#include "ncat/flux.hpp"
#include "ncat/residues.hpp"

namespace ncat {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

/// Accumulates lhs = sum of terms and reports |lhs - rhs| relative to the
/// magnitude of everything involved.
struct Equation {
  cplx lhs{};
  double mag = 0.0;

  void add(cplx t) {
    lhs += t;
    mag += std::abs(t);
  }
  double residual(cplx rhs) const {
    const double den = mag + std::abs(rhs);
    if (den == 0.0) return 0.0;
    return std::abs(lhs - rhs) / den;
  }
};

}  // namespace

int SolutionCandidate::infinity_index() const {
  for (int j = 0; j < n(); ++j)
    if (q[j].is_infinite()) return j;
  return -1;
}

void SolutionCandidate::validate() const {
  const auto m = q.size();
  if (m < 2 || b.size() != m || p.size() != m || a.size() != m)
    throw Error(ErrorCode::InvalidInput, "candidate arrays must share a length >= 2");
  int infinite = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (q[j].is_infinite() != p[j].is_infinite())
      throw Error(ErrorCode::InvalidInput, "an end at infinity needs p = q = infinity");
    if (q[j].is_infinite()) ++infinite;
  }
  if (infinite > 1) throw Error(ErrorCode::InvalidInput, "at most one end may sit at infinity");
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j + 1; k < m; ++k)
      if (chordal_distance(q[j], q[k]) <= 1e-10)
        throw Error(ErrorCode::CoincidentPunctures, "punctures must be distinct");
}

Eigen::MatrixXcd build_matrix_A(const std::vector<StereoPoint>& p, const std::vector<Puncture>& q) {
  const int n = static_cast<int>(q.size());
  if (static_cast<int>(p.size()) != n) throw Error(ErrorCode::InvalidInput, "p and q differ in length");
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (chordal_distance(q[j], q[k]) <= 1e-10)
        throw Error(ErrorCode::CoincidentPunctures, "punctures must be distinct");
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      if (q[k].is_infinite())
        A(j, k) = std::conj(p[j].value());
      else if (q[j].is_infinite())
        A(j, k) = -p[k].value();
      else
        A(j, k) = (std::conj(p[j].value()) * p[k].value() + 1.0) / (q[k].value() - q[j].value());
    }
  return A;
}

EndResidues end_residues(const SolutionCandidate& c, int j) {
  if (c.q[j].is_infinite()) throw Error(ErrorCode::InfinityEnd, "closed-form residues need a finite end");
  const cplx qj = c.q[j].value(), pj = c.p[j].value(), bj = c.b[j];
  cplx s0{}, s1{}, s2{};
  for (int k = 0; k < c.n(); ++k) {
    if (k == j) continue;
    if (c.q[k].is_infinite()) {
      s1 -= c.b[k];
      s2 -= c.b[k];
      continue;
    }
    const cplx d = qj - c.q[k].value();
    const cplx pk = c.p[k].value();
    s0 += c.b[k] / d;
    s1 += c.b[k] * (pj + pk) / d;
    s2 += c.b[k] * pk / d;
  }
  return {-2.0 * bj * s0, -bj * s1, -2.0 * bj * pj * s2};
}

std::vector<EndResidues> all_end_residues(const SolutionCandidate& c) {
  std::vector<EndResidues> out(c.n());
  const int inf = c.infinity_index();
  EndResidues sum{};
  for (int j = 0; j < c.n(); ++j) {
    if (j == inf) continue;
    out[j] = end_residues(c, j);
    sum.omega += out[j].omega;
    sum.g_omega += out[j].g_omega;
    sum.g2_omega += out[j].g2_omega;
  }
  if (inf >= 0) out[inf] = {-sum.omega, -sum.g_omega, -sum.g2_omega};
  return out;
}

Vec3 flux_from_residues(const EndResidues& r) {
  const double f = -2.0 * std::numbers::pi;
  return Vec3(f * (r.omega - r.g2_omega).real(),
              f * (cplx(0.0, 1.0) * (r.omega + r.g2_omega)).real(),
              f * (2.0 * r.g_omega).real());
}

cplx implied_weight(const SolutionCandidate& c, int j) {
  cplx s{};
  if (c.q[j].is_infinite()) {
    for (int k = 0; k < c.n(); ++k)
      if (k != j) s += c.b[k];
    return c.b[j] * s;
  }
  const cplx qj = c.q[j].value(), pj = c.p[j].value();
  for (int k = 0; k < c.n(); ++k) {
    if (k == j) continue;
    if (c.q[k].is_infinite())
      s += c.b[k];
    else
      s += c.b[k] * (c.p[k].value() - pj) / (c.q[k].value() - qj);
  }
  return c.b[j] * s;
}

VerificationReport verify_solution(const SolutionCandidate& c, double tol_residual) {
  c.validate();
  const int n = c.n();
  VerificationReport rep;
  rep.tolerance = tol_residual;

  for (int j = 0; j < n; ++j) {
    Equation w, kern, red1, red2;
    const cplx bj = c.b[j];
    if (c.q[j].is_infinite()) {
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        const cplx pk = c.p[k].value();
        w.add(bj * c.b[k]);
        kern.add(-bj * pk * c.b[k]);
        red1.add(bj * pk * c.b[k]);
        red2.add(bj * c.b[k]);
      }
      rep.reduction2_residual = std::max({rep.reduction2_residual, w.residual(c.a[j]), kern.residual(0.0)});
      rep.red_residual = std::max({rep.red_residual, red1.residual(0.0), red2.residual(c.a[j])});
      continue;
    }
    const cplx qj = c.q[j].value(), pj = c.p[j].value();
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      if (c.q[k].is_infinite()) {
        w.add(bj * c.b[k]);
        kern.add(bj * std::conj(pj) * c.b[k]);
        red2.add(-bj * c.b[k]);
        continue;
      }
      const cplx qk = c.q[k].value(), pk = c.p[k].value();
      w.add(bj * c.b[k] * (pk - pj) / (qk - qj));
      kern.add(bj * c.b[k] * (std::conj(pj) * pk + 1.0) / (qk - qj));
      red1.add(bj * c.b[k] / (qj - qk));
      red2.add(bj * c.b[k] * (pj + pk) / (qj - qk));
    }
    const double m = std::norm(pj);
    rep.reduction2_residual = std::max({rep.reduction2_residual, w.residual(c.a[j]), kern.residual(0.0)});
    rep.red_residual = std::max({rep.red_residual, red1.residual(c.a[j] * std::conj(pj) / (m + 1.0)),
                                 red2.residual(c.a[j] * (m - 1.0) / (m + 1.0))});
  }

  const auto res = all_end_residues(c);
  Vec3 total = Vec3::Zero();
  double total_mag = 0.0;
  rep.weight_errors.resize(n);
  rep.flux_vector_errors.resize(n);
  for (int j = 0; j < n; ++j) {
    const double aj = c.a[j];
    rep.weight_errors[j] = std::abs(implied_weight(c, j) - aj) / std::max(1.0, std::abs(aj));
    const Vec3 expected = kFourPi * aj * inverse_stereographic(c.p[j]);
    const Vec3 got = flux_from_residues(res[j]);
    const double scale = aj != 0.0 ? kFourPi * std::abs(aj) : kFourPi;
    rep.flux_vector_errors[j] = (got - expected).norm() / scale;
    total += expected;
    total_mag += kFourPi * std::abs(aj);
  }
  rep.flux_sum_norm = total_mag > 0.0 ? total.norm() / total_mag : total.norm();
  rep.single_valued = rep.reduction2_residual < tol_residual;
  return rep;
}

void annotate_branching(WeierstrassData& w) {
  const double scale = std::max(w.P.max_norm(), w.Q.max_norm());
  auto trim = [scale](const Poly& f) {
    std::vector<cplx> c = f.coeffs();
    while (!c.empty() && std::abs(c.back()) <= 1e-10 * scale) c.pop_back();
    return Poly(std::move(c));
  };
  const Poly P = trim(w.P), Q = trim(w.Q);
  if (Q.is_zero()) throw Error(ErrorCode::DegenerateData, "Q vanishes identically");
  w.raw_degree = std::max(P.degree(), Q.degree());
  if (P.is_zero()) {
    w.gauss_degree = 0;
    w.resultant = 0.0;
    w.branched = true;
    return;
  }
  const ResultantTest rt = resultant_test(P, Q);
  w.resultant = rt.value;
  const int common = rt.vanishes ? gcd(P, Q).degree() : 0;
  w.gauss_degree = w.raw_degree - std::max(common, 0);
  w.branched = rt.vanishes || w.raw_degree < w.n() - 1;
}

WeierstrassData weierstrass_from_solution(const SolutionCandidate& c) {
  c.validate();
  const int n = c.n();
  const int inf = c.infinity_index();
  std::vector<cplx> finite;
  for (int k = 0; k < n; ++k)
    if (k != inf) finite.push_back(c.q[k].value());

  WeierstrassData w;
  w.punctures = c.q;
  w.frame = c.frame;
  w.R = Poly::from_roots(finite);
  for (int j = 0; j < n; ++j) {
    if (j == inf) continue;
    std::vector<cplx> others;
    for (int k = 0; k < n; ++k)
      if (k != j && k != inf) others.push_back(c.q[k].value());
    const Poly Rj = Poly::from_roots(others);
    w.Q += c.b[j] * Rj;
    w.P += (c.p[j].value() * c.b[j]) * Rj;
  }
  if (inf >= 0) w.P -= c.b[inf] * w.R;
  annotate_branching(w);
  return w;
}

}  // namespace ncat
