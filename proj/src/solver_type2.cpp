#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "ncat/solver.hpp"

namespace ncat {

namespace {

/// c11 x^2 + c12 x y + c22 y^2
struct QuadForm {
  cplx c11, c12, c22;
  cplx operator()(cplx x, cplx y) const { return c11 * x * x + c12 * x * y + c22 * y * y; }
  QuadForm swapped() const { return {c22, c12, c11}; }
};

struct Pair {
  cplx b1, b2;
};

/// Solutions of f(b1,b2) = a, g(b1,b2) = c with b1 b2 != 0, by eliminating
/// b2 through the resultant of the two quadratics.
std::vector<Pair> solve_two_conics(const QuadForm& f, double a, const QuadForm& g, double c, double tol_root) {
  const double scale = std::max({std::abs(f.c11), std::abs(f.c12), std::abs(f.c22), std::abs(g.c11),
                                 std::abs(g.c12), std::abs(g.c22)});
  if (scale == 0.0) return {};
  if (std::max(std::abs(f.c22), std::abs(g.c22)) < 1e-10 * scale &&
      std::max(std::abs(f.c11), std::abs(g.c11)) >= 1e-10 * scale) {
    std::vector<Pair> s = solve_two_conics(f.swapped(), a, g.swapped(), c, tol_root);
    for (Pair& p : s) std::swap(p.b1, p.b2);
    return s;
  }
  // Coefficients in b2 as polynomials in b1.
  const Poly x = Poly({0.0, 1.0});
  const Poly a2 = Poly::constant(f.c22), a1 = f.c12 * x, a0 = f.c11 * (x * x) - Poly::constant(a);
  const Poly b2 = Poly::constant(g.c22), b1 = g.c12 * x, b0 = g.c11 * (x * x) - Poly::constant(c);
  const Poly u = a2 * b0 - a0 * b2;
  const Poly res = u * u - (a2 * b1 - a1 * b2) * (a1 * b0 - a0 * b1);
  const Poly rt = res.trimmed(1e-12);
  if (rt.degree() < 1) return {};
  RootOptions ro;
  ro.tol_root = tol_root;
  std::vector<Pair> out;
  for (const RootCluster& rc : distinct_roots(rt, ro)) {
    const cplx v1 = rc.value;
    if (std::abs(v1) < 1e-10) continue;
    // Candidate b2 from whichever quadratic is better conditioned.
    const bool use_f = std::abs(f.c22) >= std::abs(g.c22);
    const QuadForm& h = use_f ? f : g;
    const double rhs = use_f ? a : c;
    std::vector<cplx> cand;
    if (std::abs(h.c22) > 1e-14 * scale) {
      const Poly qd({h.c11 * v1 * v1 - rhs, h.c12 * v1, h.c22});
      cand = roots(qd, ro);
    } else if (std::abs(h.c12 * v1) > 0.0) {
      cand.push_back((rhs - h.c11 * v1 * v1) / (h.c12 * v1));
    }
    const QuadForm& other = use_f ? g : f;
    const double orhs = use_f ? c : a;
    double best = 1e300;
    cplx pick{};
    for (const cplx& v2 : cand) {
      const double r = std::abs(other(v1, v2) - orhs);
      if (r < best) {
        best = r;
        pick = v2;
      }
    }
    if (best == 1e300 || std::abs(pick) < 1e-10) continue;
    out.push_back({v1, pick});
  }
  return out;
}

/// Makes the first non-negligible entry have positive real part (or
/// positive imaginary part when it is purely imaginary).
void canonical_sign(std::vector<cplx>& b) {
  double scale = 0.0;
  for (const cplx& x : b) scale = std::max(scale, std::abs(x));
  for (const cplx& x : b) {
    if (std::abs(x) <= 1e-8 * scale) continue;
    const bool flip = std::abs(x.real()) > 1e-8 * std::abs(x) ? x.real() < 0.0 : x.imag() < 0.0;
    if (flip)
      for (cplx& y : b) y = -y;
    return;
  }
}

bool same_candidate(const SolutionCandidate& x, const SolutionCandidate& y) {
  for (int j = 0; j < x.n(); ++j) {
    if (chordal_distance(x.q[j], y.q[j]) > 1e-7) return false;
    if (std::abs(x.b[j] - y.b[j]) > 1e-7 * (1.0 + std::abs(x.b[j]))) return false;
  }
  return true;
}

}  // namespace

Poly phi_type2(double p1, double p2, double p3, double p4) {
  const double p12 = p1 * p2 + 1.0, p13 = p1 * p3 + 1.0, p14 = p1 * p4 + 1.0;
  const double p23 = p2 * p3 + 1.0, p24 = p2 * p4 + 1.0, p34 = p3 * p4 + 1.0;
  return Poly({8.0 * (p13 * p24 + p14 * p23) - 4.0 * p12 * p34, 4.0 * (p13 * p24 - p14 * p23), p12 * p34});
}

std::vector<SolutionCandidate> solve_type2(const FluxData& d, const SolveOptions& opt) {
  d.validate();
  if (d.n() != 4) throw Error(ErrorCode::InvalidInput, "the TYPE II solver needs four ends");
  const TypeClass tc = classify_type(d);
  if (tc.kind != Kind::TypeII) throw Error(ErrorCode::DegenerateConfiguration, "flux data is not of TYPE II");
  if (opt.screen_obstructions && detect_obstructions(d).has(Obstruction::AntipodalAndParallel))
    throw Error(ErrorCode::ObstructedInput, "antipodal pair plus parallel pair cannot be realized");

  // Rotate the span plane onto the x1 x3 plane, with the north pole in the
  // middle of the widest angular gap so that every p_j is finite and real.
  Eigen::Matrix<double, 3, 4> m;
  for (int j = 0; j < 4; ++j) m.col(j) = d.vectors[j];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
  const Vec3 normal = svd.matrixU().col(2);
  const Mat3 r1 = Eigen::Quaterniond::FromTwoVectors(normal, Vec3::UnitY()).toRotationMatrix();
  std::array<double, 4> ang;
  for (int j = 0; j < 4; ++j) {
    const Vec3 w = r1 * d.vectors[j];
    ang[j] = std::atan2(w.x(), w.z());
  }
  std::array<double, 4> sorted = ang;
  std::sort(sorted.begin(), sorted.end());
  double gap = -1.0, mid = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double lo = sorted[k];
    const double hi = k + 1 < 4 ? sorted[k + 1] : sorted[0] + 2.0 * std::numbers::pi;
    if (hi - lo > gap) {
      gap = hi - lo;
      mid = 0.5 * (lo + hi);
    }
  }
  const Mat3 rot = Eigen::AngleAxisd(-mid, Vec3::UnitY()).toRotationMatrix() * r1;
  std::array<double, 4> pr;
  for (int j = 0; j < 4; ++j) {
    const StereoPoint s = stereographic(rot * d.vectors[j]);
    if (s.is_infinite()) throw Error(ErrorCode::DegenerateConfiguration, "vector at the projection pole");
    pr[j] = s.value().real();
  }

  // Labeling with p12 p34 (p1 - p2)(p3 - p4) as far from zero as possible.
  const std::array<std::array<int, 4>, 3> pairings{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
  auto pair_score = [&](int i, int j) {
    return std::abs((pr[i] * pr[j] + 1.0) * (pr[i] - pr[j])) / ((1.0 + pr[i] * pr[i]) * (1.0 + pr[j] * pr[j]));
  };
  std::array<int, 4> L = pairings[0];
  double best = -1.0;
  for (const auto& pp : pairings) {
    const double s = pair_score(pp[0], pp[1]) * pair_score(pp[2], pp[3]);
    if (s > best + 1e-14) {
      best = s;
      L = pp;
    }
  }
  if (best < 1e-12) return {};
  std::array<double, 4> p, a;
  for (int k = 0; k < 4; ++k) {
    p[k] = pr[L[k]];
    a[k] = d.weights[L[k]];
  }

  const Poly phi = phi_type2(p[0], p[1], p[2], p[3]).trimmed(1e-12);
  if (phi.degree() < 1) return {};
  RootOptions ro;
  ro.tol_root = opt.tol_root;
  std::vector<SolutionCandidate> out;
  for (const RootCluster& sc : distinct_roots(phi, ro)) {
    const cplx s = sc.value;
    if (std::abs(s - 2.0) < 1e-9 || std::abs(s + 2.0) < 1e-9) continue;
    std::vector<cplx> qr = roots(Poly({1.0, -s, 1.0}), ro);
    const cplx q1 = std::abs(qr[0]) >= std::abs(qr[1]) ? qr[0] : qr[1];
    const std::array<cplx, 4> q{q1, -q1, 1.0, -1.0};

    std::vector<StereoPoint> ps;
    std::vector<Puncture> qs;
    for (int k = 0; k < 4; ++k) {
      ps.emplace_back(cplx(p[k]));
      qs.emplace_back(q[k]);
    }
    Eigen::MatrixXcd A;
    try {
      A = build_matrix_A(ps, qs);
    } catch (const Error&) {
      continue;
    }
    // Rows 3 and 4 of A b = 0 express (b3, b4) linearly in (b1, b2).
    Eigen::Matrix2cd blk = A.block(2, 2, 2, 2);
    if (std::abs(blk.determinant()) < 1e-14) continue;
    const Eigen::Matrix2cd lin = -blk.inverse() * A.block(2, 0, 2, 2);
    auto full_b = [&](cplx b1, cplx b2) {
      const Eigen::Vector2cd t = lin * Eigen::Vector2cd(b1, b2);
      return std::array<cplx, 4>{b1, b2, t[0], t[1]};
    };
    auto weight = [&](int j, const std::array<cplx, 4>& b) {
      cplx acc{};
      for (int k = 0; k < 4; ++k)
        if (k != j) acc += b[k] * (p[k] - p[j]) / (q[k] - q[j]);
      return b[j] * acc;
    };
    auto form = [&](int j) {
      const cplx f10 = weight(j, full_b(1.0, 0.0));
      const cplx f01 = weight(j, full_b(0.0, 1.0));
      const cplx f11 = weight(j, full_b(1.0, 1.0));
      return QuadForm{f10, f11 - f10 - f01, f01};
    };
    for (const Pair& bp : solve_two_conics(form(2), a[2], form(3), a[3], opt.tol_root)) {
      const std::array<cplx, 4> b = full_b(bp.b1, bp.b2);
      std::vector<cplx> bv(4);
      SolutionCandidate c;
      c.q.resize(4);
      c.p.resize(4);
      c.a.resize(4);
      for (int k = 0; k < 4; ++k) {
        c.q[L[k]] = qs[k];
        c.p[L[k]] = ps[k];
        c.a[L[k]] = a[k];
        bv[L[k]] = b[k];
      }
      canonical_sign(bv);
      c.b = bv;
      c.frame = rot.transpose();
      c.origin = "type2";
      const VerificationReport rep = verify_solution(c, opt.tol_residual);
      if (!rep.single_valued) continue;
      if (*std::max_element(rep.weight_errors.begin(), rep.weight_errors.end()) > 1e-8) continue;
      if (std::any_of(out.begin(), out.end(), [&](const SolutionCandidate& o) { return same_candidate(o, c); }))
        continue;
      c.branched = weierstrass_from_solution(c).branched;
      out.push_back(std::move(c));
    }
  }
  sort_candidates(out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].label = "type2-" + std::to_string(i + 1);
  return out;
}

}  // namespace ncat
