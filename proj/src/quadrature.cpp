#include <array>
#include <cmath>
#include <numbers>

#include "ncat/quadrature.hpp"

namespace ncat {

namespace {

constexpr std::array<double, 8> xgk{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> wgk{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                   0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  Vec3c value;
  double error;
};

Piece gk15(const std::function<Vec3c(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const Vec3c fc = f(c);
  Vec3c k = wgk[7] * fc, g = wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const Vec3c s = f(c - h * xgk[i]) + f(c + h * xgk[i]);
    k += wgk[i] * s;
    if (i % 2 == 1) g += wg[i / 2] * s;
  }
  k *= h;
  g *= h;
  return {k, (k - g).norm()};
}

void adapt(const std::function<Vec3c(double)>& f, double a, double b, const Piece& p, double abs_tol,
           double rel_tol, int depth, QuadResult& acc) {
  if (p.error <= std::max(abs_tol, rel_tol * p.value.norm())) {
    acc.value += p.value;
    acc.error += p.error;
    return;
  }
  if (depth <= 0) throw Error(ErrorCode::NonConvergence, "adaptive quadrature exceeded its bisection depth");
  const double m = 0.5 * (a + b);
  const Piece l = gk15(f, a, m), r = gk15(f, m, b);
  acc.evaluations += 30;
  adapt(f, a, m, l, 0.5 * abs_tol, rel_tol, depth - 1, acc);
  adapt(f, m, b, r, 0.5 * abs_tol, rel_tol, depth - 1, acc);
}

}  // namespace

QuadResult integrate_gk15(const std::function<Vec3c(double)>& f, double a, double b, double abs_tol,
                          double rel_tol, int max_depth) {
  QuadResult acc;
  const Piece whole = gk15(f, a, b);
  acc.evaluations = 15;
  adapt(f, a, b, whole, abs_tol, rel_tol, max_depth, acc);
  return acc;
}

Vec3c circle_integral(const std::function<Vec3c(cplx)>& f, cplx center, double radius, int n) {
  Vec3c s = Vec3c::Zero();
  for (int k = 0; k < n; ++k) {
    const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
    s += f(center + radius * e) * (cplx(0.0, 1.0) * radius * e);
  }
  return s * (2.0 * std::numbers::pi / n);
}

}  // namespace ncat
