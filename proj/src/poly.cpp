#include "ncat/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace ncat {

Poly::Poly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim_exact(); }

void Poly::trim_exact() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

Poly Poly::from_roots(std::span<const cplx> roots, cplx lc) {
  std::vector<cplx> c{lc};
  for (const cplx& r : roots) {
    c.push_back(0.0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return Poly(std::move(c));
}

double Poly::max_norm() const {
  double m = 0.0;
  for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

cplx Poly::operator()(cplx z) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly{};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * (1.0 / leading());
}

Poly Poly::trimmed(double rel) const {
  const double cut = rel * max_norm();
  std::vector<cplx> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
  return Poly(std::move(c));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim_exact();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim_exact();
  return *this;
}

Poly& Poly::operator*=(cplx s) {
  for (cplx& c : coeffs_) c *= s;
  trim_exact();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly{};
  std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(c));
}

DivMod divmod(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
  const int dn = den.degree();
  std::vector<cplx> r = num.coeffs();
  if (num.degree() < dn) return {Poly{}, num};
  std::vector<cplx> q(num.degree() - dn + 1);
  const cplx lead = den.leading();
  for (int k = num.degree() - dn; k >= 0; --k) {
    const cplx f = r[k + dn] / lead;
    q[k] = f;
    for (int i = 0; i <= dn; ++i) r[k + i] -= f * den.coeff(i);
    r[k + dn] = 0.0;
  }
  r.resize(dn);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

namespace {

struct HornerResult {
  cplx value;
  cplx derivative;
  double bound;  // sum |c_k| |z|^k, for the rounding-error estimate
};

HornerResult horner(const std::vector<cplx>& c, cplx z) {
  cplx v{}, d{};
  double b = 0.0;
  const double az = std::abs(z);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
    b = b * az + std::abs(*it);
  }
  return {v, d, b};
}

double cauchy_bound(const Poly& p) {
  const double lead = std::abs(p.leading());
  double m = 0.0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, std::abs(p.coeff(k)) / lead);
  return 1.0 + m;
}

bool less_complex(const cplx& a, const cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::vector<cplx> roots(const Poly& p, const RootOptions& opt) {
  const int n = p.degree();
  if (n < 1) throw Error(ErrorCode::InvalidInput, "roots() needs degree >= 1");
  if (n == 1) return {-p.coeff(0) / p.coeff(1)};

  const auto& c = p.coeffs();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double radius = cauchy_bound(p);
  std::vector<cplx> z(n);
  for (int k = 0; k < n; ++k)
    z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.7);
  std::vector<bool> done(n, false);

  for (int it = 0; it < opt.max_iterations; ++it) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const HornerResult h = horner(c, z[i]);
      if (std::abs(h.value) <= 4.0 * n * eps * h.bound) {
        done[i] = true;
        continue;
      }
      all_done = false;
      cplx ratio = h.derivative == cplx{} ? h.value * 1e-3 : h.value / h.derivative;
      cplx s{};
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      const cplx corr = ratio / (1.0 - ratio * s);
      z[i] -= corr;
      if (std::abs(corr) < opt.step_tol * (1.0 + std::abs(z[i]))) done[i] = true;
    }
    if (all_done) break;
  }

  const double cmax = p.max_norm();
  for (const cplx& r : z) {
    const double lim = opt.tol_root * cmax * std::pow(std::max(1.0, std::abs(r)), n);
    if (!(std::abs(p(r)) <= lim))
      throw Error(ErrorCode::NonConvergence, "Aberth iteration did not converge");
  }

  // Merge near-coincident roots into clusters at their centroid.
  double scale = 1.0;
  for (const cplx& r : z) scale = std::max(scale, std::abs(r));
  const double tol = opt.cluster_tol * scale;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(z[i] - z[j]) < tol) parent[find(i)] = find(j);
  std::vector<cplx> sum(n);
  std::vector<int> count(n, 0);
  for (int i = 0; i < n; ++i) {
    sum[find(i)] += z[i];
    ++count[find(i)];
  }
  std::vector<cplx> out(n);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    out[i] = sum[r] / static_cast<double>(count[r]);
  }
  // One Newton polish for simple roots.
  const Poly dp = p.derivative();
  for (int i = 0; i < n; ++i) {
    if (count[find(i)] != 1) continue;
    const cplx d = dp(out[i]);
    if (d == cplx{}) continue;
    const cplx cand = out[i] - p(out[i]) / d;
    if (std::abs(p(cand)) < std::abs(p(out[i]))) out[i] = cand;
  }
  std::sort(out.begin(), out.end(), less_complex);
  return out;
}

std::vector<RootCluster> distinct_roots(const Poly& p, const RootOptions& opt) {
  std::vector<RootCluster> out;
  for (const cplx& r : roots(p, opt)) {
    auto it = std::find_if(out.begin(), out.end(), [&](const RootCluster& c) { return c.value == r; });
    if (it == out.end())
      out.push_back({r, 1});
    else
      ++it->multiplicity;
  }
  return out;
}

namespace {

Eigen::MatrixXcd sylvester(const Poly& p, const Poly& q) {
  const int m = p.degree(), n = q.degree();
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m + n, m + n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s(i, i + k) = p.coeff(m - k);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s(n + i, i + k) = q.coeff(n - k);
  return s;
}

}  // namespace

cplx resultant(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "resultant of the zero polynomial");
  if (p.degree() + q.degree() == 0) return 1.0;
  return sylvester(p, q).partialPivLu().determinant();
}

ResultantTest resultant_test(const Poly& p, const Poly& q, double rel_tol) {
  ResultantTest t{};
  t.value = resultant(p, q);
  t.scale = std::pow(p.max_norm(), q.degree()) * std::pow(q.max_norm(), p.degree());
  t.vanishes = std::abs(t.value) < rel_tol * t.scale;
  return t;
}

Poly gcd(const Poly& p, const Poly& q, double rel_tol) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "gcd of the zero polynomial");
  Poly a = p * (1.0 / p.max_norm());
  Poly b = q * (1.0 / q.max_norm());
  if (a.degree() < b.degree()) std::swap(a, b);
  while (true) {
    if (b.degree() == 0) return Poly::constant(1.0);
    std::vector<cplx> r = divmod(a, b).remainder.coeffs();
    while (!r.empty() && std::abs(r.back()) < rel_tol) r.pop_back();
    const Poly rem(std::move(r));
    if (rem.is_zero() || rem.max_norm() < rel_tol) return b.monic();
    a = std::move(b);
    b = rem * (1.0 / rem.max_norm());
  }
}

Poly interpolate(std::span<const cplx> x, std::span<const cplx> y) {
  const auto n = static_cast<Eigen::Index>(x.size());
  if (n == 0 || y.size() != x.size()) throw Error(ErrorCode::InvalidInput, "interpolate: size mismatch");
  Eigen::MatrixXcd v(n, n);
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx pw = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      v(i, k) = pw;
      pw *= x[i];
    }
    rhs(i) = y[i];
  }
  const Eigen::VectorXcd c = v.partialPivLu().solve(rhs);
  return Poly(std::vector<cplx>(c.data(), c.data() + n));
}

std::vector<cplx> chebyshev_nodes(int n, double radius) {
  std::vector<cplx> x(n);
  for (int k = 0; k < n; ++k)
    x[k] = radius * std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * n));
  return x;
}

}  // namespace ncat
