#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ncat/flux.hpp"
#include "surface_internal.hpp"

namespace ncat {

namespace detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Poly reversed(const Poly& f, int m) {
  std::vector<cplx> c(m + 1);
  for (int k = 0; k <= f.degree(); ++k) c[m - k] = f.coeff(k);
  return Poly(std::move(c));
}

double segment_distance(cplx a, cplx b, cplx q) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(a - q);
  const double s = std::clamp(std::real((q - a) * std::conj(d)) / len2, 0.0, 1.0);
  return std::abs(a + s * d - q);
}

Vec3c path_rec(const Chart& ch, cplx a, cplx b, double tol, int depth) {
  if (a == b) return Vec3c::Zero();
  const auto& pts = ch.punctures;
  int hit = -1;
  double worst = 1.0;
  std::vector<double> sep(pts.size(), kInf);
  for (std::size_t k = 0; k < pts.size(); ++k)
    for (std::size_t l = 0; l < pts.size(); ++l)
      if (l != k) sep[k] = std::min(sep[k], std::abs(pts[k] - pts[l]));
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double da = std::abs(a - pts[k]), db = std::abs(b - pts[k]);
    const double delta = 0.5 * std::min({sep[k], da, db});
    const double ratio = segment_distance(a, b, pts[k]) / delta;
    if (ratio < worst) {
      worst = ratio;
      hit = static_cast<int>(k);
    }
  }
  if (hit < 0) {
    const cplx d = b - a;
    auto f = [&](double s) -> Vec3c { return ch.density(a + s * d) * d; };
    return integrate_gk15(f, 0.0, 1.0, tol, 1e-13).value;
  }
  if (depth >= 8) throw Error(ErrorCode::PathBlocked, "no path around the punctures was found");

  const cplx q = pts[hit];
  const double da = std::abs(a - q), db = std::abs(b - q);
  const double rho = std::min({da, db, 0.5 * sep[hit]});
  const double ta = std::arg(a - q);
  const double dt = std::remainder(std::arg(b - q) - ta, 2.0 * std::numbers::pi);
  const int m = std::max(2, static_cast<int>(std::ceil(std::abs(dt) / (std::numbers::pi / 8.0))));
  std::vector<cplx> way{a};
  if (da > rho * (1.0 + 1e-12)) way.push_back(q + std::polar(rho, ta));
  for (int i = 1; i < m; ++i) way.push_back(q + std::polar(rho, ta + dt * i / m));
  const cplx end = q + std::polar(rho, ta + dt);
  if (db > rho * (1.0 + 1e-12)) way.push_back(end);
  way.push_back(b);
  Vec3c sum = Vec3c::Zero();
  for (std::size_t i = 0; i + 1 < way.size(); ++i) sum += path_rec(ch, way[i], way[i + 1], tol / way.size(), depth + 1);
  return sum;
}

}  // namespace

Chart Chart::finite(const WeierstrassData& w) {
  Chart ch;
  ch.P = w.P;
  ch.Q = w.Q;
  ch.R = w.R;
  ch.c = w.omega_scale;
  for (const Puncture& q : w.punctures)
    if (!q.is_infinite()) ch.punctures.push_back(q.value());
  ch.dP = ch.P.derivative();
  ch.dQ = ch.Q.derivative();
  return ch;
}

Chart Chart::at_infinity(const WeierstrassData& w) {
  Chart ch;
  const int m = std::max({w.P.degree(), w.Q.degree(), w.R.degree(), 0});
  ch.P = reversed(w.P, m);
  ch.Q = reversed(w.Q, m);
  ch.R = reversed(w.R, m);
  ch.c = w.omega_scale;
  ch.inverted = true;
  for (const Puncture& q : w.punctures) {
    if (q.is_infinite())
      ch.punctures.push_back(0.0);
    else if (q.value() != cplx{})
      ch.punctures.push_back(1.0 / q.value());
  }
  ch.dP = ch.P.derivative();
  ch.dQ = ch.Q.derivative();
  return ch;
}

void Chart::check(cplx s) const {
  for (const cplx& q : punctures)
    if (std::abs(s - q) <= 1e-12 * (1.0 + std::abs(q))) throw Error(ErrorCode::AtPuncture, "point is a puncture");
  if (R(s) == cplx{}) throw Error(ErrorCode::AtPuncture, "point is a puncture");
}

Vec3c Chart::density(cplx s) const {
  const cplx p = P(s), q = Q(s), r = R(s);
  cplx f = -c / (r * r);
  if (inverted) f *= -1.0 / (s * s);
  return Vec3c(f * (q * q - p * p), f * cplx(0.0, 1.0) * (q * q + p * p), f * 2.0 * p * q);
}

double Chart::metric(cplx s) const {
  const double p2 = std::norm(P(s)), q2 = std::norm(Q(s)), r2 = std::norm(R(s));
  double m = std::norm(c) * (p2 + q2) * (p2 + q2) / (r2 * r2);
  if (inverted) m /= std::norm(s * s);
  return m;
}

Vec3 Chart::normal(cplx s) const {
  const cplx p = P(s), q = Q(s);
  const double p2 = std::norm(p), q2 = std::norm(q);
  const cplx pq = p * std::conj(q);
  return Vec3(2.0 * pq.real(), 2.0 * pq.imag(), p2 - q2) / (p2 + q2);
}

cplx Chart::hopf(cplx s) const {
  const cplx r = R(s);
  cplx h = -c * (dP(s) * Q(s) - P(s) * dQ(s)) / (r * r);
  if (inverted) h *= -1.0 / (s * s);
  return h;
}

Vec3c Chart::path(cplx a, cplx b, double tol) const {
  check(a);
  check(b);
  return path_rec(*this, a, b, tol, 0);
}

Layout::Layout(const WeierstrassData& w, const SamplingConfig& cfg) {
  for (int j = 0; j < w.n(); ++j) {
    if (w.punctures[j].is_infinite())
      infinity_end = j;
    else
      finite_ends.push_back(j);
  }
  if (infinity_end >= 0) {
    inf_radius = contour_radius(w, infinity_end, cfg);
    bulk_radius = 1.0 / inf_radius;
  }
  double rmax = 0.0;
  lo = Eigen::Vector2d::Constant(kInf);
  hi = Eigen::Vector2d::Constant(-kInf);
  for (int j : finite_ends) {
    const cplx q = w.punctures[j].value();
    double r = contour_radius(w, j, cfg);
    if (infinity_end >= 0) r = std::min(r, 0.5 * (bulk_radius - std::abs(q)));
    patch_radius.push_back(r);
    rmax = std::max(rmax, r);
    lo = lo.cwiseMin(Eigen::Vector2d(q.real(), q.imag()));
    hi = hi.cwiseMax(Eigen::Vector2d(q.real(), q.imag()));
  }
  if (infinity_end >= 0) {
    lo = Eigen::Vector2d::Constant(-bulk_radius);
    hi = Eigen::Vector2d::Constant(bulk_radius);
  } else {
    const double pad = std::max({1.0, 0.5 * (hi - lo).maxCoeff(), 2.0 * rmax});
    lo.array() -= pad;
    hi.array() += pad;
  }
}

bool Layout::in_bulk(cplx z) const {
  if (z.real() < lo.x() || z.real() > hi.x() || z.imag() < lo.y() || z.imag() > hi.y()) return false;
  if (infinity_end >= 0 && std::abs(z) >= bulk_radius) return false;
  return true;
}

}  // namespace detail

using detail::Chart;

void SamplingConfig::validate() const {
  if (!(end_truncation > 0.0) || !std::isfinite(end_truncation))
    throw Error(ErrorCode::InvalidInput, "end_truncation must be positive");
  if (radial_steps < 1 || angular_steps < 3 || grid_steps < 0 || contour_samples < 8)
    throw Error(ErrorCode::InvalidInput, "step counts out of range");
  if (!(integration_tol > 0.0)) throw Error(ErrorCode::InvalidInput, "integration_tol must be positive");
  if (!(metric_growth > 1.0)) throw Error(ErrorCode::InvalidInput, "metric_growth must exceed 1");
  if (base_point && (!std::isfinite(base_point->real()) || !std::isfinite(base_point->imag())))
    throw Error(ErrorCode::InvalidInput, "base point must be finite");
}

WeierstrassValue eval_weierstrass(const WeierstrassData& w, cplx z) {
  const Chart ch = Chart::finite(w);
  ch.check(z);
  const cplx p = w.P(z), q = w.Q(z), r = w.R(z);
  WeierstrassValue v;
  v.g = q == cplx{} ? StereoPoint::infinity() : StereoPoint(p / q);
  v.omega_density = -w.omega_scale * (q / r) * (q / r);
  return v;
}

double metric_density(const WeierstrassData& w, cplx z) {
  const Chart ch = Chart::finite(w);
  ch.check(z);
  return ch.metric(z);
}

Vec3 normal_at(const WeierstrassData& w, cplx z) {
  const Chart ch = Chart::finite(w);
  ch.check(z);
  return w.frame * ch.normal(z);
}

Vec3c form_density(const WeierstrassData& w, cplx z) {
  const Chart ch = Chart::finite(w);
  ch.check(z);
  return ch.density(z);
}

double contour_radius(const WeierstrassData& w, int j, const SamplingConfig& cfg) {
  if (j < 0 || j >= w.n()) throw Error(ErrorCode::InvalidInput, "end index out of range");
  const bool inf = w.punctures[j].is_infinite();
  const Chart ch = inf ? Chart::at_infinity(w) : Chart::finite(w);
  const cplx center = inf ? cplx{} : w.punctures[j].value();
  double d = std::numeric_limits<double>::infinity();
  for (const cplx& q : ch.punctures)
    if (std::abs(q - center) > 0.0) d = std::min(d, std::abs(q - center));
  return std::min(0.5 * d, cfg.end_truncation);
}

Vec3c end_period(const WeierstrassData& w, int j, const SamplingConfig& cfg) {
  const double r = contour_radius(w, j, cfg);
  if (w.punctures[j].is_infinite()) {
    const Chart ch = Chart::at_infinity(w);
    return circle_integral([&](cplx s) { return ch.density(s); }, 0.0, r, cfg.contour_samples);
  }
  const Chart ch = Chart::finite(w);
  return circle_integral([&](cplx s) { return ch.density(s); }, w.punctures[j].value(), r, cfg.contour_samples);
}

Vec3 contour_flux(const WeierstrassData& w, int j, const SamplingConfig& cfg) {
  return w.frame * Vec3(-end_period(w, j, cfg).imag());
}

Vec3 loop_closure(const WeierstrassData& w, int j, const SamplingConfig& cfg) {
  return w.frame * Vec3(end_period(w, j, cfg).real());
}

cplx hopf_coefficient(const WeierstrassData& w, int j, const SamplingConfig& cfg) {
  const double r = contour_radius(w, j, cfg);
  const bool inf = w.punctures[j].is_infinite();
  const Chart ch = inf ? Chart::at_infinity(w) : Chart::finite(w);
  const cplx center = inf ? cplx{} : w.punctures[j].value();
  auto f = [&](cplx s) { return Vec3c((s - center) * ch.hopf(s), 0.0, 0.0); };
  return circle_integral(f, center, r, cfg.contour_samples)[0] / cplx(0.0, 2.0 * std::numbers::pi);
}

double hopf_weight(const WeierstrassData& w, int j, const SamplingConfig& cfg) {
  return hopf_coefficient(w, j, cfg).real();
}

cplx default_base_point(const WeierstrassData& w, const SamplingConfig& cfg) {
  const detail::Layout lay(w, cfg);
  constexpr int k = 16;
  cplx best = 0.5 * cplx(lay.lo.x() + lay.hi.x(), lay.lo.y() + lay.hi.y());
  double best_score = -1.0;
  for (int i = 0; i <= k; ++i)
    for (int l = 0; l <= k; ++l) {
      const cplx z(lay.lo.x() + (lay.hi.x() - lay.lo.x()) * (i + 0.5) / (k + 1),
                   lay.lo.y() + (lay.hi.y() - lay.lo.y()) * (l + 0.5) / (k + 1));
      if (!lay.in_bulk(z)) continue;
      double score = std::numeric_limits<double>::infinity();
      for (std::size_t e = 0; e < lay.finite_ends.size(); ++e)
        score = std::min(score, std::abs(z - w.punctures[lay.finite_ends[e]].value()) / lay.patch_radius[e]);
      if (lay.infinity_end >= 0 && std::abs(z) > 0.0) score = std::min(score, lay.bulk_radius / std::abs(z));
      if (score > best_score + 1e-12) {
        best_score = score;
        best = z;
      }
    }
  return best;
}

cplx base_point(const WeierstrassData& w, const SamplingConfig& cfg) {
  const cplx z0 = cfg.base_point ? *cfg.base_point : default_base_point(w, cfg);
  for (const Puncture& q : w.punctures)
    if (chordal_distance(Puncture(z0), q) <= 1e-3)
      throw Error(ErrorCode::InvalidInput, "base point too close to a puncture");
  return z0;
}

Vec3c integrate_path(const WeierstrassData& w, cplx a, cplx b, const SamplingConfig& cfg) {
  return Chart::finite(w).path(a, b, cfg.integration_tol);
}

Vec3 integrate_point(const WeierstrassData& w, cplx z, const SamplingConfig& cfg) {
  cfg.validate();
  const cplx z0 = base_point(w, cfg);
  return w.frame * Vec3(integrate_path(w, z0, z, cfg).real());
}

namespace {

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace

double OracleReport::max_flux_error() const { return max_of(flux_errors); }
double OracleReport::max_hopf_error() const { return max_of(hopf_errors); }
double OracleReport::max_closure() const { return max_of(closure); }

double OracleReport::max_hopf_imag() const {
  double m = 0.0;
  for (const cplx& h : hopf) m = std::max(m, std::abs(h.imag()));
  return m;
}

bool OracleReport::passed() const {
  return max_flux_error() < 1e-6 && max_hopf_error() < 1e-8 && max_hopf_imag() < 1e-8 && total_flux < 1e-8 &&
         max_closure() < 1e-6;
}

OracleReport check_oracles(const SolutionCandidate& c, const SamplingConfig& cfg) {
  cfg.validate();
  const WeierstrassData w = weierstrass_from_solution(c);
  OracleReport rep;
  Vec3 sum = Vec3::Zero();
  double mag = 0.0;
  for (int j = 0; j < c.n(); ++j) {
    const Vec3c per = end_period(w, j, cfg);
    const Vec3 phi = w.frame * Vec3(-per.imag());
    const Vec3 expected = 4.0 * std::numbers::pi * c.a[j] * (c.frame * inverse_stereographic(c.p[j]));
    rep.flux.push_back(phi);
    rep.flux_errors.push_back((phi - expected).norm() / (4.0 * std::numbers::pi * std::max(1.0, std::abs(c.a[j]))));
    rep.closure.push_back(Vec3(per.real()).norm() / std::max(per.norm(), 1e-300));
    const cplx h = hopf_coefficient(w, j, cfg);
    rep.hopf.push_back(h);
    rep.hopf_errors.push_back(std::abs(h.real() - c.a[j]));
    sum += phi;
    mag += phi.norm();
  }
  rep.total_flux = mag > 0.0 ? sum.norm() / mag : 0.0;
  return rep;
}

}  // namespace ncat
