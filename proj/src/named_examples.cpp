#include <algorithm>
#include <cmath>
#include <numbers>

#include "ncat/solver.hpp"

namespace ncat {

namespace {

double param(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

cplx family_parameter(const std::map<std::string, double>& params) {
  const cplx t(param(params, "t", 1.0), param(params, "t_im", 0.0));
  if (!std::isfinite(t.real()) || !std::isfinite(t.imag()) || t == cplx{})
    throw Error(ErrorCode::ParamOutOfRange, "family parameter t must be finite and nonzero");
  return t;
}

FamilySolution parallel_family(std::vector<Puncture> q, std::vector<double> a) {
  FamilySolution fam;
  fam.infinity_index = 0;
  fam.method = "closed-form";
  std::vector<cplx> fq;
  std::vector<double> fa;
  for (std::size_t j = 1; j < q.size(); ++j) {
    fq.push_back(q[j].value());
    fa.push_back(a[j]);
  }
  fam.eqf_residual = eqf_residual(fq, fa);
  fam.q = std::move(q);
  fam.a = std::move(a);
  return fam;
}

NamedExample from_family(FamilySolution fam, cplx t, const std::string& name) {
  NamedExample ex;
  SolutionCandidate c = fam.candidate(t);
  c.origin = name;
  c.label = name;
  c.branched = weierstrass_from_solution(c).branched;
  ex.candidates.push_back(std::move(c));
  ex.family = std::move(fam);
  ex.family_t = t;
  return ex;
}

SolutionCandidate tetrahedral_candidate(bool flat) {
  const double s2 = std::sqrt(2.0);
  const cplx z3 = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const cplx p1 = 1.0 / s2, p2 = z3 / s2, p3 = z3 * z3 / s2;
  const cplx t = flat ? cplx(-s2) : p1;
  SolutionCandidate c;
  c.q = {Puncture(t), Puncture(p2), Puncture(p3), Puncture::infinity()};
  c.p = {StereoPoint(p1), StereoPoint(p2), StereoPoint(p3), StereoPoint::infinity()};
  if (flat) {
    const KernelVector k = kernel_B(t, p1, p2, p3);
    c.b.assign(k.B.begin(), k.B.end());
    c.a = {0.0, 0.0, 0.0, 0.0};
  } else {
    const auto b = assemble_b(t, p1, p2, p3, 1.0);
    c.b.assign(b.begin(), b.end());
    c.a = {1.0, 1.0, 1.0, 1.0};
  }
  const TildePolys tp = tilde_polys(t, p1, p2, p3);
  c.branched = resultant_test(tp.P, tp.Q).vanishes;
  return c;
}

}  // namespace

std::vector<cplx> square_flux_roots(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorCode::ParamOutOfRange, "square-flux needs p > 0");
  const double e = p * p - 1.0;
  const Poly f({e, 4.0 * p, 0.0, -4.0 * p, e});
  // Double roots at p = c^{+-1} split by about sqrt(eps); merge them.
  RootOptions ro;
  ro.cluster_tol = 1e-6;
  std::vector<cplx> out;
  for (const RootCluster& rc : distinct_roots(f.trimmed(1e-14), ro)) {
    const cplx q = rc.value;
    if (std::abs(q) < 1e-12) continue;
    if (std::abs(std::pow(q, 4) + 1.0) < 1e-9) continue;
    const double snap = rc.multiplicity > 1 ? 1e-6 : 1e-10;
    out.push_back(std::abs(q.imag()) < snap * (1.0 + std::abs(q)) ? cplx(q.real(), 0.0) : q);
  }
  std::sort(out.begin(), out.end(), [](const cplx& x, const cplx& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

SolutionCandidate square_flux_candidate(double p, cplx q) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorCode::ParamOutOfRange, "square-flux needs p > 0");
  const cplx q4 = std::pow(q, 4);
  if (std::abs(q) < 1e-12 || std::abs(q4 + 1.0) < 1e-12)
    throw Error(ErrorCode::ParamOutOfRange, "q must be nonzero with q^4 != -1");
  const cplx num = q4 + 1.0;
  const cplx den = q * (p * (q4 + 1.0) + 2.0 * q * (p * p * q * q + 1.0));
  if (std::abs(den) <= 1e-7 * std::abs(num))
    throw Error(ErrorCode::ParamOutOfRange, "r is infinite here (flat-end degeneration)");
  const cplx r = std::sqrt(num / den);
  const cplx I(0.0, 1.0);
  SolutionCandidate c;
  c.q = {Puncture(q), Puncture(-q), Puncture(I / q), Puncture(-I / q)};
  c.p = {StereoPoint(p), StereoPoint(-p), StereoPoint(I / p), StereoPoint(-I / p)};
  c.b = {r * q, r * q, r * p, r * p};
  c.a = {1.0, 1.0, 1.0, 1.0};
  c.origin = "square-flux";
  c.branched = weierstrass_from_solution(c).branched;
  return c;
}

NamedExample named_example(const std::string& name, const std::map<std::string, double>& params) {
  NamedExample ex;
  if (name == "tetrahedral") {
    ex.candidates.push_back(tetrahedral_candidate(false));
  } else if (name == "tetrahedral-flat") {
    ex.candidates.push_back(tetrahedral_candidate(true));
    ex.flagged = true;
    ex.note = "four flat ends; all weights vanish, not an n-end catenoid";
  } else if (name == "square-flux") {
    const double p = param(params, "p", 1.2);
    for (const cplx& q : square_flux_roots(p)) {
      try {
        ex.candidates.push_back(square_flux_candidate(p, q));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ParamOutOfRange) throw;
        ex.note = "root with infinite r skipped (flat-end degeneration)";
      }
    }
  } else if (name == "jorge-meeks") {
    ex.candidates.push_back(square_flux_candidate(1.0, 1.0));
  } else if (name == "parallel4") {
    const double a2 = param(params, "a2", -1.0), a3 = param(params, "a3", 2.0);
    if (a2 == 0.0 || a3 == 0.0 || a2 + a3 == 0.0)
      throw Error(ErrorCode::ParamOutOfRange, "parallel4 needs a2, a3, a2 + a3 nonzero");
    const double a4 = -a2 * a3 / (a2 + a3);
    FluxData d;
    d.vectors = {Vec3(0, 0, 1), Vec3(0, 0, -1), Vec3(0, 0, -1), Vec3(0, 0, -1)};
    d.weights = {a2 + a3 + a4, a2, a3, a4};
    if (d.weights[0] == 0.0) throw Error(ErrorCode::ParamOutOfRange, "weight of the odd end vanishes");
    ex = from_family(solve_type1_family(d), family_parameter(params), name);
  } else if (name == "parallel5") {
    const double a2 = param(params, "a2", 1.0), a3 = param(params, "a3", 1.0), a4 = param(params, "a4", 1.0);
    const double s = a2 + a3 + a4;
    if (a2 == 0.0 || a3 == 0.0 || a4 == 0.0 || s == 0.0)
      throw Error(ErrorCode::ParamOutOfRange, "parallel5 needs nonzero a2, a3, a4 and a2 + a3 + a4");
    const double a5 = -(a2 * a3 + a2 * a4 + a3 * a4) / s;
    const double a1 = s + a5;
    if (a5 == 0.0 || a1 == 0.0) throw Error(ErrorCode::ParamOutOfRange, "derived weights vanish");
    const int sign = param(params, "sign", 1.0) >= 0.0 ? 1 : -1;
    const std::vector<cplx> fq = eqf_four_finite({a2, a3, a4, a5}, sign);
    if (fq.empty()) throw Error(ErrorCode::ParamOutOfRange, "closed-form punctures undefined for these weights");
    std::vector<Puncture> q{Puncture::infinity()};
    for (const cplx& z : fq) q.emplace_back(z);
    ex = from_family(parallel_family(q, {a1, a2, a3, a4, a5}), family_parameter(params), name);
  } else if (name == "zm") {
    const double mv = param(params, "m", 3.0);
    if (mv < 2.0 || mv != std::floor(mv) || mv > 64.0)
      throw Error(ErrorCode::ParamOutOfRange, "zm needs an integer m >= 2");
    const int m = static_cast<int>(mv);
    std::vector<Puncture> q{Puncture::infinity(), Puncture(0.0)};
    std::vector<double> a{m + 1.0, 1.0 - m};
    for (int k = 0; k < m; ++k) {
      q.emplace_back(std::polar(1.0, 2.0 * std::numbers::pi * k / m));
      a.push_back(2.0);
    }
    ex = from_family(parallel_family(q, a), family_parameter(params), name);
  } else {
    throw Error(ErrorCode::UnknownName, "unknown example: " + name);
  }
  for (std::size_t i = 0; i < ex.candidates.size(); ++i) {
    ex.candidates[i].origin = name;
    ex.candidates[i].label = ex.candidates.size() == 1 ? name : name + "-" + std::to_string(i + 1);
  }
  return ex;
}

}  // namespace ncat
