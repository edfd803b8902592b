// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "ncat/flux.hpp"
#include "ncat/solver.hpp"
#include "ncat/surface.hpp"

using namespace ncat;

namespace {

const double kPi = std::numbers::pi;
const double s2 = std::sqrt(2.0);
const cplx z3 = std::polar(1.0, 2.0 * kPi / 3.0);
const double c_window = (std::sqrt(6.0) + std::sqrt(2.0)) / 2.0;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [" << what << "]";
    }
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double poly_distance(const Poly& a, const Poly& b) {
  double worst = 0.0;
  for (int k = 0; k <= std::max(a.degree(), b.degree()); ++k) worst = std::max(worst, std::abs(a.coeff(k) - b.coeff(k)));
  return worst;
}

FluxData random_balanced(std::mt19937_64& rng, bool planar) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> w(0.5, 2.0);
  FluxData d;
  Vec3 s = Vec3::Zero();
  for (int k = 0; k < 3; ++k) {
    Vec3 v(g(rng), planar ? 0.0 : g(rng), g(rng));
    d.vectors.push_back(v.normalized());
    d.weights.push_back(w(rng) * (g(rng) < -1.0 ? -1.0 : 1.0));
    s += d.weights.back() * d.vectors.back();
  }
  d.vectors.push_back(-s.normalized());
  d.weights.push_back(s.norm());
  return d;
}

// ---- 1 ----
void tetrahedral_quartic(Outcome& o) {
  const Poly phi = phi_quartic(1.0 / s2, z3 / s2, z3 * z3 / s2);
  const Poly expected = 0.375 * Poly::from_roots(std::vector<cplx>{1.0 / s2, 1.0 / s2, -s2, -s2});
  const double err = poly_distance(phi, expected);
  o.require(err < 1e-10, "coefficients");
  const cplx p1 = 1.0 / s2, p2 = z3 / s2, p3 = z3 * z3 / s2;
  const double lead = std::norm(p1) * std::norm(std::conj(p2) * p3 + 1.0);
  o.require(std::abs(lead - 0.5 * 0.75) < 1e-15 && std::abs(phi.coeff(4) - lead) < 1e-10, "leading coefficient");
  o.detail << "max coefficient error " << sci(err) << ", leading " << phi.coeff(4).real();
}

// ---- 2 ----
void kernel_values(Outcome& o) {
  const cplx p1 = 1.0 / s2, p2 = z3 / s2, p3 = z3 * z3 / s2;
  const KernelVector a = kernel_B(1.0 / s2, p1, p2, p3), b = kernel_B(-s2, p1, p2, p3);
  const double v = 9.0 / (4.0 * s2);
  double err = 0.0;
  for (int j = 0; j < 4; ++j) {
    err = std::max(err, std::abs(a.B[j] - v));
    err = std::max(err, std::abs(b.B[j] - v * std::pow(z3, j)));
  }
  err = std::max(err, std::abs(a.B[0] + a.B[1] + a.B[2] - 27.0 / (4.0 * s2)));
  err = std::max(err, std::abs(b.B[0] + b.B[1] + b.B[2]));
  o.require(err < 1e-10, "kernel values");
  o.detail << "max error " << sci(err);
}

// ---- 3 ----
void closed_form_polys(Outcome& o) {
  const cplx p1 = 1.0 / s2, p2 = z3 / s2, p3 = z3 * z3 / s2;
  const TildePolys u = tilde_polys(1.0 / s2, p1, p2, p3), v = tilde_polys(-s2, p1, p2, p3);
  const double k = 9.0 / (4.0 * s2);
  const Poly Pu = -k * Poly({-s2, 0.0, 0.0, 1.0});
  const Poly Qu = (27.0 / (4.0 * s2)) * Poly({0.0, 0.0, 1.0});
  const Poly Ru({-1.0 / (2.0 * s2), 0.0, 0.0, 1.0});
  const Poly Pv = -k * Poly({-1.0 / (2.0 * s2), 1.5, 3.0 / s2, 1.0});
  const Poly Qv = (-27.0 / 8.0) * Poly({1.0 / s2, 1.0});
  const Poly Rv({1.0 / s2, 1.5, 3.0 / s2, 1.0});
  const double err = std::max({poly_distance(u.P, Pu), poly_distance(u.Q, Qu), poly_distance(u.R, Ru),
                               poly_distance(v.P, Pv), poly_distance(v.Q, Qv), poly_distance(v.R, Rv)});
  o.require(err < 1e-10, "polynomials");
  o.detail << "max coefficient error " << sci(err);
}

// ---- 4 ----
void square_flux_family(Outcome& o) {
  const auto qs = square_flux_roots(1.2);
  o.require(qs.size() == 4, "four roots");
  if (qs.size() != 4) return;
  std::vector<double> re;
  for (const cplx& q : qs) {
    o.require(q.imag() == 0.0, "real roots");
    re.push_back(q.real());
  }
  std::sort(re.begin(), re.end());
  const double expected[4] = {-0.91078, -0.09246, 1.0976, 10.815};
  double err = 0.0;
  for (int k = 0; k < 4; ++k) err = std::max(err, std::abs(re[k] - expected[k]));
  o.require(err < 1e-3, "root values");
  // q(1) = 1.0976, q(2) = 10.815, q(3) = -0.91078, q(4) = -0.09246
  const double rec = std::max(std::abs(re[0] + 1.0 / re[2]), std::abs(re[1] + 1.0 / re[3]));
  o.require(rec < 1e-9, "reciprocal relations");
  std::vector<SolutionCandidate> cs;
  for (const cplx& q : qs) cs.push_back(square_flux_candidate(1.2, q));
  int congruent_pairs = 0;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t k = i + 1; k < cs.size(); ++k)
      if (congruent(cs[i], cs[k])) ++congruent_pairs;
  o.require(congruent_pairs == 0, "pairwise non-congruence");
  o.detail << "root error " << sci(err) << ", reciprocal error " << sci(rec) << ", congruent pairs "
           << congruent_pairs;
}

// ---- 5 ----
void real_root_window(Outcome& o) {
  int mismatches = 0;
  for (int k = 0; k < 200; ++k) {
    const double p = 0.4 + 2.1 * k / 199.0;
    bool has_real = false;
    for (const cplx& q : square_flux_roots(p))
      if (std::abs(q.imag()) <= 1e-7 * (1.0 + std::abs(q))) has_real = true;
    const bool inside = p >= 1.0 / c_window && p <= c_window;
    if (has_real != inside) ++mismatches;
  }
  o.require(mismatches == 0, "window");
  o.detail << "window [" << 1.0 / c_window << ", " << c_window << "], mismatches " << mismatches << "/200";
}

// Candidates from every solver and named example, built once for 6 and 11.
std::vector<SolutionCandidate> candidate_pool() {
  std::vector<SolutionCandidate> pool;
  for (const char* name : {"tetrahedral", "square-flux", "jorge-meeks", "parallel4", "parallel5"})
    for (const auto& c : named_example(name, {}).candidates) pool.push_back(c);
  for (double m : {2.0, 3.0, 4.0})
    for (const auto& c : named_example("zm", {{"m", m}}).candidates) pool.push_back(c);
  FluxData cat;
  cat.vectors = {Vec3(0, 0, 1), Vec3(0, 0, -1)};
  cat.weights = {1.0, 1.0};
  for (const auto& c : solve(cat).solutions) pool.push_back(c);
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 12; ++k)
    for (const auto& c : solve(random_balanced(rng, false)).solutions) pool.push_back(c);
  for (int k = 0; k < 12; ++k)
    for (const auto& c : solve(random_balanced(rng, true)).solutions) pool.push_back(c);
  return pool;
}

void verification_closure(Outcome& o, const std::vector<SolutionCandidate>& pool) {
  SamplingConfig cfg;
  double red = 0.0, flux = 0.0, hopf = 0.0, total = 0.0;
  int failed = 0;
  for (const SolutionCandidate& c : pool) {
    const VerificationReport v = verify_solution(c);
    const OracleReport r = check_oracles(c, cfg);
    red = std::max(red, v.reduction2_residual);
    flux = std::max(flux, r.max_flux_error());
    hopf = std::max(hopf, r.max_hopf_error());
    total = std::max(total, r.total_flux);
    if (!(v.reduction2_residual < 1e-9 && r.max_flux_error() < 1e-6 && r.max_hopf_error() < 1e-8 &&
          r.total_flux < 1e-8))
      ++failed;
  }
  o.require(failed == 0 && !pool.empty(), "candidates failing");
  o.detail << pool.size() << " candidates, failing " << failed << "; max residual " << sci(red) << ", flux "
           << sci(flux) << ", hopf " << sci(hopf) << ", total " << sci(total);
}

// ---- 7 ----
void solution_counts(Outcome& o) {
  std::mt19937_64 rng(99);
  std::size_t most3 = 0, most2 = 0;
  int skipped = 0;
  for (int k = 0; k < 500; ++k) {
    try {
      most3 = std::max(most3, solve_type3(random_balanced(rng, false)).size());
    } catch (const Error&) {
      ++skipped;
    }
  }
  for (int k = 0; k < 200; ++k) {
    FluxData d = random_balanced(rng, true);
    try {
      most2 = std::max(most2, solve_type2(d).size());
    } catch (const Error&) {
      ++skipped;
    }
  }
  o.require(most3 <= 4 && most2 <= 4, "count bound");
  o.detail << "max TYPE III " << most3 << ", max TYPE II " << most2 << ", refused inputs " << skipped;
}

// ---- 8 ----
void obstruction_suite(Outcome& o) {
  const Vec3 e1(1, 0, 0), e3(0, 0, 1);
  struct Case {
    std::vector<Vec3> v;
    std::vector<double> a;
    Obstruction tag;
  };
  const std::vector<Case> cases{
      {{e3, e3, e3}, {1.0, 1.0, -2.0}, Obstruction::AllEqual},
      {{-e3, -e3, e3, e3}, {1.0, 1.0, 1.0, 1.0}, Obstruction::PairEqualRestOpposite},
      {{-e3, e3, e3, e3}, {3.0, 1.0, 1.0, 1.0}, Obstruction::OddOneOut},
      {{e1, -e1, e3, e3}, {1.0, 1.0, 1.0, -1.0}, Obstruction::AntipodalAndParallel},
  };
  for (const Case& c : cases) {
    FluxData d;
    d.vectors = c.v;
    d.weights = c.a;
    const SolveResult r = solve(d);
    o.require(r.solutions.empty() && r.obstructions.has(c.tag), obstruction_name(c.tag));
  }
  FluxData d;
  d.vectors = {-e3, e3, e3, e3};
  d.weights = {3.0, -1.0, 2.0, 2.0};
  const SolveResult r = solve(d);
  o.require(!r.obstructions.any() && r.family.has_value(), "exceptional case gives a family");
  if (!r.family) return;
  std::vector<cplx> finite;
  std::vector<double> a;
  for (int j = 0; j < 4; ++j)
    if (!r.family->q[j].is_infinite()) {
      finite.push_back(r.family->q[j].value());
      a.push_back(r.family->a[j]);
    }
  std::vector<double> re;
  for (const cplx& q : finite) {
    o.require(q.imag() == 0.0, "real punctures");
    re.push_back(q.real());
  }
  std::sort(re.begin(), re.end());
  o.require(re == std::vector<double>{-1.0, 0.0, 1.0}, "punctures {0, 1, -1}");
  const double res = eqf_residual(finite, a);
  o.require(res == 0.0, "exact residual");
  o.detail << "four patterns refused; exceptional punctures {" << re[0] << ", " << re[1] << ", " << re[2]
           << "}, residual " << res;
}

// ---- 9 ----
void parallel_families(Outcome& o) {
  SamplingConfig cfg;
  double worst_eqf = 0.0, worst_flux = 0.0;
  auto check = [&](const NamedExample& ex) {
    const FamilySolution& f = *ex.family;
    std::vector<cplx> q;
    std::vector<double> a;
    for (std::size_t j = 0; j < f.q.size(); ++j)
      if (!f.q[j].is_infinite()) {
        q.push_back(f.q[j].value());
        a.push_back(f.a[j]);
      }
    worst_eqf = std::max(worst_eqf, eqf_residual(q, a));
    const auto ref = check_oracles(f.candidate(1.5), cfg).flux;
    for (double arg : {0.4, 1.9, -2.7}) {
      const auto other = check_oracles(f.candidate(std::polar(1.5, arg)), cfg).flux;
      for (std::size_t j = 0; j < ref.size(); ++j)
        worst_flux = std::max(worst_flux, (other[j] - ref[j]).norm() / std::max(1.0, ref[j].norm()));
    }
  };
  check(named_example("parallel5", {}));
  check(named_example("parallel5", {{"sign", -1.0}, {"a2", 0.7}, {"a3", 1.3}, {"a4", -2.1}}));
  for (double m : {2.0, 3.0, 4.0}) check(named_example("zm", {{"m", m}}));
  o.require(worst_eqf < 1e-10, "Eqf residual");
  o.require(worst_flux < 1e-9, "flux invariance");
  o.detail << "max residual " << sci(worst_eqf) << ", max flux change " << sci(worst_flux);
}

// ---- 10 ----
void branch_detection(Outcome& o) {
  const WeierstrassData br = weierstrass_from_solution(square_flux_candidate(1.0, -1.0));
  o.require(br.branched, "q = -1 flagged");
  o.require(resultant_test(br.P, br.Q).vanishes, "resultant vanishes");
  const Poly common = gcd(br.P, br.Q);
  double metric_ratio = 1.0;
  if (common.degree() >= 1) {
    metric_ratio = 0.0;
    for (const cplx& z : roots(common))
      metric_ratio = std::max(metric_ratio, metric_density(br, z) / metric_density(br, z + 0.3));
  }
  o.require(metric_ratio < 1e-20, "metric zero at common root");
  const WeierstrassData jm = weierstrass_from_solution(named_example("jorge-meeks", {}).candidates.at(0));
  o.require(jm.gauss_degree == 3 && !jm.branched, "jorge-meeks degree 3 unbranched");
  o.detail << "square-flux(1) at q=-1: degree " << br.gauss_degree << ", metric ratio " << sci(metric_ratio)
           << "; jorge-meeks degree " << jm.gauss_degree;
}

// ---- 11 ----
void loop_closure_check(Outcome& o, const std::vector<SolutionCandidate>& pool) {
  SamplingConfig cfg;
  double worst = 0.0;
  for (const SolutionCandidate& c : pool) {
    if (!verify_solution(c).single_valued) continue;
    worst = std::max(worst, check_oracles(c, cfg).max_closure());
  }
  o.require(worst < 1e-6, "closure");
  o.detail << "max relative real period " << sci(worst);
}

// ---- 12 ----
Vec3 catenoid_point(cplx z) {
  const cplx i(0.0, 1.0);
  return Vec3(std::real(z + 1.0 / z), std::real(i * (1.0 / z - z)), std::real(2.0 * std::log(z)));
}

void catenoid_sanity(Outcome& o) {
  FluxData d;
  d.vectors = {Vec3(0, 0, 1), Vec3(0, 0, -1)};
  d.weights = {1.0, 1.0};
  const SolutionCandidate c = solve(d).solutions.at(0);
  SamplingConfig cfg;
  const WeierstrassData w = weierstrass_from_solution(c);
  const cplx z0 = base_point(w, cfg);
  const SurfaceMesh m = sample_surface(w, cfg);
  const Vec3 x0 = catenoid_point(z0);
  double worst = 0.0;
  for (std::size_t k = 0; k < m.vertices.size(); ++k)
    worst = std::max(worst, (m.vertices[k] - (catenoid_point(m.params[k]) - x0)).norm());
  o.require(!m.vertices.empty() && worst < 1e-5, "Hausdorff distance");
  o.detail << m.vertices.size() << " vertices, Hausdorff " << sci(worst);
}

}  // namespace

int main() {
  std::vector<SolutionCandidate> pool;
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"tetrahedral quartic", tetrahedral_quartic},
      {"kernel values", kernel_values},
      {"closed-form polynomials", closed_form_polys},
      {"square-flux family", square_flux_family},
      {"real-root window", real_root_window},
      {"verification closure",
       [&](Outcome& o) {
         pool = candidate_pool();
         verification_closure(o, pool);
       }},
      {"solution-count bounds", solution_counts},
      {"obstruction suite", obstruction_suite},
      {"parallel-end families", parallel_families},
      {"branch detection", branch_detection},
      {"single-valuedness", [&](Outcome& o) { loop_closure_check(o, pool); }},
      {"catenoid sanity", catenoid_sanity},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " exception: " << e.what();
    }
    if (!o.ok) ++failures;
    std::printf("%s %2zu %-24s %s\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
