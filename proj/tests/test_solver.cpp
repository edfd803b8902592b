#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ncat/solver.hpp"

using namespace ncat;

namespace {

const double s2 = std::sqrt(2.0);
const cplx z3 = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

FluxData random_type3(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> w(0.5, 2.0);
  for (;;) {
    FluxData d;
    Vec3 s = Vec3::Zero();
    for (int k = 0; k < 3; ++k) {
      d.vectors.push_back(Vec3(g(rng), g(rng), g(rng)).normalized());
      d.weights.push_back(w(rng) * (g(rng) < 0.0 ? -1.0 : 1.0));
      s += d.weights.back() * d.vectors.back();
    }
    d.vectors.push_back(-s.normalized());
    d.weights.push_back(s.norm());
    if (classify_type(d).singular_values.z() > 0.2) return d;
  }
}

FluxData random_type2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi), w(0.5, 2.0);
  FluxData d;
  Vec3 s = Vec3::Zero();
  for (int k = 0; k < 3; ++k) {
    const double t = ang(rng);
    d.vectors.emplace_back(std::cos(t), 0.0, std::sin(t));
    d.weights.push_back(w(rng));
    s += d.weights.back() * d.vectors.back();
  }
  d.vectors.push_back(-s.normalized());
  d.weights.push_back(s.norm());
  return d;
}

Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return Eigen::Quaterniond(g(rng), g(rng), g(rng), g(rng)).normalized().toRotationMatrix();
}

}  // namespace

TEST_CASE("tetrahedral quartic and kernel") {
  const cplx p1 = 1.0 / s2, p2 = z3 / s2, p3 = z3 * z3 / s2;
  const Poly phi = phi_quartic(p1, p2, p3);
  const Poly expected = 0.375 * (Poly::linear(1.0 / s2) * Poly::linear(1.0 / s2) * Poly::linear(-s2) *
                                 Poly::linear(-s2));
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(phi.coeff(k) - expected.coeff(k)) < 1e-10);

  for (cplx t : {cplx(1.0 / s2), cplx(-s2)}) {
    const KernelVector kv = kernel_B(t, p1, p2, p3);
    Eigen::Vector4cd b(kv.B[0], kv.B[1], kv.B[2], kv.B[3]);
    CHECK((phi_matrix(t, p1, p2, p3) * b).norm() < 1e-12 * (1.0 + b.norm()));
  }
  const auto b = assemble_b(1.0 / s2, p1, p2, p3, 1.0);
  CHECK(std::abs(b[3] * (b[0] + b[1] + b[2]) - 1.0) < 1e-12);
  CHECK_THROWS_AS(assemble_b(-s2, p1, p2, p3, 1.0), Error);
}

TEST_CASE("TYPE III solver on random data") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const FluxData d = random_type3(rng);
    const auto sols = solve_type3(d);
    CHECK(sols.size() <= 4);
    CHECK(!sols.empty());
    for (const auto& c : sols) {
      const VerificationReport rep = verify_solution(c);
      CHECK(rep.reduction2_residual < 1e-8);
      const FluxData f = candidate_flux(c);
      for (int j = 0; j < 4; ++j) {
        CHECK((f.vectors[j] - d.vectors[j]).norm() < 1e-9);
        CHECK(f.weights[j] == d.weights[j]);
      }
    }
  }
}

TEST_CASE("TYPE III solver is rotation equivariant") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const FluxData d = random_type3(rng);
    const Mat3 rot = random_rotation(rng);
    FluxData e = d;
    for (Vec3& v : e.vectors) v = rot * v;
    const auto a = solve_type3(d), b = solve_type3(e);
    REQUIRE(a.size() == b.size());
    for (const auto& cb : b) {
      const FluxData f = candidate_flux(cb);
      for (int j = 0; j < 4; ++j) CHECK((f.vectors[j] - rot * d.vectors[j]).norm() < 1e-7);
      CHECK(std::any_of(a.begin(), a.end(), [&](const SolutionCandidate& ca) { return congruent(ca, cb); }));
    }
  }
}

TEST_CASE("TYPE II solver on random planar data") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    FluxData d = random_type2(rng);
    const Mat3 rot = random_rotation(rng);
    for (Vec3& v : d.vectors) v = rot * v;
    const auto sols = solve_type2(d);
    CHECK(sols.size() <= 4);
    for (const auto& c : sols) CHECK(verify_solution(c).reduction2_residual < 1e-8);
  }
}

TEST_CASE("obstructed TYPE II data is refused") {
  FluxData d;
  d.vectors = {Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 0, 1), Vec3(0, 0, 1)};
  d.weights = {1.0, 1.0, 1.0, -1.0};
  CHECK_THROWS_AS(solve_type2(d), Error);
  const SolveResult r = solve(d);
  CHECK(r.solutions.empty());
  CHECK(r.obstructions.has(Obstruction::AntipodalAndParallel));
}

TEST_CASE("solve rejects unbalanced data") {
  FluxData d;
  d.vectors = {Vec3(0, 0, 1), Vec3(0, 0, -1)};
  d.weights = {1.0, 2.0};
  CHECK_THROWS_AS(solve(d), Error);
}

TEST_CASE("parallel ends: closed forms and Newton") {
  const std::vector<double> a48{-1.0, 2.0, 2.0};
  const std::vector<cplx> q48 = solve_eqf(a48, {});
  CHECK(eqf_residual(q48, a48) == 0.0);
  CHECK(std::abs(q48[2] + 1.0) == 0.0);

  const std::vector<double> a49{1.0, 2.0, 3.0, -11.0 / 6.0};
  const std::vector<cplx> q49 = eqf_four_finite(a49, +1);
  REQUIRE(q49.size() == 4);
  CHECK(eqf_residual(q49, a49) < 1e-12);

  // Weights of z^4 type data, shuffled so that no closed form applies.
  const std::vector<double> a5{2.0, -3.0, 2.0, 2.0, 2.0};
  std::string method;
  const std::vector<cplx> q5 = solve_eqf(a5, {}, &method);
  CHECK(method == "newton");
  CHECK(eqf_residual(q5, a5) < 1e-10);

  CHECK_THROWS_AS(solve_eqf({1.0, 1.0}, {}), Error);
}

TEST_CASE("parallel family members share flux for equal |t|") {
  const NamedExample ex = named_example("zm", {{"m", 3.0}});
  REQUIRE(ex.family.has_value());
  const FluxData f0 = candidate_flux(ex.family->candidate(2.0));
  for (double arg : {0.7, 2.0, -1.3}) {
    const SolutionCandidate c = ex.family->candidate(std::polar(2.0, arg));
    CHECK(verify_solution(c).single_valued);
    const FluxData f = candidate_flux(c);
    for (int j = 0; j < f.n(); ++j) CHECK((f.vectors[j] - f0.vectors[j]).norm() < 1e-12);
  }
}

TEST_CASE("square-flux roots and congruence") {
  const auto qs = square_flux_roots(1.2);
  REQUIRE(qs.size() == 4);
  std::vector<double> re;
  for (const cplx& q : qs) {
    CHECK(q.imag() == 0.0);
    re.push_back(q.real());
  }
  std::sort(re.begin(), re.end());
  CHECK(std::abs(re[0] + 0.91078) < 1e-3);
  CHECK(std::abs(re[1] + 0.09246) < 1e-3);
  CHECK(std::abs(re[2] - 1.0976) < 1e-3);
  CHECK(std::abs(re[3] - 10.815) < 1e-3);
  CHECK(std::abs(re[1] + 1.0 / re[3]) < 1e-9);
  CHECK(std::abs(re[0] + 1.0 / re[2]) < 1e-9);

  std::vector<SolutionCandidate> cs;
  for (const cplx& q : qs) cs.push_back(square_flux_candidate(1.2, q));
  for (std::size_t i = 0; i < cs.size(); ++i) {
    CHECK(congruent(cs[i], cs[i]));
    for (std::size_t k = i + 1; k < cs.size(); ++k) CHECK_FALSE(congruent(cs[i], cs[k]));
  }

  const double c = (std::sqrt(6.0) + std::sqrt(2.0)) / 2.0;
  const SolutionCandidate tet = named_example("tetrahedral", {}).candidates.at(0);
  CHECK(congruent(square_flux_candidate(c, c), tet));
  CHECK_THROWS_AS(square_flux_candidate(1.0 / c, -c), Error);

  // At p = c both real roots are double; one is tetrahedral, the other flat.
  const NamedExample at_c = named_example("square-flux", {{"p", c}});
  REQUIRE(at_c.candidates.size() == 1);
  CHECK(congruent(at_c.candidates[0], tet));
  CHECK(!at_c.note.empty());
}

TEST_CASE("congruence ignores rigid motions and relabeling") {
  const SolutionCandidate tet = named_example("tetrahedral", {}).candidates.at(0);
  std::mt19937_64 rng(2);
  SolutionCandidate moved = tet;
  moved.frame = random_rotation(rng) * tet.frame;
  CHECK(congruent(tet, moved));
  SolutionCandidate perm = tet;
  std::swap(perm.q[0], perm.q[2]);
  std::swap(perm.p[0], perm.p[2]);
  std::swap(perm.b[0], perm.b[2]);
  CHECK(congruent(tet, perm));
}

TEST_CASE("named examples") {
  CHECK(named_example("jorge-meeks", {}).candidates.at(0).branched == false);
  CHECK(named_example("tetrahedral-flat", {}).flagged);
  CHECK(named_example("parallel5", {}).candidates.size() == 1);
  CHECK_THROWS_AS(named_example("catenoid-42", {}), Error);
  CHECK_THROWS_AS(named_example("zm", {{"m", 1.0}}), Error);
  CHECK_THROWS_AS(named_example("square-flux", {{"p", -1.0}}), Error);
}

TEST_CASE("candidate ordering is deterministic") {
  std::mt19937_64 rng(77);
  const FluxData d = random_type3(rng);
  auto a = solve_type3(d);
  auto b = a;
  std::reverse(b.begin(), b.end());
  sort_candidates(b);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].q[0] == b[i].q[0]);
}
