#include <doctest.h>

#include <cmath>
#include <random>

#include "ncat/flux.hpp"

using namespace ncat;

namespace {

Vec3 unit(double x, double y, double z) { return Vec3(x, y, z).normalized(); }

FluxData balanced_random(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> w(0.5, 2.0);
  FluxData d;
  Vec3 s = Vec3::Zero();
  for (int k = 0; k + 1 < n; ++k) {
    d.vectors.push_back(unit(g(rng), g(rng), g(rng)));
    d.weights.push_back(w(rng));
    s += d.weights.back() * d.vectors.back();
  }
  d.vectors.push_back(-s.normalized());
  d.weights.push_back(s.norm());
  return d;
}

}  // namespace

TEST_CASE("stereographic projection round trip") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int k = 0; k < 200; ++k) {
    const Vec3 v = unit(g(rng), g(rng), g(rng));
    CHECK((inverse_stereographic(stereographic(v)) - v).norm() < 1e-12);
  }
  CHECK(stereographic(Vec3(0, 0, 1)).is_infinite());
  CHECK(std::abs(stereographic(Vec3(0, 0, -1)).value()) < 1e-15);
  CHECK((inverse_stereographic(StereoPoint(1.0)) - Vec3(1, 0, 0)).norm() < 1e-15);
  CHECK((inverse_stereographic(StereoPoint::infinity()) - Vec3(0, 0, 1)).norm() < 1e-15);
}

TEST_CASE("rotation to north") {
  for (const Vec3& v : {unit(1, 2, 3), Vec3(0, 0, 1), Vec3(0, 0, -1), unit(-1, 0, 1e-9)}) {
    const Mat3 r = rotation_to_north(v);
    CHECK((r * v - Vec3(0, 0, 1)).norm() < 1e-12);
    CHECK(std::abs(r.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("validation rejects malformed flux data") {
  FluxData d;
  d.vectors = {Vec3(0, 0, 1), Vec3(0, 0, -1)};
  d.weights = {1.0};
  CHECK_THROWS_AS(d.validate(), Error);
  d.weights = {1.0, 0.0};
  CHECK_THROWS_AS(d.validate(), Error);
  d.weights = {1.0, 1.0};
  d.vectors[0] = Vec3(0, 0, 2);
  CHECK_THROWS_AS(d.validate(), Error);
}

TEST_CASE("balance and classification") {
  FluxData cat;
  cat.vectors = {Vec3(0, 0, 1), Vec3(0, 0, -1)};
  cat.weights = {1.0, 1.0};
  CHECK(is_balanced(cat));
  CHECK(classify_type(cat).kind == Kind::TypeI);

  FluxData planar;
  planar.vectors = {Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 1, 0), Vec3(0, -1, 0)};
  planar.weights = {1.0, 1.0, 2.0, 2.0};
  const TypeClass t2 = classify_type(planar);
  CHECK(t2.kind == Kind::TypeII);
  REQUIRE(t2.D.has_value());
  CHECK(std::abs(*t2.D) < 1e-12);

  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const FluxData d = balanced_random(rng, 4);
    CHECK(is_balanced(d));
    const TypeClass t = classify_type(d);
    CHECK(t.kind == Kind::TypeIII);
    REQUIRE(t.D.has_value());
    CHECK(std::abs(*t.D) > 1e-8);
  }
  planar.weights[0] = 3.0;
  CHECK_FALSE(is_balanced(planar));
}

TEST_CASE("D diagnostic vanishes on a great circle through infinity") {
  // Real p's correspond to vectors in the x1 x3 plane.
  CHECK(std::abs(d_diagnostic(0.3, -1.2, 2.0)) < 1e-12);
  CHECK(std::abs(d_diagnostic(0.3, cplx(0.0, 1.1), cplx(-0.7, 0.5))) > 1e-6);
}

TEST_CASE("the four non-existence patterns") {
  const Vec3 e1(1, 0, 0), e3(0, 0, 1);
  FluxData d;

  d.vectors = {e3, e3, e3};
  d.weights = {1.0, 1.0, -2.0};
  CHECK(detect_obstructions(d).has(Obstruction::AllEqual));

  d.vectors = {-e3, -e3, e3, e3};
  d.weights = {1.0, 1.0, 1.0, 1.0};
  CHECK(detect_obstructions(d).has(Obstruction::PairEqualRestOpposite));

  d.vectors = {-e3, e3, e3, e3};
  d.weights = {3.0, 1.0, 1.0, 1.0};
  CHECK(detect_obstructions(d).has(Obstruction::OddOneOut));
  CHECK(odd_one_out(d) == 0);

  d.weights = {3.0, -1.0, 2.0, 2.0};
  CHECK_FALSE(detect_obstructions(d).any());

  d.vectors = {e1, -e1, e3, e3};
  d.weights = {1.0, 1.0, 1.0, -1.0};
  const ObstructionReport r = detect_obstructions(d);
  CHECK(r.has(Obstruction::AntipodalAndParallel));
  CHECK(std::string(obstruction_name(Obstruction::AntipodalAndParallel)) == "antipodal-and-parallel");

  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) CHECK_FALSE(detect_obstructions(balanced_random(rng, 4)).any());
}
