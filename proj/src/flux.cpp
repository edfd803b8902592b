#include <algorithm>
#include <cmath>

#include "ncat/flux.hpp"

namespace ncat {

namespace {

constexpr double kMatchTol = 1e-9;

bool same(const Vec3& a, const Vec3& b) { return (a - b).norm() < kMatchTol; }
bool opposite(const Vec3& a, const Vec3& b) { return (a + b).norm() < kMatchTol; }

int best_infinity_index(const std::vector<Vec3>& v) {
  int best = 0;
  double best_d = -1.0;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    double m = 1e300;
    for (int j = 0; j < static_cast<int>(v.size()); ++j)
      if (j != i) m = std::min(m, (v[i] - v[j]).norm());
    if (m > best_d + 1e-12) {
      best_d = m;
      best = i;
    }
  }
  return best;
}

}  // namespace

void FluxData::validate() const {
  if (vectors.size() < 2) throw Error(ErrorCode::InvalidInput, "flux data needs at least two ends");
  if (weights.size() != vectors.size())
    throw Error(ErrorCode::InvalidInput, "vectors and weights differ in length");
  for (const Vec3& v : vectors)
    if (!v.allFinite() || std::abs(v.norm() - 1.0) >= 1e-12)
      throw Error(ErrorCode::InvalidInput, "flux vectors must be unit length");
  for (double a : weights)
    if (!std::isfinite(a) || a == 0.0) throw Error(ErrorCode::InvalidInput, "weights must be finite and nonzero");
}

double check_balance(const FluxData& d) {
  Vec3 s = Vec3::Zero();
  for (int j = 0; j < d.n(); ++j) s += d.weights[j] * d.vectors[j];
  return s.norm();
}

bool is_balanced(const FluxData& d, double rel) {
  double total = 0.0;
  for (double a : d.weights) total += std::abs(a);
  return check_balance(d) <= rel * total;
}

const char* to_string(Kind k) {
  switch (k) {
    case Kind::TypeI: return "TYPE_I";
    case Kind::TypeII: return "TYPE_II";
    case Kind::TypeIII: return "TYPE_III";
  }
  return "?";
}

double d_diagnostic(cplx p1, cplx p2, cplx p3) {
  auto w = [](cplx x, cplx y) { return std::conj(x) * y - x * std::conj(y); };
  const cplx d23 = w(p2, p3), d31 = w(p3, p1), d12 = w(p1, p2);
  const cplx s = (std::norm(p1) - 1.0) * d23 + (std::norm(p2) - 1.0) * d31 + (std::norm(p3) - 1.0) * d12;
  return (d23 * d31 * d12 * s).real();
}

TypeClass classify_type(const FluxData& d) {
  Eigen::Matrix<double, 3, Eigen::Dynamic> m(3, d.n());
  for (int j = 0; j < d.n(); ++j) m.col(j) = d.vectors[j];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  TypeClass tc;
  const auto& sv = svd.singularValues();
  for (int k = 0; k < std::min<int>(3, static_cast<int>(sv.size())); ++k) tc.singular_values[k] = sv[k];
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv[k] > 1e-9 * sv[0]) ++rank;
  rank = std::clamp(rank, 1, 3);
  tc.span_dim = rank;
  tc.kind = static_cast<Kind>(rank);

  if (d.n() == 4) {
    const int inf = best_infinity_index(d.vectors);
    const Mat3 rot = rotation_to_north(d.vectors[inf]);
    std::vector<cplx> p;
    for (int j = 0; j < 4; ++j) {
      if (j == inf) continue;
      const StereoPoint s = stereographic(rot * d.vectors[j]);
      p.push_back(s.is_infinite() ? cplx(1e300) : s.value());
    }
    tc.D = d_diagnostic(p[0], p[1], p[2]);
    tc.d_infinity_index = inf;
  }
  return tc;
}

const char* obstruction_name(Obstruction o) {
  switch (o) {
    case Obstruction::AllEqual: return "all-equal";
    case Obstruction::PairEqualRestOpposite: return "pair-opposite-rest";
    case Obstruction::OddOneOut: return "odd-one-out";
    case Obstruction::AntipodalAndParallel: return "antipodal-and-parallel";
  }
  return "?";
}

bool ObstructionReport::has(Obstruction o) const {
  return std::any_of(hits.begin(), hits.end(), [&](const ObstructionHit& h) { return h.condition == o; });
}

std::optional<int> odd_one_out(const FluxData& d) {
  const int n = d.n();
  for (int i = 0; i < n; ++i) {
    bool ok = true;
    for (int k = 0; k < n && ok; ++k)
      if (k != i && !opposite(d.vectors[i], d.vectors[k])) ok = false;
    if (ok) return i;
  }
  return std::nullopt;
}

ObstructionReport detect_obstructions(const FluxData& d) {
  ObstructionReport rep;
  const int n = d.n();
  const auto& v = d.vectors;

  bool all_equal = true;
  for (int j = 1; j < n; ++j) all_equal = all_equal && same(v[0], v[j]);
  if (all_equal) {
    std::vector<int> idx(n);
    for (int j = 0; j < n; ++j) idx[j] = j;
    rep.hits.push_back({Obstruction::AllEqual, idx});
  }

  if (n >= 3) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (!same(v[i], v[j])) continue;
        bool ok = true;
        for (int k = 0; k < n && ok; ++k)
          if (k != i && k != j && !opposite(v[i], v[k])) ok = false;
        // For n = 4 the complementary pair describes the same pattern.
        if (ok && n == 4 && i != 0) continue;
        if (ok) rep.hits.push_back({Obstruction::PairEqualRestOpposite, {i, j}});
      }
  }

  if (n >= 3) {
    for (int i = 0; i < n; ++i) {
      bool ok = true;
      for (int k = 0; k < n && ok; ++k)
        if (k != i && !opposite(v[i], v[k])) ok = false;
      if (!ok) continue;
      double sum = 0.0, scale = 0.0;
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          if (j == i || k == i) continue;
          sum += d.weights[j] * d.weights[k];
          scale = std::max(scale, std::abs(d.weights[j] * d.weights[k]));
        }
      if (std::abs(sum) > 1e-10 * scale) rep.hits.push_back({Obstruction::OddOneOut, {i}});
    }
  }

  if (n == 4) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        if (!opposite(v[i], v[j])) continue;
        int k = -1, l = -1;
        for (int m = 0; m < 4; ++m)
          if (m != i && m != j) (k < 0 ? k : l) = m;
        if (same(v[k], v[l]) && !same(v[k], v[i]) && !opposite(v[k], v[i]))
          rep.hits.push_back({Obstruction::AntipodalAndParallel, {i, j, k, l}});
      }
  }
  return rep;
}

}  // namespace ncat
