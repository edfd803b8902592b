#include <algorithm>
#include <cmath>
#include <random>

#include "ncat/solver.hpp"

namespace ncat {

namespace {

std::vector<cplx> eqf_values(const std::vector<cplx>& q, const std::vector<double>& a) {
  const auto m = q.size();
  std::vector<cplx> f(m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k)
      if (k != j) f[j] += a[k] / (q[k] - q[j]);
  return f;
}

bool admissible(const std::vector<cplx>& q) {
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (!std::isfinite(q[j].real()) || !std::isfinite(q[j].imag()) || std::abs(q[j]) > 1e4) return false;
    for (std::size_t k = j + 1; k < q.size(); ++k)
      if (std::abs(q[j] - q[k]) < 1e-6) return false;
  }
  return true;
}

/// Damped Gauss-Newton with q[0] = 0 and q[1] = 1 held fixed.
std::vector<cplx> newton_eqf(const std::vector<double>& a, const SolveOptions& opt) {
  const int m = static_cast<int>(a.size());
  const int u = m - 2;
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  auto objective = [&](const std::vector<cplx>& q) {
    double s = 0.0;
    for (const cplx& f : eqf_values(q, a)) s += std::norm(f);
    return s;
  };
  for (int attempt = 0; attempt < opt.newton_restarts; ++attempt) {
    std::vector<cplx> q(m);
    q[0] = 0.0;
    q[1] = 1.0;
    for (int k = 2; k < m; ++k) q[k] = cplx(uni(rng), uni(rng));
    if (!admissible(q)) continue;
    double obj = objective(q);
    for (int it = 0; it < 200 && admissible(q); ++it) {
      if (eqf_residual(q, a) < 1e-13) return q;
      const std::vector<cplx> f = eqf_values(q, a);
      Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(m, u);
      for (int j = 0; j < m; ++j)
        for (int k = 2; k < m; ++k) {
          if (k == j) {
            cplx s{};
            for (int l = 0; l < m; ++l)
              if (l != j) s += a[l] / ((q[l] - q[j]) * (q[l] - q[j]));
            J(j, k - 2) = s;
          } else {
            J(j, k - 2) = -a[k] / ((q[k] - q[j]) * (q[k] - q[j]));
          }
        }
      Eigen::VectorXcd rhs(m);
      for (int j = 0; j < m; ++j) rhs[j] = -f[j];
      const Eigen::VectorXcd step = J.colPivHouseholderQr().solve(rhs);
      double lambda = 1.0;
      bool improved = false;
      for (int h = 0; h < 30; ++h, lambda *= 0.5) {
        std::vector<cplx> trial = q;
        for (int k = 2; k < m; ++k) trial[k] += lambda * step[k - 2];
        if (!admissible(trial)) continue;
        const double o = objective(trial);
        if (o < obj) {
          q = std::move(trial);
          obj = o;
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    if (admissible(q) && eqf_residual(q, a) < 1e-11) return q;
  }
  throw Error(ErrorCode::NewtonFailure, "no puncture configuration found within the restart budget");
}

}  // namespace

double eqf_residual(const std::vector<cplx>& q, const std::vector<double>& a) {
  double worst = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    cplx s{};
    double mag = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
      if (k == j) continue;
      const cplx t = a[k] / (q[k] - q[j]);
      s += t;
      mag += std::abs(t);
    }
    if (mag > 0.0) worst = std::max(worst, std::abs(s) / mag);
  }
  return worst;
}

std::vector<cplx> eqf_four_finite(const std::vector<double>& a, int sign) {
  if (a.size() != 4) throw Error(ErrorCode::InvalidInput, "closed form needs four weights");
  const cplx z6(0.5, sign >= 0 ? std::sqrt(3.0) / 2.0 : -std::sqrt(3.0) / 2.0);
  const double d4 = a[0] + a[1] + a[3], d5 = a[0] + a[1] + a[2];
  if (d4 == 0.0 || d5 == 0.0) return {};
  return {0.0, 1.0, (a[0] + a[3] * z6) / d4, (a[0] + a[2] * std::conj(z6)) / d5};
}

std::vector<cplx> solve_eqf(const std::vector<double>& a, const SolveOptions& opt, std::string* method) {
  auto set = [&](const char* m) {
    if (method) *method = m;
  };
  switch (a.size()) {
    case 0: throw Error(ErrorCode::InvalidInput, "no finite ends");
    case 1: set("closed-form"); return {0.0};
    case 2: throw Error(ErrorCode::NoSolution, "two finite parallel ends admit no configuration");
    case 3: {
      if (a[1] == 0.0) throw Error(ErrorCode::NoSolution, "zero weight");
      std::vector<cplx> q{0.0, 1.0, -a[2] / a[1]};
      if (admissible(q) && eqf_residual(q, a) < 1e-10) {
        set("closed-form");
        return q;
      }
      break;
    }
    case 4: {
      std::vector<cplx> q = eqf_four_finite(a, +1);
      if (!q.empty() && admissible(q) && eqf_residual(q, a) < 1e-10) {
        set("closed-form");
        return q;
      }
      break;
    }
    default: break;
  }
  set("newton");
  return newton_eqf(a, opt);
}

SolutionCandidate FamilySolution::candidate(cplx t) const {
  if (t == cplx{}) throw Error(ErrorCode::ParamOutOfRange, "family parameter must be nonzero");
  const cplx st = std::sqrt(t);
  SolutionCandidate c;
  c.q = q;
  c.a = a;
  c.frame = frame;
  c.origin = "type1-family";
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (static_cast<int>(j) == infinity_index) {
      c.p.push_back(StereoPoint::infinity());
      c.b.push_back(1.0 / st);
    } else {
      c.p.emplace_back(cplx(0.0));
      c.b.push_back(st * a[j]);
    }
  }
  return c;
}

WeierstrassData FamilySolution::weierstrass(cplx t) const { return weierstrass_from_solution(candidate(t)); }

FamilySolution solve_type1_family(const FluxData& d, const SolveOptions& opt) {
  d.validate();
  if (classify_type(d).kind != Kind::TypeI) throw Error(ErrorCode::DegenerateConfiguration, "flux data is not of TYPE I");
  const ObstructionReport obs = detect_obstructions(d);
  if (obs.any()) throw Error(ErrorCode::NoSolution, std::string("obstructed: ") + obstruction_name(obs.hits[0].condition));
  const auto odd = odd_one_out(d);
  if (!odd) throw Error(ErrorCode::NoSolution, "unsupported parallel configuration");

  FamilySolution fam;
  fam.infinity_index = *odd;
  fam.frame = rotation_to_north(d.vectors[*odd]).transpose();
  fam.a = d.weights;
  std::vector<double> fa;
  for (int j = 0; j < d.n(); ++j)
    if (j != *odd) fa.push_back(d.weights[j]);
  const std::vector<cplx> fq = solve_eqf(fa, opt, &fam.method);
  fam.eqf_residual = eqf_residual(fq, fa);
  std::size_t k = 0;
  for (int j = 0; j < d.n(); ++j)
    fam.q.push_back(j == *odd ? Puncture::infinity() : Puncture(fq[k++]));
  return fam;
}

}  // namespace ncat
