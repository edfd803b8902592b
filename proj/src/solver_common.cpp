#include <algorithm>
#include <cmath>
#include <tuple>

#include "ncat/solver.hpp"

namespace ncat {

int choose_infinity_end(const FluxData& d) {
  int best = 0;
  double best_d = -1.0;
  for (int i = 0; i < d.n(); ++i) {
    double m = 1e300;
    for (int j = 0; j < d.n(); ++j)
      if (j != i) m = std::min(m, (d.vectors[i] - d.vectors[j]).norm());
    if (m > best_d + 1e-12) {
      best_d = m;
      best = i;
    }
  }
  return best;
}

NormalizedProblem normalize_to_infinity(const FluxData& d, int infinity_index) {
  if (infinity_index < 0 || infinity_index >= d.n())
    throw Error(ErrorCode::InvalidInput, "infinity index out of range");
  NormalizedProblem np;
  np.rotation = rotation_to_north(d.vectors[infinity_index]);
  for (int j = 0; j < d.n(); ++j)
    if (j != infinity_index) np.index_map.push_back(j);
  np.index_map.push_back(infinity_index);
  for (int k : np.index_map) {
    np.p.push_back(k == infinity_index ? StereoPoint::infinity() : stereographic(np.rotation * d.vectors[k]));
    np.a.push_back(d.weights[k]);
  }
  return np;
}

void sort_candidates(std::vector<SolutionCandidate>& c) {
  auto key = [](const SolutionCandidate& s) {
    std::vector<std::tuple<int, double, double>> k;
    for (const Puncture& q : s.q) {
      if (q.is_infinite())
        k.emplace_back(1, 0.0, 0.0);
      else
        k.emplace_back(0, q.value().real(), q.value().imag());
    }
    return k;
  };
  std::stable_sort(c.begin(), c.end(),
                   [&](const SolutionCandidate& x, const SolutionCandidate& y) { return key(x) < key(y); });
}

SolveResult solve(const FluxData& d, const SolveOptions& opt) {
  d.validate();
  if (!is_balanced(d)) throw Error(ErrorCode::InvalidInput, "flux data is not balanced");
  SolveResult res;
  res.type = classify_type(d);
  res.obstructions = detect_obstructions(d);
  if (res.obstructions.any()) {
    res.note = "obstructed";
    return res;
  }
  switch (res.type.kind) {
    case Kind::TypeI: {
      if (!odd_one_out(d)) {
        res.note = "unsupported parallel configuration";
        return res;
      }
      res.family = solve_type1_family(d, opt);
      res.solutions.push_back(res.family->candidate(1.0));
      break;
    }
    case Kind::TypeII:
      if (d.n() != 4) {
        res.note = "unsupported: TYPE II solver needs four ends";
        return res;
      }
      res.solutions = solve_type2(d, opt);
      break;
    case Kind::TypeIII:
      if (d.n() != 4) {
        res.note = "unsupported: TYPE III solver needs four ends";
        return res;
      }
      res.solutions = solve_type3(d, opt);
      break;
  }
  if (res.solutions.empty()) res.note = "no solution";
  return res;
}

}  // namespace ncat
