#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "ncat/delaunay.hpp"

namespace ncat {

namespace {

struct Cell {
  Tri v;
  Eigen::Vector2d center;
  double r2;
};

double orient(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

Cell make_cell(const std::vector<Eigen::Vector2d>& p, int i, int j, int k) {
  if (orient(p[i], p[j], p[k]) < 0.0) std::swap(j, k);
  const Eigen::Vector2d a = p[i], b = p[j], c = p[k];
  const double d = 2.0 * (a.x() * (b.y() - c.y()) + b.x() * (c.y() - a.y()) + c.x() * (a.y() - b.y()));
  const double a2 = a.squaredNorm(), b2 = b.squaredNorm(), c2 = c.squaredNorm();
  const Eigen::Vector2d o((a2 * (b.y() - c.y()) + b2 * (c.y() - a.y()) + c2 * (a.y() - b.y())) / d,
                          (a2 * (c.x() - b.x()) + b2 * (a.x() - c.x()) + c2 * (b.x() - a.x())) / d);
  return {{i, j, k}, o, (a - o).squaredNorm()};
}

}  // namespace

std::vector<Tri> delaunay(const std::vector<Eigen::Vector2d>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 3) return {};
  Eigen::Vector2d lo = pts[0], hi = pts[0];
  for (const auto& q : pts) {
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  const Eigen::Vector2d mid = 0.5 * (lo + hi);
  const double span = std::max(1e-12, (hi - lo).maxCoeff());
  std::vector<Eigen::Vector2d> p = pts;
  p.push_back(mid + Eigen::Vector2d(-20.0 * span, -10.0 * span));
  p.push_back(mid + Eigen::Vector2d(20.0 * span, -10.0 * span));
  p.push_back(mid + Eigen::Vector2d(0.0, 20.0 * span));

  std::vector<Cell> cells{make_cell(p, n, n + 1, n + 2)};
  for (int i = 0; i < n; ++i) {
    std::map<std::pair<int, int>, int> edges;
    std::vector<Cell> keep;
    keep.reserve(cells.size() + 2);
    for (const Cell& c : cells) {
      if ((p[i] - c.center).squaredNorm() < c.r2 * (1.0 + 1e-12)) {
        for (int e = 0; e < 3; ++e) {
          int a = c.v[e], b = c.v[(e + 1) % 3];
          ++edges[{std::min(a, b), std::max(a, b)}];
        }
      } else {
        keep.push_back(c);
      }
    }
    for (const auto& [e, count] : edges)
      if (count == 1) keep.push_back(make_cell(p, e.first, e.second, i));
    cells = std::move(keep);
  }

  std::vector<Tri> out;
  for (const Cell& c : cells) {
    if (c.v[0] >= n || c.v[1] >= n || c.v[2] >= n) continue;
    Tri t = c.v;
    std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ncat
