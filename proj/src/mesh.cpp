#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <queue>
#include <random>

#include "ncat/delaunay.hpp"
#include "surface_internal.hpp"

namespace ncat {

namespace {

using detail::Chart;
using detail::Layout;

struct Node {
  cplx z;
  /// Coordinate in the chart at infinity; used when `in_inf_chart`.
  cplx u;
  bool in_inf_chart = false;
  int end = -1;
};

/// Radius where sqrt(metric) has grown by `growth` relative to r_out,
/// found by bisection in log r.
double inner_radius(const Chart& ch, cplx center, double r_out, double growth) {
  auto level = [&](double r) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += std::sqrt(ch.metric(center + std::polar(r, 0.25 + k * std::numbers::pi / 2.0)));
    return s;
  };
  const double base = level(r_out);
  double lo = std::log(r_out * 1e-4), hi = std::log(r_out);
  if (level(std::exp(lo)) < growth * base) return std::exp(lo);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (level(std::exp(mid)) >= growth * base ? lo : hi) = mid;
  }
  return std::exp(hi);
}

/// Appends a log-polar annulus and returns the indices of its outer ring.
std::vector<int> add_patch(std::vector<Node>& nodes, std::vector<Tri>& tris, const Chart& ch, cplx center,
                           double r_out, int end, bool inf_chart, const SamplingConfig& cfg) {
  const double r_in = inner_radius(ch, center, r_out, cfg.metric_growth);
  const int nr = cfg.radial_steps, na = cfg.angular_steps;
  const int first = static_cast<int>(nodes.size());
  for (int i = 0; i <= nr; ++i) {
    const double r = r_out * std::pow(r_in / r_out, static_cast<double>(i) / nr);
    for (int k = 0; k < na; ++k) {
      const cplx s = center + std::polar(r, 2.0 * std::numbers::pi * k / na);
      Node v;
      v.end = end;
      v.in_inf_chart = inf_chart;
      if (inf_chart) {
        v.u = s;
        v.z = 1.0 / s;
      } else {
        v.z = s;
      }
      nodes.push_back(v);
    }
  }
  auto id = [&](int i, int k) { return first + i * na + (k % na); };
  for (int i = 0; i < nr; ++i)
    for (int k = 0; k < na; ++k) {
      tris.push_back({id(i, k), id(i, k + 1), id(i + 1, k + 1)});
      tris.push_back({id(i, k), id(i + 1, k + 1), id(i + 1, k)});
    }
  std::vector<int> ring;
  for (int k = 0; k < na; ++k) ring.push_back(id(0, k));
  return ring;
}

}  // namespace

void SurfaceMesh::validate() const {
  const int n = static_cast<int>(vertices.size());
  if (normals.size() != vertices.size() || end_labels.size() != vertices.size())
    throw Error(ErrorCode::InvalidInput, "mesh attribute sizes disagree");
  for (const auto& t : triangles)
    for (int i : t)
      if (i < 0 || i >= n) throw Error(ErrorCode::InvalidInput, "triangle index out of range");
}

SurfaceMesh sample_surface(const WeierstrassData& w, const SamplingConfig& cfg) {
  cfg.validate();
  const Layout lay(w, cfg);
  const Chart zc = Chart::finite(w), uc = Chart::at_infinity(w);
  const cplx z0 = base_point(w, cfg);

  std::vector<Node> nodes;
  std::vector<Tri> tris;
  std::vector<int> rings;
  for (std::size_t e = 0; e < lay.finite_ends.size(); ++e) {
    const int j = lay.finite_ends[e];
    const auto ring = add_patch(nodes, tris, zc, w.punctures[j].value(), lay.patch_radius[e], j, false, cfg);
    rings.insert(rings.end(), ring.begin(), ring.end());
  }
  if (lay.infinity_end >= 0) {
    const auto ring = add_patch(nodes, tris, uc, 0.0, lay.inf_radius, lay.infinity_end, true, cfg);
    rings.insert(rings.end(), ring.begin(), ring.end());
  }

  if (cfg.grid_steps > 0) {
    const int g = cfg.grid_steps;
    const Eigen::Vector2d span = lay.hi - lay.lo;
    const double h = span.maxCoeff() / g;
    const double ring_gap = 2.0 * std::numbers::pi / cfg.angular_steps;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> jit(-1e-3 * h, 1e-3 * h);
    std::vector<int> local;
    std::vector<Eigen::Vector2d> pts;
    for (int i = 0; i <= g; ++i)
      for (int k = 0; k <= g; ++k) {
        const double dx = jit(rng), dy = jit(rng);
        const cplx z(lay.lo.x() + span.x() * i / g + dx, lay.lo.y() + span.y() * k / g + dy);
        bool keep = true;
        for (std::size_t e = 0; e < lay.finite_ends.size() && keep; ++e) {
          const double r = lay.patch_radius[e];
          keep = std::abs(z - w.punctures[lay.finite_ends[e]].value()) > r + 0.5 * std::max(r * ring_gap, h);
        }
        if (keep && lay.infinity_end >= 0) {
          const double big = lay.bulk_radius;
          keep = std::abs(z) < big - 0.5 * std::max(big * ring_gap, h);
        }
        if (!keep) continue;
        Node v;
        v.z = z;
        nodes.push_back(v);
        local.push_back(static_cast<int>(nodes.size()) - 1);
      }
    local.insert(local.end(), rings.begin(), rings.end());
    for (int id : local) pts.emplace_back(nodes[id].z.real(), nodes[id].z.imag());
    for (const Tri& t : delaunay(pts)) {
      const cplx c = (nodes[local[t[0]]].z + nodes[local[t[1]]].z + nodes[local[t[2]]].z) / 3.0;
      bool hole = false;
      for (std::size_t e = 0; e < lay.finite_ends.size() && !hole; ++e)
        hole = std::abs(c - w.punctures[lay.finite_ends[e]].value()) < lay.patch_radius[e];
      if (lay.infinity_end >= 0 && std::abs(c) >= lay.bulk_radius) hole = true;
      if (!hole) tris.push_back({local[t[0]], local[t[1]], local[t[2]]});
    }
  }

  // Spanning forest of the vertex graph; every vertex integral extends its
  // parent's along one edge.
  const int nv = static_cast<int>(nodes.size());
  std::vector<std::vector<int>> adj(nv);
  for (const Tri& t : tris)
    for (int a = 0; a < 3; ++a) {
      adj[t[a]].push_back(t[(a + 1) % 3]);
      adj[t[(a + 1) % 3]].push_back(t[a]);
    }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  std::vector<Vec3c> value(nv, Vec3c::Zero());
  std::vector<bool> seen(nv, false);
  std::vector<int> order(nv);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(nodes[a].z - z0) < std::abs(nodes[b].z - z0); });
  for (int root : order) {
    if (seen[root]) continue;
    seen[root] = true;
    value[root] = zc.path(z0, nodes[root].z, cfg.integration_tol);
    std::queue<int> bfs;
    bfs.push(root);
    while (!bfs.empty()) {
      const int v = bfs.front();
      bfs.pop();
      for (int u : adj[v]) {
        if (seen[u]) continue;
        seen[u] = true;
        const Node &a = nodes[v], &b = nodes[u];
        value[u] = value[v] + (a.in_inf_chart && b.in_inf_chart ? uc.path(a.u, b.u, cfg.integration_tol)
                                                                : zc.path(a.z, b.z, cfg.integration_tol));
        bfs.push(u);
      }
    }
  }

  SurfaceMesh m;
  m.triangles = tris;
  for (int i = 0; i < nv; ++i) {
    const Node& v = nodes[i];
    m.vertices.push_back(w.frame * Vec3(value[i].real()));
    m.normals.push_back(w.frame * (v.in_inf_chart ? uc.normal(v.u) : zc.normal(v.z)));
    m.end_labels.push_back(v.end);
    m.params.push_back(v.z);
  }
  return m;
}

void export_obj(const SurfaceMesh& m, std::ostream& out) {
  m.validate();
  char buf[128];
  for (const Vec3& v : m.vertices) {
    std::snprintf(buf, sizeof buf, "v %.10g %.10g %.10g\n", v.x(), v.y(), v.z());
    out << buf;
  }
  for (const Vec3& v : m.normals) {
    std::snprintf(buf, sizeof buf, "vn %.10g %.10g %.10g\n", v.x(), v.y(), v.z());
    out << buf;
  }
  for (const auto& t : m.triangles) out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::SinkFailure, "failed to write OBJ output");
}

}  // namespace ncat
