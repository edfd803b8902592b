#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

namespace ncat {

using Tri = std::array<int, 3>;

/// Bowyer-Watson triangulation of distinct planar points; triangles are
/// counter-clockwise and sorted. Cocircular input should be jittered first.
std::vector<Tri> delaunay(const std::vector<Eigen::Vector2d>& pts);

}  // namespace ncat
