#pragma once

#include <vector>

#include "monostat/trimesh.hpp"

namespace monostat {

/// Convex hull of a point cloud as an outward-oriented triangle mesh.
/// Incremental construction with plane-test epsilon 1e-10; intended for
/// near-spherical clouds up to ~200k points. Throws std::invalid_argument
/// on degenerate (collinear/coplanar) input.
TriMesh convex_hull(const std::vector<Vec3>& points);

/// Mesh volume divided by the volume of the convex hull of its vertices.
/// Always <= 1 up to epsilon; == 1 for convex meshes.
double convexity_ratio(const TriMesh& mesh);

/// True when the point is inside (or on, within tol) every face plane of a
/// convex mesh.
bool point_in_convex(const TriMesh& hull, const Vec3& p, double tol = 1e-9);

}  // namespace monostat
