#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "monostat/vec3.hpp"

namespace monostat {

/// Indexed triangle surface. Faces are counterclockwise when viewed from
/// outside, so the signed volume of a closed mesh is positive.
struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::int32_t, 3>> faces;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t face_count() const { return faces.size(); }
};

struct MassProperties {
    double volume = 0.0;  // cubic model units
    Vec3 centroid;
};

/// Throws std::invalid_argument if any face index is out of range, the signed
/// volume is not positive, or a face is degenerate (area <= 1e-12).
void validate_mesh(const TriMesh& mesh);

/// Volume and centroid by signed-tetrahedron decomposition against the origin.
/// Compensated summation keeps the result stable under translation.
/// Throws std::invalid_argument when |volume| < 1e-9.
MassProperties mass_properties(const TriMesh& mesh);

/// Radial function r(theta, phi) -> r > 0 with theta in [0, pi] and
/// phi in [0, 2*pi).
using RadialFn = std::function<double(double, double)>;

/// Latitude-longitude sampling of a star-shaped surface.
///
/// The grid has (n_theta + 1) rows and n_phi columns; the theta = 0 and
/// theta = pi rows collapse to single pole vertices with triangle fans,
/// interior quads split into two triangles. Faces are oriented outward.
///
/// Vertex order: north pole, then rows i = 1 .. n_theta-1 (phi-major),
/// then south pole. Requires n_theta >= 8, n_phi >= 16. A non-finite or
/// non-positive radius raises an error naming the offending (theta, phi).
TriMesh mesh_from_radial(const RadialFn& radial, int n_theta, int n_phi);

TriMesh translated(const TriMesh& mesh, const Vec3& offset);
TriMesh scaled(const TriMesh& mesh, double factor);

/// Rotation by a 3x3 matrix given as rows.
TriMesh rotated(const TriMesh& mesh, const std::array<Vec3, 3>& rows);

double face_area(const TriMesh& mesh, std::size_t face_index);

}  // namespace monostat
