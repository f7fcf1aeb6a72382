#pragma once

#include <array>
#include <string>

#include "monostat/trimesh.hpp"

namespace monostat {

enum class PrimitiveKind { Sphere, Cylinder, Hemisphere, Ellipsoid, Capsule, Cube };

/// Reference solid, volume-matched to the unit sphere (4*pi/3) in its
/// canonical frame: symmetry axis along z, flat faces perpendicular to z,
/// hemisphere flat face down, centroid at the origin.
struct PrimitiveSpec {
    PrimitiveKind kind = PrimitiveKind::Sphere;
    /// Cylinder length over diameter.
    double cylinder_aspect = 2.0;
    /// Ellipsoid semi-axis ratios before volume scaling (x, y, z).
    std::array<double, 3> ellipsoid_axes = {1.0, 0.9, 0.8};
    /// Capsule total length over diameter. The default reproduces the
    /// reference capsule used by the dynamics experiments (height relief
    /// 1.486 between on-end and on-side rest).
    double capsule_aspect = 3.5;

    static PrimitiveSpec make(PrimitiveKind kind);
};

PrimitiveKind primitive_kind_from_name(const std::string& name);
std::string to_string(PrimitiveKind kind);

/// Mesh of the named solid scaled so the analytic volume equals 4*pi/3.
/// `resolution` is the latitude count of the sampling grid (longitude count
/// is twice that); the cube is exact and ignores it.
TriMesh make_primitive(const PrimitiveSpec& spec, int resolution);

}  // namespace monostat
