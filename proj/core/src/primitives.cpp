#include "monostat/primitives.hpp"

#include <cmath>
#include <stdexcept>

namespace monostat {

namespace {

constexpr double kUnitSphereVolume = 4.0 * M_PI / 3.0;

TriMesh sphere_mesh(int resolution) {
    return mesh_from_radial([](double, double) { return 1.0; }, resolution, 2 * resolution);
}

TriMesh cylinder_mesh(double aspect, int resolution) {
    if (aspect <= 0.0) throw std::invalid_argument("cylinder aspect must be > 0");
    // pi r^2 L = 4 pi / 3 with L = 2 r * aspect.
    const double r = std::cbrt(2.0 / (3.0 * aspect));
    const double half_len = r * aspect;
    auto radial = [=](double theta, double) {
        const double st = std::sin(theta), ct = std::abs(std::cos(theta));
        const double side = st > 1e-12 ? r / st : std::numeric_limits<double>::infinity();
        const double cap = ct > 1e-12 ? half_len / ct : std::numeric_limits<double>::infinity();
        return std::min(side, cap);
    };
    return mesh_from_radial(radial, resolution, 2 * resolution);
}

TriMesh hemisphere_mesh(int resolution) {
    // Dome radius from (2/3) pi R^3 = 4 pi / 3. Flat face down at
    // z = -3R/8 so the solid centroid sits at the origin.
    const double R = std::cbrt(2.0);
    const double zc = 3.0 * R / 8.0;  // depth of the flat face below origin
    auto radial = [=](double theta, double) {
        const double st = std::sin(theta), ct = std::cos(theta);
        // Flat disk spans directions within atan(R/zc) of the south pole.
        if (ct < 0.0 && st * zc <= (-ct) * R) {
            return zc / (-ct);
        }
        // Dome: sphere of radius R centered at (0,0,-zc).
        return -zc * ct + std::sqrt(R * R - zc * zc * st * st);
    };
    return mesh_from_radial(radial, resolution, 2 * resolution);
}

TriMesh ellipsoid_mesh(const std::array<double, 3>& ratios, int resolution) {
    for (double r : ratios)
        if (!(r > 0.0)) throw std::invalid_argument("ellipsoid ratios must be > 0");
    const double scale = std::cbrt(1.0 / (ratios[0] * ratios[1] * ratios[2]));
    const double a = scale * ratios[0], b = scale * ratios[1], c = scale * ratios[2];
    auto radial = [=](double theta, double phi) {
        const double st = std::sin(theta), ct = std::cos(theta);
        const double ux = st * std::cos(phi) / a;
        const double uy = st * std::sin(phi) / b;
        const double uz = ct / c;
        return 1.0 / std::sqrt(ux * ux + uy * uy + uz * uz);
    };
    return mesh_from_radial(radial, resolution, 2 * resolution);
}

TriMesh capsule_mesh(double aspect, int resolution) {
    if (aspect <= 1.0)
        throw std::invalid_argument("capsule aspect (total length / diameter) must be > 1");
    // Cylinder of length Lc with two hemispherical caps of radius r:
    // pi r^2 Lc + (4/3) pi r^3 = 4 pi / 3, Lc = 2 r (aspect - 1).
    const double r = std::cbrt(2.0 / (3.0 * (aspect - 1.0) + 2.0));
    const double half_cyl = r * (aspect - 1.0);
    const double cot_t = half_cyl / r;
    auto radial = [=](double theta, double) {
        const double st = std::sin(theta), ct = std::cos(theta);
        if (st > 1e-12 && std::abs(ct) / st <= cot_t) return r / st;
        // Cap: sphere of radius r centered at (0, 0, +-half_cyl).
        const double zc = ct >= 0.0 ? half_cyl : -half_cyl;
        return zc * ct + std::sqrt(r * r - half_cyl * half_cyl * st * st);
    };
    return mesh_from_radial(radial, resolution, 2 * resolution);
}

TriMesh cube_mesh() {
    const double h = std::cbrt(kUnitSphereVolume) / 2.0;
    TriMesh m;
    m.vertices = {{-h, -h, -h}, {h, -h, -h}, {h, h, -h}, {-h, h, -h},
                  {-h, -h, h},  {h, -h, h},  {h, h, h},  {-h, h, h}};
    m.faces = {{0, 2, 1}, {0, 3, 2},   // bottom (-z)
               {4, 5, 6}, {4, 6, 7},   // top (+z)
               {0, 1, 5}, {0, 5, 4},   // -y
               {2, 3, 7}, {2, 7, 6},   // +y
               {1, 2, 6}, {1, 6, 5},   // +x
               {3, 0, 4}, {3, 4, 7}};  // -x
    return m;
}

}  // namespace

PrimitiveSpec PrimitiveSpec::make(PrimitiveKind kind) {
    PrimitiveSpec spec;
    spec.kind = kind;
    return spec;
}

PrimitiveKind primitive_kind_from_name(const std::string& name) {
    if (name == "sphere") return PrimitiveKind::Sphere;
    if (name == "cylinder") return PrimitiveKind::Cylinder;
    if (name == "hemisphere") return PrimitiveKind::Hemisphere;
    if (name == "ellipsoid") return PrimitiveKind::Ellipsoid;
    if (name == "capsule") return PrimitiveKind::Capsule;
    if (name == "cube") return PrimitiveKind::Cube;
    throw std::invalid_argument("unknown primitive kind: " + name);
}

std::string to_string(PrimitiveKind kind) {
    switch (kind) {
        case PrimitiveKind::Sphere: return "sphere";
        case PrimitiveKind::Cylinder: return "cylinder";
        case PrimitiveKind::Hemisphere: return "hemisphere";
        case PrimitiveKind::Ellipsoid: return "ellipsoid";
        case PrimitiveKind::Capsule: return "capsule";
        case PrimitiveKind::Cube: return "cube";
    }
    throw std::invalid_argument("unknown primitive kind");
}

TriMesh make_primitive(const PrimitiveSpec& spec, int resolution) {
    switch (spec.kind) {
        case PrimitiveKind::Sphere: return sphere_mesh(resolution);
        case PrimitiveKind::Cylinder: return cylinder_mesh(spec.cylinder_aspect, resolution);
        case PrimitiveKind::Hemisphere: return hemisphere_mesh(resolution);
        case PrimitiveKind::Ellipsoid: return ellipsoid_mesh(spec.ellipsoid_axes, resolution);
        case PrimitiveKind::Capsule: return capsule_mesh(spec.capsule_aspect, resolution);
        case PrimitiveKind::Cube: return cube_mesh();
    }
    throw std::invalid_argument("unknown primitive kind");
}

}  // namespace monostat
