#include "monostat/trimesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace monostat {

namespace {

// Neumaier compensated accumulator.
struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace

double face_area(const TriMesh& mesh, std::size_t f) {
    const auto& [a, b, c] = mesh.faces[f];
    const Vec3 n = cross(mesh.vertices[b] - mesh.vertices[a],
                         mesh.vertices[c] - mesh.vertices[a]);
    return 0.5 * norm(n);
}

void validate_mesh(const TriMesh& mesh) {
    const auto nv = static_cast<std::int64_t>(mesh.vertices.size());
    if (nv < 4 || mesh.faces.size() < 4)
        throw std::invalid_argument("mesh: too few vertices or faces to bound a volume");
    for (const Vec3& v : mesh.vertices)
        if (!is_finite(v)) throw std::invalid_argument("mesh: non-finite vertex");
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        for (int idx : mesh.faces[f])
            if (idx < 0 || idx >= nv)
                throw std::invalid_argument("mesh: face " + std::to_string(f) +
                                            " references vertex " + std::to_string(idx) +
                                            " out of range");
        if (face_area(mesh, f) <= 1e-12)
            throw std::invalid_argument("mesh: degenerate face " + std::to_string(f));
    }
    Kahan vol;
    for (const auto& [a, b, c] : mesh.faces)
        vol.add(dot(mesh.vertices[a], cross(mesh.vertices[b], mesh.vertices[c])) / 6.0);
    if (vol.value() <= 0.0)
        throw std::invalid_argument("mesh: signed volume is not positive (check face orientation)");
}

MassProperties mass_properties(const TriMesh& mesh) {
    Kahan vol, cx, cy, cz;
    for (const auto& [a, b, c] : mesh.faces) {
        const Vec3& v0 = mesh.vertices[a];
        const Vec3& v1 = mesh.vertices[b];
        const Vec3& v2 = mesh.vertices[c];
        const double v = dot(v0, cross(v1, v2)) / 6.0;
        vol.add(v);
        // Tetrahedron centroid is (v0+v1+v2+0)/4.
        cx.add(v * (v0.x + v1.x + v2.x) * 0.25);
        cy.add(v * (v0.y + v1.y + v2.y) * 0.25);
        cz.add(v * (v0.z + v1.z + v2.z) * 0.25);
    }
    const double volume = vol.value();
    if (std::abs(volume) < 1e-9)
        throw std::invalid_argument("mass_properties: degenerate mesh, |volume| < 1e-9");
    MassProperties mp;
    mp.volume = volume;
    mp.centroid = Vec3{cx.value(), cy.value(), cz.value()} / volume;
    return mp;
}

TriMesh mesh_from_radial(const RadialFn& radial, int n_theta, int n_phi) {
    if (n_theta < 8 || n_phi < 16)
        throw std::invalid_argument("mesh_from_radial: need n_theta >= 8 and n_phi >= 16");

    auto eval = [&](double theta, double phi) {
        const double r = radial(theta, phi);
        if (!std::isfinite(r) || r <= 0.0)
            throw std::runtime_error("mesh_from_radial: radial function returned " +
                                     std::to_string(r) + " at theta=" + std::to_string(theta) +
                                     ", phi=" + std::to_string(phi));
        return r;
    };

    TriMesh mesh;
    mesh.vertices.reserve(static_cast<std::size_t>(n_theta - 1) * n_phi + 2);
    mesh.faces.reserve(2 * static_cast<std::size_t>(n_theta - 1) * n_phi);

    const double r_north = eval(0.0, 0.0);
    mesh.vertices.push_back({0.0, 0.0, r_north});
    for (int i = 1; i < n_theta; ++i) {
        const double theta = M_PI * i / n_theta;
        const double st = std::sin(theta), ct = std::cos(theta);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * M_PI * j / n_phi;
            const double r = eval(theta, phi);
            mesh.vertices.push_back({r * st * std::cos(phi), r * st * std::sin(phi), r * ct});
        }
    }
    const double r_south = eval(M_PI, 0.0);
    mesh.vertices.push_back({0.0, 0.0, -r_south});

    const auto ring = [&](int i, int j) {
        return 1 + (i - 1) * n_phi + (j % n_phi);
    };
    const int south = static_cast<int>(mesh.vertices.size()) - 1;

    // North fan: pole at +z, ring i=1. Counterclockwise from outside.
    for (int j = 0; j < n_phi; ++j)
        mesh.faces.push_back({0, ring(1, j), ring(1, j + 1)});
    // Interior quads.
    for (int i = 1; i < n_theta - 1; ++i) {
        for (int j = 0; j < n_phi; ++j) {
            const int a = ring(i, j), b = ring(i, j + 1);
            const int c = ring(i + 1, j), d = ring(i + 1, j + 1);
            mesh.faces.push_back({a, c, d});
            mesh.faces.push_back({a, d, b});
        }
    }
    // South fan.
    for (int j = 0; j < n_phi; ++j)
        mesh.faces.push_back({south, ring(n_theta - 1, j + 1), ring(n_theta - 1, j)});

    return mesh;
}

TriMesh translated(const TriMesh& mesh, const Vec3& offset) {
    TriMesh out = mesh;
    for (Vec3& v : out.vertices) v += offset;
    return out;
}

TriMesh scaled(const TriMesh& mesh, double factor) {
    TriMesh out = mesh;
    for (Vec3& v : out.vertices) v *= factor;
    return out;
}

TriMesh rotated(const TriMesh& mesh, const std::array<Vec3, 3>& rows) {
    TriMesh out = mesh;
    for (Vec3& v : out.vertices)
        v = Vec3{dot(rows[0], v), dot(rows[1], v), dot(rows[2], v)};
    return out;
}

}  // namespace monostat
