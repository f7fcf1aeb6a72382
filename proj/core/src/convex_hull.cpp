#include "monostat/convex_hull.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace monostat {

namespace {

constexpr double kPlaneEps = 1e-10;

struct Face {
    std::int32_t v[3];
    std::int32_t neighbor[3];  // across edge (v[i], v[i+1])
    Vec3 normal;               // unit
    double offset;             // plane: dot(normal, x) = offset
    bool alive = true;
    std::vector<std::int32_t> outside;
    std::int32_t furthest = -1;
    double furthest_dist = 0.0;
};

struct HullBuilder {
    const std::vector<Vec3>& pts;
    std::vector<Face> faces;
    std::deque<std::int32_t> pending;

    explicit HullBuilder(const std::vector<Vec3>& p) : pts(p) {}

    double dist(std::int32_t f, std::int32_t p) const {
        return dot(faces[f].normal, pts[p]) - faces[f].offset;
    }

    std::int32_t add_face(std::int32_t a, std::int32_t b, std::int32_t c) {
        Face f;
        f.v[0] = a; f.v[1] = b; f.v[2] = c;
        f.neighbor[0] = f.neighbor[1] = f.neighbor[2] = -1;
        Vec3 n = cross(pts[b] - pts[a], pts[c] - pts[a]);
        const double len = norm(n);
        if (len <= 0.0) throw std::invalid_argument("convex_hull: degenerate face");
        f.normal = n / len;
        f.offset = dot(f.normal, pts[a]);
        faces.push_back(std::move(f));
        return static_cast<std::int32_t>(faces.size()) - 1;
    }

    void claim(std::int32_t f, std::int32_t p) {
        const double d = dist(f, p);
        faces[f].outside.push_back(p);
        if (d > faces[f].furthest_dist) {
            faces[f].furthest_dist = d;
            faces[f].furthest = p;
        }
    }

    // Assign p to the first face in `candidates` it lies above; returns false
    // if p is inside all of them.
    bool assign(std::int32_t p, const std::vector<std::int32_t>& candidates) {
        for (std::int32_t f : candidates) {
            if (dist(f, p) > kPlaneEps) {
                claim(f, p);
                return true;
            }
        }
        return false;
    }

    void build_initial_simplex() {
        const auto n = static_cast<std::int32_t>(pts.size());
        if (n < 4) throw std::invalid_argument("convex_hull: need at least 4 points");

        std::int32_t i0 = 0, i1 = 0;
        for (std::int32_t i = 1; i < n; ++i) {
            if (pts[i].x < pts[i0].x) i0 = i;
            if (pts[i].x > pts[i1].x) i1 = i;
        }
        if (norm(pts[i1] - pts[i0]) < kPlaneEps) {
            // Flat in x; fall back to max pairwise among axis extremes.
            for (std::int32_t i = 1; i < n; ++i) {
                if (pts[i].y < pts[i0].y) i0 = i;
                if (pts[i].y > pts[i1].y) i1 = i;
            }
        }
        if (norm(pts[i1] - pts[i0]) < kPlaneEps)
            throw std::invalid_argument("convex_hull: all points coincident");

        std::int32_t i2 = -1;
        double best = kPlaneEps;
        const Vec3 d01 = pts[i1] - pts[i0];
        for (std::int32_t i = 0; i < n; ++i) {
            const double a = norm(cross(d01, pts[i] - pts[i0])) / norm(d01);
            if (a > best) { best = a; i2 = i; }
        }
        if (i2 < 0) throw std::invalid_argument("convex_hull: input is collinear");

        std::int32_t i3 = -1;
        best = kPlaneEps;
        Vec3 nrm = normalized(cross(d01, pts[i2] - pts[i0]));
        for (std::int32_t i = 0; i < n; ++i) {
            const double h = std::abs(dot(nrm, pts[i] - pts[i0]));
            if (h > best) { best = h; i3 = i; }
        }
        if (i3 < 0) throw std::invalid_argument("convex_hull: input is coplanar");

        if (dot(nrm, pts[i3] - pts[i0]) > 0.0) std::swap(i1, i2);

        // Tetrahedron i0,i1,i2 base with apex i3 below the base plane.
        const std::int32_t f0 = add_face(i0, i1, i2);
        const std::int32_t f1 = add_face(i0, i3, i1);
        const std::int32_t f2 = add_face(i1, i3, i2);
        const std::int32_t f3 = add_face(i2, i3, i0);
        auto link = [&](std::int32_t fa, int ea, std::int32_t fb, int eb) {
            faces[fa].neighbor[ea] = fb;
            faces[fb].neighbor[eb] = fa;
        };
        link(f0, 0, f1, 2);  // edge i0-i1
        link(f0, 1, f2, 2);  // edge i1-i2
        link(f0, 2, f3, 2);  // edge i2-i0
        link(f1, 0, f3, 1);  // edge i0-i3
        link(f1, 1, f2, 0);  // edge i3-i1
        link(f2, 1, f3, 0);  // edge i3-i2

        const std::vector<std::int32_t> initial = {f0, f1, f2, f3};
        for (std::int32_t p = 0; p < n; ++p) {
            if (p == i0 || p == i1 || p == i2 || p == i3) continue;
            assign(p, initial);
        }
        for (std::int32_t f : initial)
            if (!faces[f].outside.empty()) pending.push_back(f);
    }

    void grow() {
        while (!pending.empty()) {
            const std::int32_t seed = pending.front();
            pending.pop_front();
            if (!faces[seed].alive || faces[seed].outside.empty()) continue;
            const std::int32_t apex = faces[seed].furthest;

            // Flood-fill the region visible from the apex.
            std::vector<std::int32_t> visible = {seed};
            std::vector<std::int32_t> stack = {seed};
            std::vector<char> seen(faces.size(), 0);
            seen[seed] = 1;
            struct HorizonEdge { std::int32_t a, b, outer; };
            std::vector<HorizonEdge> horizon;
            while (!stack.empty()) {
                const std::int32_t f = stack.back();
                stack.pop_back();
                for (int e = 0; e < 3; ++e) {
                    const std::int32_t nb = faces[f].neighbor[e];
                    if (seen[nb]) continue;
                    if (dist(nb, apex) > kPlaneEps) {
                        seen[nb] = 1;
                        visible.push_back(nb);
                        stack.push_back(nb);
                    } else {
                        horizon.push_back({faces[f].v[e], faces[f].v[(e + 1) % 3], nb});
                    }
                }
            }

            // New cone: one face per horizon edge, oriented as the edge ran
            // in its old (visible) face.
            std::unordered_map<std::int32_t, std::int32_t> face_starting_at;
            std::unordered_map<std::int32_t, std::int32_t> face_ending_at;
            std::vector<std::int32_t> created;
            created.reserve(horizon.size());
            for (const auto& he : horizon) {
                const std::int32_t nf = add_face(he.a, he.b, apex);
                created.push_back(nf);
                faces[nf].neighbor[0] = he.outer;
                // The outer face holds this edge reversed; repoint it at us.
                for (int e = 0; e < 3; ++e)
                    if (faces[he.outer].v[e] == he.b &&
                        faces[he.outer].v[(e + 1) % 3] == he.a) {
                        faces[he.outer].neighbor[e] = nf;
                        break;
                    }
                face_starting_at[he.a] = nf;
                face_ending_at[he.b] = nf;
            }
            for (std::size_t i = 0; i < created.size(); ++i) {
                Face& f = faces[created[i]];
                f.neighbor[1] = face_starting_at.at(f.v[1]);  // edge (b, apex)
                f.neighbor[2] = face_ending_at.at(f.v[0]);    // edge (apex, a)
            }

            // Redistribute orphaned points among the new faces.
            for (std::int32_t f : visible) {
                for (std::int32_t p : faces[f].outside) {
                    if (p == apex) continue;
                    assign(p, created);
                }
                faces[f].alive = false;
                faces[f].outside.clear();
                faces[f].outside.shrink_to_fit();
            }
            for (std::int32_t f : created)
                if (!faces[f].outside.empty()) pending.push_back(f);
        }
    }

    TriMesh extract() const {
        TriMesh out;
        std::unordered_map<std::int32_t, std::int32_t> remap;
        for (const Face& f : faces) {
            if (!f.alive) continue;
            std::array<std::int32_t, 3> tri{};
            for (int i = 0; i < 3; ++i) {
                auto [it, inserted] = remap.try_emplace(
                    f.v[i], static_cast<std::int32_t>(out.vertices.size()));
                if (inserted) out.vertices.push_back(pts[f.v[i]]);
                tri[i] = it->second;
            }
            out.faces.push_back(tri);
        }
        return out;
    }
};

}  // namespace

TriMesh convex_hull(const std::vector<Vec3>& points) {
    HullBuilder builder(points);
    builder.build_initial_simplex();
    builder.grow();
    return builder.extract();
}

double convexity_ratio(const TriMesh& mesh) {
    const MassProperties mesh_props = mass_properties(mesh);
    if (mesh_props.volume <= 0.0)
        throw std::invalid_argument("convexity_ratio: mesh volume must be positive");
    const TriMesh hull = convex_hull(mesh.vertices);
    const double hull_volume = mass_properties(hull).volume;
    return mesh_props.volume / hull_volume;
}

bool point_in_convex(const TriMesh& hull, const Vec3& p, double tol) {
    for (const auto& [a, b, c] : hull.faces) {
        const Vec3 n = normalized(cross(hull.vertices[b] - hull.vertices[a],
                                        hull.vertices[c] - hull.vertices[a]));
        if (dot(n, p - hull.vertices[a]) > tol) return false;
    }
    return true;
}

}  // namespace monostat
