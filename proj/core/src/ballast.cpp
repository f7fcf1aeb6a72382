#include "monostat/ballast.hpp"

#include <algorithm>
#include <stdexcept>

namespace monostat {

void BallastConfig::validate() const {
    if (weights.empty()) throw std::invalid_argument("ballast: weight grid is empty");
    if (!std::is_sorted(weights.begin(), weights.end()))
        throw std::invalid_argument("ballast: weights must be sorted ascending");
    for (double w : weights)
        if (!(w >= 0.0 && w < 1.0))
            throw std::invalid_argument("ballast: weights must lie in [0, 1)");
    ecs.validate();
}

namespace {

Vec3 bottom_vertex(const TriMesh& mesh) {
    double z_min = mesh.vertices.front().z;
    for (const Vec3& v : mesh.vertices) z_min = std::min(z_min, v.z);
    // Snap ties within 1e-9 so flat bottoms resolve to the lowest index
    // regardless of rounding in the generator.
    for (const Vec3& v : mesh.vertices)
        if (v.z <= z_min + 1e-9) return v;
    return mesh.vertices.front();
}

}  // namespace

Vec3 shifted_centroid(const TriMesh& mesh, double w) {
    if (!(w >= 0.0 && w < 1.0))
        throw std::invalid_argument("shifted_centroid: w must lie in [0, 1)");
    const Vec3 centroid = mass_properties(mesh).centroid;
    return centroid * (1.0 - w) + bottom_vertex(mesh) * w;
}

BallastReport ballast_sweep(const TriMesh& mesh, const BallastConfig& config) {
    config.validate();
    const Vec3 centroid = mass_properties(mesh).centroid;
    const Vec3 v_bottom = bottom_vertex(mesh);

    // The support term of the height landscape does not depend on the
    // centroid, so it is computed once and reused across the weight grid.
    const SphereSampling& sampling = sphere_sampling(config.ecs.n_dirs, config.ecs.k);
    const std::vector<double> supports = support_minima(mesh, sampling.directions);

    BallastReport report;
    for (double w : config.weights) {
        const Vec3 c = centroid * (1.0 - w) + v_bottom * w;
        Landscape landscape;
        landscape.directions = sampling.directions;
        landscape.knn = sampling.knn;
        landscape.heights.resize(supports.size());
        for (std::size_t i = 0; i < supports.size(); ++i)
            landscape.heights[i] = dot(c, sampling.directions[i]) - supports[i];
        const EcsReport ecs = report_from_landscape(landscape, config.ecs);
        report.entries.push_back({w, ecs.ecs, ecs.boa, ecs.degenerate});
        if (!report.min_w_for_ecs1 && ecs.ecs == 1) report.min_w_for_ecs1 = w;
    }
    return report;
}

}  // namespace monostat
