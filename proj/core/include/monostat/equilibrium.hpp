#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "monostat/sloan.hpp"
#include "monostat/trimesh.hpp"

namespace monostat {

/// Oracle configuration. Defaults follow the working configuration used
/// throughout the experiment tables: 5,000 directions, k = 12, 1% merge.
struct EcsConfig {
    int n_dirs = 5000;
    int k = 12;
    double merge_tau = 0.01;   // fraction of the h-range
    double flat_floor = 0.005; // h-range below which the landscape is degenerate
    long seed = 0;             // reserved; the sampling itself is deterministic
    bool identify_antipodes = false;

    void validate() const;
};

/// Quasi-uniform unit directions by the golden-angle spiral:
/// z_i = 1 - 2(i + 0.5)/n, azimuth_i = 2*pi*i/golden_ratio. Deterministic.
std::vector<Vec3> fibonacci_sphere(int n);

/// Shared direction set plus its k-nearest-neighbor adjacency (symmetric
/// closure, sorted). Cached per (n, k); thread-safe.
struct SphereSampling {
    std::vector<Vec3> directions;
    std::vector<std::vector<std::int32_t>> knn;
};
const SphereSampling& sphere_sampling(int n, int k);

/// Center-of-mass height: c . d - min over vertices of v . d.
double com_height(const TriMesh& mesh, const Vec3& centroid, const Vec3& direction);

/// Support minimum (min of v . d over vertices) for each direction.
/// Parallel over directions; bitwise deterministic.
std::vector<double> support_minima(const TriMesh& mesh, const std::vector<Vec3>& directions);

/// Sampled COM height landscape over S^2 with its neighbor graph.
struct Landscape {
    std::vector<Vec3> directions;
    std::vector<double> heights;
    std::vector<std::vector<std::int32_t>> knn;

    double h_min() const;
    double h_max() const;
    double h_range() const { return h_max() - h_min(); }
};

Landscape build_landscape(const TriMesh& mesh, const EcsConfig& config);
/// Same, with the effective centroid substituted (ballast experiments).
Landscape build_landscape(const TriMesh& mesh, const EcsConfig& config, const Vec3& centroid);

/// Greedy descent: each node points at its lowest strictly-lower neighbor
/// (ties broken by lowest node index); nodes with none are sinks.
struct Drainage {
    std::vector<std::int32_t> descend_to; // -1 at sinks
    std::vector<std::int32_t> sink_of;    // terminal node of each node's path
    std::vector<std::int32_t> sinks;      // sink node ids, ascending
    std::vector<std::int32_t> basin_of;   // per node, index into `sinks`
};
Drainage drain(const Landscape& landscape);

/// Basin merging to a fixed point. A pair of basins merges when their sink
/// heights differ by less than tau * h_range AND some kNN edge joins them at
/// a crossing level within that band above the higher sink (basins that touch
/// only across high ridges stay distinct). Candidate pairs are processed in
/// deterministic order: sorted by sink-height difference, then sink indices.
/// The merged basin keeps the lower sink.
struct MergedBasins {
    int count = 0;
    std::vector<std::int32_t> group_of_basin; // raw basin -> merged group id
    std::vector<std::int32_t> group_of_node;  // node -> merged group id
    std::vector<std::int32_t> group_sink;     // group id -> sink node
};
MergedBasins merge_basins(const Landscape& landscape, const Drainage& drainage, double tau,
                          bool identify_antipodes = false);

struct BasinSummary {
    Vec3 sink_direction;
    double sink_height = 0.0;
    int member_count = 0;
};

struct EcsReport {
    int ecs = 0;
    int raw_basins = 0;
    double boa = 0.0;
    double h_range = 0.0;
    double h_min = 0.0;
    double h_max = 0.0;
    std::vector<BasinSummary> sinks;        // merged basins, lowest first
    bool degenerate = false;                // h_range < flat_floor
    std::vector<std::int32_t> basin_of;     // per sampled direction, id into `sinks`
};

EcsReport ecs_report(const TriMesh& mesh, const EcsConfig& config);
EcsReport ecs_report(const TriMesh& mesh, const EcsConfig& config, const Vec3& centroid);
/// Pipeline tail for callers that already hold a landscape.
EcsReport report_from_landscape(const Landscape& landscape, const EcsConfig& config);

struct DynamicsReport {
    double sre = 0.0;       // mean height drop from a sampled orientation to its sink
    double steepness = 0.0; // mean |dh| per unit angular distance over graph edges
    double boa = 0.0;
    bool degenerate = false;
};

DynamicsReport dynamics_report(const TriMesh& mesh, const EcsConfig& config);
DynamicsReport dynamics_from_landscape(const Landscape& landscape, const EcsConfig& config);

/// One merged-basin count per threshold, reusing a single landscape/drainage.
std::vector<std::pair<double, int>> threshold_sweep(const TriMesh& mesh,
                                                    const std::vector<double>& taus,
                                                    const EcsConfig& config);

struct ResolutionPoint {
    int n_theta = 0;
    int n_phi = 0;
    int ecs = 0;
    double h_range = 0.0;
};
std::vector<ResolutionPoint> resolution_sweep(const SloanParams& params,
                                              const std::vector<std::pair<int, int>>& resolutions,
                                              const EcsConfig& config);

}  // namespace monostat
