#pragma once

#include <optional>
#include <vector>

#include "monostat/equilibrium.hpp"

namespace monostat {

/// Ballast experiment: shift the effective center of mass toward the lowest
/// vertex and re-run the equilibrium oracle per weight fraction.
struct BallastConfig {
    std::vector<double> weights = {0.0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
    EcsConfig ecs;

    void validate() const;
};

struct BallastEntry {
    double weight = 0.0;
    int ecs = 0;
    double boa = 0.0;
    bool degenerate = false;
};

struct BallastReport {
    std::vector<BallastEntry> entries;
    std::optional<double> min_w_for_ecs1;
};

/// (1 - w) * centroid + w * v_bottom. v_bottom is the vertex with minimum z
/// in the canonical body frame (ties within 1e-9 broken by lowest vertex
/// index); it stays fixed in the body frame for every gravity direction.
Vec3 shifted_centroid(const TriMesh& mesh, double w);

BallastReport ballast_sweep(const TriMesh& mesh, const BallastConfig& config);

}  // namespace monostat
