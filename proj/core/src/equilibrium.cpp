#include "monostat/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "monostat/parallel.hpp"

namespace monostat {

void EcsConfig::validate() const {
    if (n_dirs < 100) throw std::invalid_argument("ecs: n_dirs must be >= 100");
    if (k < 3) throw std::invalid_argument("ecs: k must be >= 3");
    if (!(merge_tau > 0.0 && merge_tau < 1.0))
        throw std::invalid_argument("ecs: merge_tau must lie in (0, 1)");
    if (!(flat_floor >= 0.0)) throw std::invalid_argument("ecs: flat_floor must be >= 0");
}

std::vector<Vec3> fibonacci_sphere(int n) {
    if (n < 1) throw std::invalid_argument("fibonacci_sphere: n must be >= 1");
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> dirs(n);
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / n;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double az = 2.0 * M_PI * i / golden;
        dirs[i] = {rho * std::cos(az), rho * std::sin(az), z};
    }
    return dirs;
}

namespace {

std::vector<std::vector<std::int32_t>> knn_graph(const std::vector<Vec3>& dirs, int k) {
    const auto n = static_cast<std::int32_t>(dirs.size());
    if (k >= n) throw std::invalid_argument("knn: k must be < number of directions");

    // Largest dot product == smallest angular distance.
    std::vector<std::int32_t> top(static_cast<std::size_t>(n) * k);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        std::vector<std::pair<double, std::int32_t>> best(k);
        for (std::size_t i = begin; i < end; ++i) {
            int filled = 0;
            double worst = -2.0;
            for (std::int32_t j = 0; j < n; ++j) {
                if (j == static_cast<std::int32_t>(i)) continue;
                const double d = dot(dirs[i], dirs[j]);
                if (filled < k) {
                    best[filled++] = {d, j};
                    if (filled == k) {
                        std::sort(best.begin(), best.end(),
                                  [](auto& a, auto& b) { return a.first > b.first; });
                        worst = best.back().first;
                    }
                    continue;
                }
                if (d <= worst) continue;
                int pos = k - 1;
                while (pos > 0 && best[pos - 1].first < d) {
                    best[pos] = best[pos - 1];
                    --pos;
                }
                best[pos] = {d, j};
                worst = best.back().first;
            }
            for (int s = 0; s < k; ++s) top[i * k + s] = best[s].second;
        }
    });

    std::vector<std::vector<std::int32_t>> adj(n);
    for (std::int32_t i = 0; i < n; ++i) adj[i].reserve(k + 4);
    for (std::int32_t i = 0; i < n; ++i) {
        for (int s = 0; s < k; ++s) {
            const std::int32_t j = top[static_cast<std::size_t>(i) * k + s];
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return adj;
}

struct SamplingCache {
    std::mutex mutex;
    std::map<std::pair<int, int>, std::unique_ptr<SphereSampling>> entries;
};
SamplingCache& sampling_cache() {
    static SamplingCache cache;
    return cache;
}

}  // namespace

const SphereSampling& sphere_sampling(int n, int k) {
    SamplingCache& cache = sampling_cache();
    std::unique_lock lock(cache.mutex);
    auto it = cache.entries.find({n, k});
    if (it != cache.entries.end()) return *it->second;
    lock.unlock();

    auto sampling = std::make_unique<SphereSampling>();
    sampling->directions = fibonacci_sphere(n);
    sampling->knn = knn_graph(sampling->directions, k);

    lock.lock();
    auto [pos, inserted] = cache.entries.try_emplace({n, k}, std::move(sampling));
    return *pos->second;
}

double com_height(const TriMesh& mesh, const Vec3& centroid, const Vec3& direction) {
    double lowest = std::numeric_limits<double>::infinity();
    for (const Vec3& v : mesh.vertices) lowest = std::min(lowest, dot(v, direction));
    return dot(centroid, direction) - lowest;
}

std::vector<double> support_minima(const TriMesh& mesh, const std::vector<Vec3>& directions) {
    const std::size_t nv = mesh.vertices.size();
    std::vector<double> xs(nv), ys(nv), zs(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        xs[i] = mesh.vertices[i].x;
        ys[i] = mesh.vertices[i].y;
        zs[i] = mesh.vertices[i].z;
    }
    std::vector<double> out(directions.size());
    parallel_for(directions.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t d = begin; d < end; ++d) {
            const double dx = directions[d].x, dy = directions[d].y, dz = directions[d].z;
            double lowest = std::numeric_limits<double>::infinity();
            for (std::size_t v = 0; v < nv; ++v) {
                const double s = xs[v] * dx + ys[v] * dy + zs[v] * dz;
                lowest = s < lowest ? s : lowest;
            }
            out[d] = lowest;
        }
    });
    return out;
}

double Landscape::h_min() const { return *std::min_element(heights.begin(), heights.end()); }
double Landscape::h_max() const { return *std::max_element(heights.begin(), heights.end()); }

Landscape build_landscape(const TriMesh& mesh, const EcsConfig& config, const Vec3& centroid) {
    config.validate();
    const SphereSampling& sampling = sphere_sampling(config.n_dirs, config.k);
    Landscape landscape;
    landscape.directions = sampling.directions;
    landscape.knn = sampling.knn;
    landscape.heights = support_minima(mesh, sampling.directions);
    for (std::size_t i = 0; i < landscape.heights.size(); ++i)
        landscape.heights[i] = dot(centroid, landscape.directions[i]) - landscape.heights[i];
    return landscape;
}

Landscape build_landscape(const TriMesh& mesh, const EcsConfig& config) {
    return build_landscape(mesh, config, mass_properties(mesh).centroid);
}

Drainage drain(const Landscape& landscape) {
    const auto n = static_cast<std::int32_t>(landscape.heights.size());
    Drainage d;
    d.descend_to.assign(n, -1);
    for (std::int32_t i = 0; i < n; ++i) {
        const double h = landscape.heights[i];
        std::int32_t target = -1;
        double target_h = h;
        for (std::int32_t j : landscape.knn[i]) {
            const double hj = landscape.heights[j];
            if (hj < target_h || (target >= 0 && hj == target_h && j < target)) {
                target_h = hj;
                target = j;
            }
        }
        d.descend_to[i] = target;  // -1 when no strictly lower neighbor
    }

    d.sink_of.assign(n, -1);
    std::vector<std::int32_t> path;
    for (std::int32_t i = 0; i < n; ++i) {
        if (d.sink_of[i] >= 0) continue;
        path.clear();
        std::int32_t cur = i;
        while (d.sink_of[cur] < 0 && d.descend_to[cur] >= 0) {
            path.push_back(cur);
            cur = d.descend_to[cur];
        }
        const std::int32_t sink = d.sink_of[cur] >= 0 ? d.sink_of[cur] : cur;
        for (std::int32_t node : path) d.sink_of[node] = sink;
        d.sink_of[cur] = sink;
    }

    d.sinks.clear();
    for (std::int32_t i = 0; i < n; ++i)
        if (d.descend_to[i] < 0) d.sinks.push_back(i);
    d.basin_of.assign(n, -1);
    std::vector<std::int32_t> index_of_sink(n, -1);
    for (std::size_t b = 0; b < d.sinks.size(); ++b) index_of_sink[d.sinks[b]] = static_cast<std::int32_t>(b);
    for (std::int32_t i = 0; i < n; ++i) d.basin_of[i] = index_of_sink[d.sink_of[i]];
    return d;
}

namespace {

struct UnionFind {
    std::vector<std::int32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::int32_t find(std::int32_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(std::int32_t a, std::int32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

namespace {

// Altitude scale (fraction of the h-range) separating the two merge regimes.
// Basins whose sinks lie within this fraction of each other are peer minima:
// they merge only when their sink difference is inside the tau band and they
// connect through valley-level terrain (crossing within this fraction above
// the sinks). A basin whose sink lies further than this above a neighbor is
// a pocket on that neighbor's slope: it merges when its enclosure
// (crossing - own sink) is inside the tau band, which removes discrete
// saddle dimples without touching genuine shallow co-minima. Real ridges
// between distinct equilibria run several times higher than this scale.
constexpr double kAdjacencyRelief = 0.10;

}  // namespace

MergedBasins merge_basins(const Landscape& landscape, const Drainage& drainage, double tau,
                          bool identify_antipodes) {
    const auto n = static_cast<std::int32_t>(landscape.heights.size());
    const auto nb = static_cast<std::int32_t>(drainage.sinks.size());
    const double band = tau * landscape.h_range();
    const double adjacency_floor = kAdjacencyRelief * landscape.h_range();

    UnionFind uf(nb);
    // Representative sink per group: the lowest sink (ties: lowest node id).
    auto group_sink = [&](std::int32_t group) {
        return drainage.sinks[group];
    };
    // After a union, keep the root pointing at the better sink by choosing
    // which root survives.
    auto unite_keep_lower = [&](std::int32_t ga, std::int32_t gb) {
        const std::int32_t sa = group_sink(ga), sb = group_sink(gb);
        const double ha = landscape.heights[sa], hb = landscape.heights[sb];
        const bool a_keeps = ha < hb || (ha == hb && sa < sb);
        if (a_keeps)
            uf.parent[gb] = ga;
        else
            uf.parent[ga] = gb;
    };

    struct Candidate {
        double diff;
        std::int32_t lo_sink, hi_sink;
        std::int32_t ga, gb;
        double crossing;
    };

    while (true) {
        std::vector<Candidate> eligible;
        for (std::int32_t i = 0; i < n; ++i) {
            for (std::int32_t j : landscape.knn[i]) {
                if (j <= i) continue;
                std::int32_t ga = uf.find(drainage.basin_of[i]);
                std::int32_t gb = uf.find(drainage.basin_of[j]);
                if (ga == gb) continue;
                const std::int32_t sa = group_sink(ga), sb = group_sink(gb);
                const double ha = landscape.heights[sa], hb = landscape.heights[sb];
                const double diff = std::abs(ha - hb);
                const double crossing = std::max(landscape.heights[i], landscape.heights[j]);
                const double persistence = crossing - std::max(ha, hb);
                const bool peer_minima = diff < band && persistence < adjacency_floor;
                const bool slope_pocket = diff >= adjacency_floor && persistence < band;
                if (!peer_minima && !slope_pocket) continue;
                eligible.push_back({diff, std::min(sa, sb), std::max(sa, sb), ga, gb, crossing});
            }
        }
        if (eligible.empty()) break;
        std::sort(eligible.begin(), eligible.end(), [](const Candidate& a, const Candidate& b) {
            if (a.diff != b.diff) return a.diff < b.diff;
            if (a.lo_sink != b.lo_sink) return a.lo_sink < b.lo_sink;
            return a.hi_sink < b.hi_sink;
        });
        // Merge in sorted order. Earlier merges in the pass can change group
        // sinks, so both conditions are re-validated per pair (the recorded
        // edge keeps witnessing adjacency of the enclosing groups); the outer
        // loop re-scans until a fixed point.
        bool merged_any = false;
        for (const Candidate& c : eligible) {
            const std::int32_t ga = uf.find(c.ga), gb = uf.find(c.gb);
            if (ga == gb) continue;
            const std::int32_t sa = group_sink(ga), sb = group_sink(gb);
            const double ha = landscape.heights[sa], hb = landscape.heights[sb];
            const double diff = std::abs(ha - hb);
            const double persistence = c.crossing - std::max(ha, hb);
            const bool peer_minima = diff < band && persistence < adjacency_floor;
            const bool slope_pocket = diff >= adjacency_floor && persistence < band;
            if (!peer_minima && !slope_pocket) continue;
            unite_keep_lower(ga, gb);
            merged_any = true;
        }
        if (!merged_any) break;
    }

    if (identify_antipodes) {
        // Quotient d <-> -d: union each group with the group owning the node
        // nearest to its sink's antipode.
        std::vector<std::int32_t> roots;
        for (std::int32_t b = 0; b < nb; ++b)
            if (uf.find(b) == b) roots.push_back(b);
        for (std::int32_t root : roots) {
            const Vec3 anti = -landscape.directions[group_sink(root)];
            std::int32_t nearest = 0;
            double best = -2.0;
            for (std::int32_t i = 0; i < n; ++i) {
                const double d = dot(landscape.directions[i], anti);
                if (d > best) {
                    best = d;
                    nearest = i;
                }
            }
            uf.unite(root, drainage.basin_of[nearest]);
        }
    }

    MergedBasins out;
    out.group_of_basin.assign(nb, -1);
    // Stable group numbering: ascending sink height, ties by sink node id.
    std::vector<std::int32_t> roots;
    for (std::int32_t b = 0; b < nb; ++b)
        if (uf.find(b) == b) roots.push_back(b);
    std::vector<std::int32_t> best_sink(roots.size());
    for (std::size_t g = 0; g < roots.size(); ++g) {
        std::int32_t best = -1;
        for (std::int32_t b = 0; b < nb; ++b) {
            if (uf.find(b) != roots[g]) continue;
            const std::int32_t s = drainage.sinks[b];
            if (best < 0 || landscape.heights[s] < landscape.heights[best] ||
                (landscape.heights[s] == landscape.heights[best] && s < best))
                best = s;
        }
        best_sink[g] = best;
    }
    std::vector<std::size_t> order(roots.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ha = landscape.heights[best_sink[a]], hb = landscape.heights[best_sink[b]];
        if (ha != hb) return ha < hb;
        return best_sink[a] < best_sink[b];
    });

    out.count = static_cast<int>(roots.size());
    out.group_sink.resize(roots.size());
    std::vector<std::int32_t> rank_of_root(nb, -1);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        rank_of_root[roots[order[rank]]] = static_cast<std::int32_t>(rank);
        out.group_sink[rank] = best_sink[order[rank]];
    }
    for (std::int32_t b = 0; b < nb; ++b) out.group_of_basin[b] = rank_of_root[uf.find(b)];
    out.group_of_node.resize(n);
    for (std::int32_t i = 0; i < n; ++i)
        out.group_of_node[i] = out.group_of_basin[drainage.basin_of[i]];
    return out;
}

EcsReport report_from_landscape(const Landscape& landscape, const EcsConfig& config) {
    const auto n = static_cast<std::int32_t>(landscape.heights.size());
    const Drainage drainage = drain(landscape);
    const MergedBasins merged =
        merge_basins(landscape, drainage, config.merge_tau, config.identify_antipodes);

    EcsReport report;
    report.h_min = landscape.h_min();
    report.h_max = landscape.h_max();
    report.h_range = report.h_max - report.h_min;
    report.degenerate = report.h_range < config.flat_floor;
    report.raw_basins = static_cast<int>(drainage.sinks.size());
    report.ecs = merged.count;
    report.basin_of = merged.group_of_node;

    report.sinks.resize(merged.count);
    for (int g = 0; g < merged.count; ++g) {
        const std::int32_t s = merged.group_sink[g];
        report.sinks[g].sink_direction = landscape.directions[s];
        report.sinks[g].sink_height = landscape.heights[s];
        report.sinks[g].member_count = 0;
    }
    for (std::int32_t i = 0; i < n; ++i) ++report.sinks[merged.group_of_node[i]].member_count;

    // Global minimum node (ties: lowest index) owns the attracting basin.
    std::int32_t global_min = 0;
    for (std::int32_t i = 1; i < n; ++i)
        if (landscape.heights[i] < landscape.heights[global_min]) global_min = i;
    report.boa =
        static_cast<double>(report.sinks[merged.group_of_node[global_min]].member_count) / n;
    return report;
}

EcsReport ecs_report(const TriMesh& mesh, const EcsConfig& config, const Vec3& centroid) {
    return report_from_landscape(build_landscape(mesh, config, centroid), config);
}

EcsReport ecs_report(const TriMesh& mesh, const EcsConfig& config) {
    return report_from_landscape(build_landscape(mesh, config), config);
}

DynamicsReport dynamics_from_landscape(const Landscape& landscape, const EcsConfig& config) {
    const auto n = static_cast<std::int32_t>(landscape.heights.size());
    const EcsReport report = report_from_landscape(landscape, config);
    DynamicsReport dyn;
    dyn.boa = report.boa;
    dyn.degenerate = report.degenerate;
    if (report.degenerate) return dyn;  // sre = steepness = 0 on a flat landscape

    const Drainage drainage = drain(landscape);
    double drop_sum = 0.0;
    for (std::int32_t i = 0; i < n; ++i)
        drop_sum += landscape.heights[i] - landscape.heights[drainage.sink_of[i]];
    dyn.sre = drop_sum / n;

    double grad_sum = 0.0;
    std::size_t edges = 0;
    for (std::int32_t i = 0; i < n; ++i) {
        for (std::int32_t j : landscape.knn[i]) {
            if (j <= i) continue;
            const double angle = angle_between(landscape.directions[i], landscape.directions[j]);
            if (angle <= 0.0) continue;
            grad_sum += std::abs(landscape.heights[i] - landscape.heights[j]) / angle;
            ++edges;
        }
    }
    dyn.steepness = edges > 0 ? grad_sum / static_cast<double>(edges) : 0.0;
    return dyn;
}

DynamicsReport dynamics_report(const TriMesh& mesh, const EcsConfig& config) {
    return dynamics_from_landscape(build_landscape(mesh, config), config);
}

std::vector<std::pair<double, int>> threshold_sweep(const TriMesh& mesh,
                                                    const std::vector<double>& taus,
                                                    const EcsConfig& config) {
    const Landscape landscape = build_landscape(mesh, config);
    const Drainage drainage = drain(landscape);
    std::vector<std::pair<double, int>> out;
    out.reserve(taus.size());
    for (double tau : taus) {
        const MergedBasins merged =
            merge_basins(landscape, drainage, tau, config.identify_antipodes);
        out.emplace_back(tau, merged.count);
    }
    return out;
}

std::vector<ResolutionPoint> resolution_sweep(const SloanParams& params,
                                              const std::vector<std::pair<int, int>>& resolutions,
                                              const EcsConfig& config) {
    std::vector<ResolutionPoint> out;
    out.reserve(resolutions.size());
    for (const auto& [n_theta, n_phi] : resolutions) {
        const TriMesh mesh = sloan_mesh(params, n_theta, n_phi);
        const EcsReport report = ecs_report(mesh, config);
        out.push_back({n_theta, n_phi, report.ecs, report.h_range});
    }
    return out;
}

}  // namespace monostat
