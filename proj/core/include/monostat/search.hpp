#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "monostat/equilibrium.hpp"
#include "monostat/sloan.hpp"

namespace monostat {

/// Search box over (beta, a_k...) for the phase-extension campaign.
struct SearchSpace {
    std::pair<double, double> beta_bounds = {0.005, 0.08};
    std::vector<int> fourier_orders = {1};
    std::pair<double, double> coeff_bounds = {-0.5, 0.5};

    int dimension() const { return 1 + static_cast<int>(fourier_orders.size()); }
    std::vector<std::pair<double, double>> bounds() const;
    SloanParams decode(const std::vector<double>& x) const;
    void validate() const;
};

struct DeConfig {
    int population = 0;        // 0 -> 15 * dimension
    double mutation = 0.7;     // F
    double crossover = 0.9;    // CR
    int max_generations = 200;
    std::uint64_t seed = 0;
    double convergence_tol = 1e-8; // stop when the population objective spread falls below
    double target_objective = 0.0; // stop when the best objective reaches this

    void validate() const;
};

/// Inner-loop oracle used by objective evaluations: mesh resolution plus the
/// equilibrium configuration.
struct OracleConfig {
    int mesh_theta = 100;
    int mesh_phi = 200;
    EcsConfig ecs;
};

/// Height gap between the two lowest merged basins; zero when only one
/// basin exists.
double basin_gap(const EcsReport& report);

struct ObjectiveBreakdown {
    double value = 0.0;
    double gap = 0.0;
    double convexity = 0.0;     // mesh/hull volume ratio
    double com_violation = 0.0;
    int ecs = 0;
    bool failed = false;        // construction failed; value is the 1e6 sentinel
};

/// gap + lambda_convex * max(0, 0.999 - convexity) + lambda_com * com_violation.
/// Mesh construction failures return the 1e6 sentinel instead of throwing so
/// optimizers reject the candidate.
ObjectiveBreakdown evaluate_objective(const SloanParams& params, const OracleConfig& oracle,
                                      double lambda_convex = 10.0, double lambda_com = 10.0);

struct GenerationStats {
    int generation = 0;
    double best_objective = 0.0;
    std::vector<double> best_point;
};

struct DeResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    std::vector<GenerationStats> trace;
    int generations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// rand/1/bin differential evolution over box bounds. Out-of-bounds mutants
/// are reflected back inside. Deterministic for a fixed seed: trial vectors
/// are generated sequentially, evaluated in parallel (the objective must be
/// pure), and selected sequentially.
DeResult differential_evolution(const std::function<double(const std::vector<double>&)>& objective,
                                const std::vector<std::pair<double, double>>& bounds,
                                const DeConfig& config);

struct VerificationCell {
    int n_theta = 0;
    int n_phi = 0;
    double tau = 0.0;
    int ecs = 0;
    double boa = 0.0;
    double h_range = 0.0;
};

/// Full verification battery: ECS at resolutions {80x160, 100x200, 200x400}
/// crossed with merge thresholds {0.005, 0.01, 0.05, 0.10}. Passing requires
/// ECS = 1 in all 12 cells, convexity_ratio > 0.999 (at 100x200), and
/// COM-constraint violation < 1e-6.
struct VerificationReport {
    std::vector<VerificationCell> cells;
    double convexity = 0.0;
    double com_violation = 0.0;
    double h_range = 0.0;  // at the 100x200 / tau 0.01 cell
    bool ecs_ok = false;
    bool convex_ok = false;
    bool com_ok = false;
    bool pass = false;
};

VerificationReport verify_instance(const SloanParams& params, const EcsConfig& base = {});

/// End-to-end campaign: DE over the search space minimizing
/// evaluate_objective, then the verification battery on the best point.
struct OptimizeResult {
    std::vector<double> best_point;
    std::optional<SloanParams> best_params;
    ObjectiveBreakdown best;
    std::vector<GenerationStats> trace;
    int generations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
    std::optional<VerificationReport> verification;
};

OptimizeResult run_search_campaign(const SearchSpace& space, const OracleConfig& oracle,
                                   const DeConfig& de, double lambda_convex = 10.0,
                                   double lambda_com = 10.0, bool verify_best = true);

}  // namespace monostat
