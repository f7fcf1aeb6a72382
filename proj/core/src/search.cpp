#include "monostat/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "monostat/convex_hull.hpp"
#include "monostat/parallel.hpp"

namespace monostat {

std::vector<std::pair<double, double>> SearchSpace::bounds() const {
    std::vector<std::pair<double, double>> b = {beta_bounds};
    for (std::size_t i = 0; i < fourier_orders.size(); ++i) b.push_back(coeff_bounds);
    return b;
}

SloanParams SearchSpace::decode(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != dimension())
        throw std::invalid_argument("search: point dimension mismatch");
    std::vector<FourierTerm> terms;
    terms.reserve(fourier_orders.size());
    for (std::size_t i = 0; i < fourier_orders.size(); ++i)
        terms.push_back({fourier_orders[i], x[i + 1]});
    return SloanParams(x[0], PhaseSpec::eta_fourier(std::move(terms)));
}

void SearchSpace::validate() const {
    auto check = [](const std::pair<double, double>& b, const char* what) {
        if (!(std::isfinite(b.first) && std::isfinite(b.second) && b.first < b.second))
            throw std::invalid_argument(std::string("search: bad bounds for ") + what);
    };
    check(beta_bounds, "beta");
    check(coeff_bounds, "coefficients");
    if (fourier_orders.empty()) throw std::invalid_argument("search: no Fourier orders");
}

void DeConfig::validate() const {
    if (population != 0 && population < 4)
        throw std::invalid_argument("de: population must be >= 4");
    if (!(mutation > 0.0 && mutation < 2.0))
        throw std::invalid_argument("de: mutation factor must lie in (0, 2)");
    if (!(crossover >= 0.0 && crossover <= 1.0))
        throw std::invalid_argument("de: crossover rate must lie in [0, 1]");
    if (max_generations < 1) throw std::invalid_argument("de: max_generations must be >= 1");
}

double basin_gap(const EcsReport& report) {
    if (report.ecs <= 1) return 0.0;
    return report.sinks[1].sink_height - report.sinks[0].sink_height;
}

ObjectiveBreakdown evaluate_objective(const SloanParams& params, const OracleConfig& oracle,
                                      double lambda_convex, double lambda_com) {
    ObjectiveBreakdown out;
    try {
        const TriMesh mesh = sloan_mesh(params, oracle.mesh_theta, oracle.mesh_phi);
        const MassProperties props = mass_properties(mesh);
        out.convexity = props.volume / mass_properties(convex_hull(mesh.vertices)).volume;
        const EcsReport report = ecs_report(mesh, oracle.ecs, props.centroid);
        out.ecs = report.ecs;
        out.gap = basin_gap(report);
        out.com_violation = com_constraint_violation(params.phase);
        out.value = out.gap + lambda_convex * std::max(0.0, 0.999 - out.convexity) +
                    lambda_com * out.com_violation;
    } catch (const std::exception&) {
        out.failed = true;
        out.value = 1e6;
    }
    return out;
}

namespace {

double reflect_into(double x, double lo, double hi) {
    // Mirror off the violated bound; clamp if a pathological step overshoots
    // repeatedly.
    for (int i = 0; i < 8 && (x < lo || x > hi); ++i) {
        if (x < lo) x = lo + (lo - x);
        if (x > hi) x = hi - (x - hi);
    }
    return std::clamp(x, lo, hi);
}

}  // namespace

DeResult differential_evolution(const std::function<double(const std::vector<double>&)>& objective,
                                const std::vector<std::pair<double, double>>& bounds,
                                const DeConfig& config) {
    config.validate();
    const int dim = static_cast<int>(bounds.size());
    if (dim < 1) throw std::invalid_argument("de: empty bounds");
    const int np = config.population > 0 ? config.population : 15 * dim;
    if (np < 4) throw std::invalid_argument("de: population must be >= 4");

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform_index = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };

    std::vector<std::vector<double>> pop(np, std::vector<double>(dim));
    for (auto& member : pop)
        for (int j = 0; j < dim; ++j)
            member[j] = bounds[j].first + unit(rng) * (bounds[j].second - bounds[j].first);

    std::vector<double> fitness(np);
    parallel_for(np, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) fitness[i] = objective(pop[i]);
    });

    DeResult result;
    result.evaluations = np;

    auto best_index = [&]() {
        int best = 0;
        for (int i = 1; i < np; ++i)
            if (fitness[i] < fitness[best]) best = i;
        return best;
    };
    auto record = [&](int generation) {
        const int b = best_index();
        result.trace.push_back({generation, fitness[b], pop[b]});
    };
    record(0);

    std::vector<std::vector<double>> trials(np, std::vector<double>(dim));
    std::vector<double> trial_fitness(np);

    for (int gen = 1; gen <= config.max_generations; ++gen) {
        for (int i = 0; i < np; ++i) {
            int r1, r2, r3;
            do { r1 = uniform_index(np); } while (r1 == i);
            do { r2 = uniform_index(np); } while (r2 == i || r2 == r1);
            do { r3 = uniform_index(np); } while (r3 == i || r3 == r1 || r3 == r2);
            const int j_rand = uniform_index(dim);
            for (int j = 0; j < dim; ++j) {
                if (j == j_rand || unit(rng) < config.crossover) {
                    const double v =
                        pop[r1][j] + config.mutation * (pop[r2][j] - pop[r3][j]);
                    trials[i][j] = reflect_into(v, bounds[j].first, bounds[j].second);
                } else {
                    trials[i][j] = pop[i][j];
                }
            }
        }
        parallel_for(np, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) trial_fitness[i] = objective(trials[i]);
        });
        result.evaluations += np;
        for (int i = 0; i < np; ++i) {
            if (trial_fitness[i] <= fitness[i]) {
                pop[i] = trials[i];
                fitness[i] = trial_fitness[i];
            }
        }
        record(gen);
        result.generations = gen;

        const auto [lo, hi] = std::minmax_element(fitness.begin(), fitness.end());
        if (*lo <= config.target_objective || *hi - *lo < config.convergence_tol) {
            result.converged = true;
            break;
        }
    }

    const int b = best_index();
    result.best_point = pop[b];
    result.best_value = fitness[b];
    return result;
}

VerificationReport verify_instance(const SloanParams& params, const EcsConfig& base) {
    static const std::vector<std::pair<int, int>> kResolutions = {
        {80, 160}, {100, 200}, {200, 400}};
    static const std::vector<double> kTaus = {0.005, 0.01, 0.05, 0.10};

    VerificationReport report;
    report.ecs_ok = true;
    for (const auto& [n_theta, n_phi] : kResolutions) {
        const TriMesh mesh = sloan_mesh(params, n_theta, n_phi);
        const Landscape landscape = build_landscape(mesh, base);
        if (n_theta == 100) {
            const MassProperties props = mass_properties(mesh);
            report.convexity = props.volume / mass_properties(convex_hull(mesh.vertices)).volume;
        }
        for (double tau : kTaus) {
            EcsConfig cell_config = base;
            cell_config.merge_tau = tau;
            const EcsReport cell = report_from_landscape(landscape, cell_config);
            report.cells.push_back({n_theta, n_phi, tau, cell.ecs, cell.boa, cell.h_range});
            if (cell.ecs != 1) report.ecs_ok = false;
            if (n_theta == 100 && tau == 0.01) report.h_range = cell.h_range;
        }
    }
    report.com_violation = com_constraint_violation(params.phase);
    report.convex_ok = report.convexity > 0.999;
    report.com_ok = report.com_violation < 1e-6;
    report.pass = report.ecs_ok && report.convex_ok && report.com_ok;
    return report;
}

OptimizeResult run_search_campaign(const SearchSpace& space, const OracleConfig& oracle,
                                   const DeConfig& de, double lambda_convex, double lambda_com,
                                   bool verify_best) {
    space.validate();
    auto objective = [&](const std::vector<double>& x) {
        return evaluate_objective(space.decode(x), oracle, lambda_convex, lambda_com).value;
    };
    const DeResult der = differential_evolution(objective, space.bounds(), de);

    OptimizeResult out;
    out.best_point = der.best_point;
    out.trace = der.trace;
    out.generations = der.generations;
    out.evaluations = der.evaluations;
    out.converged = der.converged;
    out.best_params = space.decode(der.best_point);
    out.best = evaluate_objective(*out.best_params, oracle, lambda_convex, lambda_com);
    if (verify_best) out.verification = verify_instance(*out.best_params, oracle.ecs);
    return out;
}

}  // namespace monostat
