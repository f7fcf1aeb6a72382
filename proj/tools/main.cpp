// monostat: equilibrium-count analysis and mono-monostatic shape search.
//
// Subcommands mirror the experiment campaigns: validate (known geometries),
// sweep-beta, verify (published instances), optimize (DE campaign), ballast,
// dynamics, landscape, export, imu.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monostat/ballast.hpp"
#include "monostat/convex_hull.hpp"
#include "monostat/equilibrium.hpp"
#include "monostat/imu.hpp"
#include "monostat/mesh_io.hpp"
#include "monostat/parallel.hpp"
#include "monostat/primitives.hpp"
#include "monostat/search.hpp"
#include "monostat/serialize.hpp"
#include "monostat/sloan.hpp"

namespace fs = std::filesystem;
using namespace monostat;

namespace {

struct GlobalOptions {
    int n_dirs = 5000;
    int k = 12;
    double merge_tau = 0.01;
    long seed = 0;
    std::string resolution = "100x200";
    std::string out_dir;
    bool identify_antipodes = false;
    int threads = 0;

    EcsConfig ecs() const {
        EcsConfig config;
        config.n_dirs = n_dirs;
        config.k = k;
        config.merge_tau = merge_tau;
        config.seed = seed;
        config.identify_antipodes = identify_antipodes;
        return config;
    }

    std::pair<int, int> mesh_resolution() const {
        const auto sep = resolution.find('x');
        if (sep == std::string::npos)
            throw CLI::ValidationError("--resolution", "expected NxM, e.g. 100x200");
        try {
            return {std::stoi(resolution.substr(0, sep)), std::stoi(resolution.substr(sep + 1))};
        } catch (const std::exception&) {
            throw CLI::ValidationError("--resolution", "expected NxM, e.g. 100x200");
        }
    }
};

void add_global_flags(CLI::App* cmd, GlobalOptions& g) {
    cmd->add_option("--n-dirs", g.n_dirs, "S^2 sample directions")->capture_default_str();
    cmd->add_option("--k", g.k, "neighbors in the kNN graph")->capture_default_str();
    cmd->add_option("--merge-tau", g.merge_tau, "basin merge threshold (fraction of h-range)")
        ->capture_default_str();
    cmd->add_option("--resolution", g.resolution, "mesh grid NxM")->capture_default_str();
    cmd->add_option("--seed", g.seed, "campaign seed")->capture_default_str();
    cmd->add_option("--out", g.out_dir, "output directory for CSV/JSON reports");
    cmd->add_flag("--identify-antipodes", g.identify_antipodes,
                  "quotient the direction sphere by d <-> -d before counting basins");
    cmd->add_option("--threads", g.threads, "worker threads (0 = auto)");
}

void write_file(const GlobalOptions& g, const std::string& name, const std::string& text) {
    if (g.out_dir.empty()) return;
    fs::create_directories(g.out_dir);
    const fs::path path = fs::path(g.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

// Params from --instance or explicit --beta/--order/--coeff/--linear flags.
struct ParamFlags {
    std::string instance;
    double beta = -1.0;
    std::vector<int> orders;
    std::vector<double> coeffs;
    double linear = 0.0;
    bool use_linear = false;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--instance", instance, "published instance name (primary/second/third)");
        cmd->add_option("--beta", beta, "surface amplitude");
        cmd->add_option("--order", orders, "Fourier order(s) k");
        cmd->add_option("--coeff", coeffs, "Fourier coefficient(s) a_k");
        cmd->add_option("--linear", linear, "use the linear phase c*theta instead of eta");
        cmd->add_flag("--linear-phase", use_linear, "select the linear phase");
    }

    std::optional<std::pair<std::string, SloanParams>> resolve() const {
        if (!instance.empty()) {
            const VerifiedInstance& inst = verified_instance(instance == "gomboc" ? "primary"
                                                                                  : instance);
            return std::make_pair(inst.name, inst.params);
        }
        if (beta >= 0.0) {
            if (use_linear)
                return std::make_pair(std::string("custom"),
                                      SloanParams(beta, PhaseSpec::linear(linear)));
            if (orders.empty())
                return std::make_pair(std::string("custom"), SloanParams(beta, PhaseSpec::eta()));
            if (orders.size() != coeffs.size())
                throw CLI::ValidationError("--order/--coeff", "must come in pairs");
            std::vector<FourierTerm> terms;
            for (std::size_t i = 0; i < orders.size(); ++i)
                terms.push_back({orders[i], coeffs[i]});
            return std::make_pair(std::string("custom"),
                                  SloanParams(beta, PhaseSpec::eta_fourier(terms)));
        }
        return std::nullopt;
    }
};

// Named body: a primitive or a published instance.
TriMesh mesh_for_name(const std::string& name, const GlobalOptions& g) {
    const auto [n_theta, n_phi] = g.mesh_resolution();
    if (name == "gomboc" || name == "primary" || name == "second" || name == "third") {
        const VerifiedInstance& inst = verified_instance(name == "gomboc" ? "primary" : name);
        return sloan_mesh(inst.params, n_theta, n_phi);
    }
    return make_primitive(PrimitiveSpec::make(primitive_kind_from_name(name)), n_theta);
}

int cmd_validate(const GlobalOptions& g) {
    const EcsConfig config = g.ecs();
    const std::vector<std::string> names = {"sphere",    "cylinder", "hemisphere",
                                            "ellipsoid", "capsule",  "cube"};
    std::vector<NamedEcsRow> rows;
    std::map<std::string, EcsReport> by_name;
    for (const std::string& name : names) {
        const EcsReport report = ecs_report(mesh_for_name(name, g), config);
        rows.push_back({name, report});
        by_name[name] = report;
    }

    std::printf("%-12s %5s %6s %8s %9s %s\n", "geometry", "ecs", "raw", "boa", "h-range",
                "degenerate");
    for (const NamedEcsRow& row : rows)
        std::printf("%-12s %5d %6d %8.3f %9.4f %s\n", row.name.c_str(), row.report.ecs,
                    row.report.raw_basins, row.report.boa, row.report.h_range,
                    row.report.degenerate ? "yes" : "no");

    write_file(g, "validate.csv", validation_to_csv(rows));
    write_file(g, "validate.json", validation_to_json(rows));

    // Pass set for the validation table; the cube/cylinder counts depend on
    // whether antipodal basins are identified.
    std::vector<std::string> failures;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    };
    expect(by_name["capsule"].ecs == 1, "capsule ECS != 1");
    expect(by_name["sphere"].degenerate && by_name["sphere"].h_range < 0.005,
           "sphere not degenerate");
    if (g.identify_antipodes) {
        // The antipodal quotient only makes sense for centrally symmetric
        // bodies, so the hemisphere is not gated here.
        expect(by_name["cube"].ecs == 3, "cube ECS != 3");
        expect(by_name["cylinder"].ecs == 2, "cylinder ECS != 2");
    } else {
        expect(by_name["hemisphere"].ecs == 2, "hemisphere ECS != 2");
        expect(by_name["cube"].ecs == 3 || by_name["cube"].ecs == 6, "cube ECS not in {3,6}");
        expect(by_name["cylinder"].ecs == 2 || by_name["cylinder"].ecs == 3,
               "cylinder ECS not in {2,3}");
    }
    for (const std::string& f : failures) std::fprintf(stderr, "mismatch: %s\n", f.c_str());
    return failures.empty() ? 0 : 1;
}

int cmd_sweep_beta(const GlobalOptions& g, std::vector<double> betas) {
    const bool default_grid = betas.empty();
    if (default_grid) betas = {0.001, 0.005, 0.010, 0.020, 0.050, 0.100, 0.150};
    const auto [n_theta, n_phi] = g.mesh_resolution();
    const EcsConfig config = g.ecs();

    std::vector<BetaSweepRow> rows;
    std::printf("%8s %5s %10s %9s\n", "beta", "ecs", "convexity", "h-range");
    for (double beta : betas) {
        const SloanParams params(beta, PhaseSpec::eta());
        const TriMesh mesh = sloan_mesh(params, n_theta, n_phi);
        const double ratio = convexity_ratio(mesh);
        const EcsReport report = ecs_report(mesh, config);
        rows.push_back({beta, report.ecs, ratio, report.h_range, report.degenerate});
        std::printf("%8.3f %5d %10.6f %9.4f\n", beta, report.ecs, ratio, report.h_range);
    }
    write_file(g, "beta_sweep.csv", beta_sweep_to_csv(rows));

    if (!default_grid) return 0;
    std::vector<std::string> failures;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    };
    int min_ecs = rows.front().ecs;
    double argmin = rows.front().beta;
    for (const BetaSweepRow& r : rows)
        if (r.ecs < min_ecs) { min_ecs = r.ecs; argmin = r.beta; }
    expect(min_ecs == 2 && argmin == 0.05, "ECS minimum not 2 at beta=0.05");
    for (const BetaSweepRow& r : rows) {
        if (r.beta <= 0.05) expect(r.convexity > 0.999, "convexity at beta<=0.05");
        if (r.beta >= 0.10) expect(r.convexity < 0.999, "non-convexity at beta>=0.10");
        if (r.beta == 0.05) expect(std::abs(r.h_range - 0.097) <= 0.0097, "h-range at 0.05");
        if (r.beta == 0.02) expect(std::abs(r.h_range - 0.040) <= 0.0040, "h-range at 0.02");
        if (r.beta == 0.01) expect(std::abs(r.h_range - 0.020) <= 0.0020, "h-range at 0.01");
    }
    for (const std::string& f : failures) std::fprintf(stderr, "mismatch: %s\n", f.c_str());
    return failures.empty() ? 0 : 1;
}

int cmd_verify(const GlobalOptions& g, const ParamFlags& flags) {
    auto resolved = flags.resolve();
    if (!resolved) {
        std::fprintf(stderr, "verify: pass --instance or --beta [--order k --coeff a]\n");
        return 2;
    }
    const auto& [name, params] = *resolved;
    const VerificationReport report = verify_instance(params, g.ecs());
    std::printf("instance: %s (beta=%g, phase=%s)\n", name.c_str(), params.beta,
                params.phase.describe().c_str());
    for (const VerificationCell& c : report.cells)
        std::printf("  %3dx%-3d tau=%.3f  ecs=%d boa=%.3f h-range=%.4f\n", c.n_theta, c.n_phi,
                    c.tau, c.ecs, c.boa, c.h_range);
    std::printf("convexity_ratio=%.6f com_violation=%.3g => %s\n", report.convexity,
                report.com_violation, report.pass ? "PASS" : "FAIL");
    write_file(g, "verify_" + name + ".json", verification_to_json(name, params, report));
    return report.pass ? 0 : 1;
}

int cmd_optimize(const GlobalOptions& g, const std::string& config_path) {
    CampaignConfig campaign;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::fprintf(stderr, "optimize: cannot open %s\n", config_path.c_str());
            return 2;
        }
        std::ostringstream text;
        text << in.rdbuf();
        campaign = campaign_from_json(text.str());
    }
    campaign.de.seed = static_cast<std::uint64_t>(g.seed);
    campaign.oracle.ecs.identify_antipodes = g.identify_antipodes;

    const OptimizeResult result = run_search_campaign(campaign.space, campaign.oracle,
                                                      campaign.de, campaign.lambda_convex,
                                                      campaign.lambda_com);
    std::printf("generations=%d evaluations=%zu best_objective=%.6g\n", result.generations,
                result.evaluations, result.best.value);
    if (result.best_params)
        std::printf("best: beta=%.6f phase=%s gap=%.6g convexity=%.6f com=%.3g ecs=%d\n",
                    result.best_params->beta, result.best_params->phase.describe().c_str(),
                    result.best.gap, result.best.convexity, result.best.com_violation,
                    result.best.ecs);
    if (result.verification)
        std::printf("verification: %s\n", result.verification->pass ? "PASS" : "FAIL");
    write_file(g, "optimize_trace.csv", optimize_trace_to_csv(result));
    write_file(g, "optimize_result.json", optimize_result_to_json(result));
    return result.verification && result.verification->pass ? 0 : 1;
}

int cmd_ballast(const GlobalOptions& g, std::vector<std::string> names) {
    if (names.empty())
        names = {"gomboc", "sphere", "ellipsoid", "capsule", "cylinder", "cube"};
    BallastConfig config;
    config.ecs = g.ecs();
    std::vector<BallastRow> rows;
    std::printf("%-12s %-14s %s\n", "geometry", "min_w(ecs=1)", "ecs by weight");
    for (const std::string& name : names) {
        const TriMesh mesh = mesh_for_name(name, g);
        BallastRow row{name, ballast_sweep(mesh, config)};
        std::printf("%-12s %-14s", name.c_str(),
                    row.report.min_w_for_ecs1
                        ? std::to_string(*row.report.min_w_for_ecs1).substr(0, 4).c_str()
                        : ">0.30");
        for (const BallastEntry& e : row.report.entries) std::printf(" %d", e.ecs);
        std::printf("\n");
        rows.push_back(std::move(row));
    }
    write_file(g, "ballast.csv", ballast_to_csv(rows));
    write_file(g, "ballast.json", ballast_to_json(rows));
    return 0;
}

int cmd_dynamics(const GlobalOptions& g, std::vector<std::string> names) {
    if (names.empty()) names = {"gomboc", "ellipsoid", "capsule", "cylinder", "cube"};
    const EcsConfig config = g.ecs();
    std::vector<DynamicsRow> rows;
    std::printf("%-12s %4s %8s %9s %10s %7s\n", "geometry", "ecs", "sre", "h-range", "steepness",
                "boa");
    for (const std::string& name : names) {
        const TriMesh mesh = mesh_for_name(name, g);
        const Landscape landscape = build_landscape(mesh, config);
        const EcsReport report = report_from_landscape(landscape, config);
        const DynamicsReport dyn = dynamics_from_landscape(landscape, config);
        rows.push_back({name, report.ecs, dyn, report.h_range});
        std::printf("%-12s %4d %8.4f %9.4f %10.4f %7.3f\n", name.c_str(), report.ecs, dyn.sre,
                    report.h_range, dyn.steepness, dyn.boa);
    }
    write_file(g, "dynamics.csv", dynamics_to_csv(rows));
    return 0;
}

int cmd_landscape(const GlobalOptions& g, const ParamFlags& flags, const std::string& primitive) {
    TriMesh mesh;
    std::string name = primitive;
    if (!primitive.empty()) {
        mesh = mesh_for_name(primitive, g);
    } else {
        auto resolved = flags.resolve();
        if (!resolved) {
            std::fprintf(stderr, "landscape: pass --primitive, --instance or --beta\n");
            return 2;
        }
        const auto [n_theta, n_phi] = g.mesh_resolution();
        name = resolved->first;
        mesh = sloan_mesh(resolved->second, n_theta, n_phi);
    }
    const EcsConfig config = g.ecs();
    const Landscape landscape = build_landscape(mesh, config);
    const EcsReport report = report_from_landscape(landscape, config);
    std::printf("%s: ecs=%d boa=%.3f h-range=%.4f%s\n", name.c_str(), report.ecs, report.boa,
                report.h_range, report.degenerate ? " (degenerate)" : "");
    write_file(g, "landscape_" + name + ".csv", landscape_to_csv(landscape, report));
    write_file(g, "report_" + name + ".json", ecs_report_to_json(report));
    return 0;
}

int cmd_export(const GlobalOptions& g, const ParamFlags& flags, const std::string& primitive,
               const std::string& format, const std::string& path) {
    TriMesh mesh;
    if (!primitive.empty()) {
        mesh = mesh_for_name(primitive, g);
    } else {
        auto resolved = flags.resolve();
        if (!resolved) {
            std::fprintf(stderr, "export: pass --primitive, --instance or --beta\n");
            return 2;
        }
        const auto [n_theta, n_phi] = g.mesh_resolution();
        mesh = sloan_mesh(resolved->second, n_theta, n_phi);
    }
    export_mesh(mesh, mesh_format_from_name(format), path);
    std::printf("wrote %s (%zu vertices, %zu faces)\n", path.c_str(), mesh.vertex_count(),
                mesh.face_count());
    return 0;
}

int cmd_imu(double tolerance_mm, double scale_mm) {
    const double deg = imu_precision_degrees(tolerance_mm, scale_mm);
    std::printf("%.5f deg (%.1f arcsec)\n", deg, degrees_to_arcsec(deg));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equilibrium-count analysis and mono-monostatic shape search"};
    app.require_subcommand(1);

    GlobalOptions g;
    std::vector<double> betas;
    std::vector<std::string> geometries;
    ParamFlags verify_flags, landscape_flags, export_flags;
    std::string campaign_path, landscape_primitive, export_primitive;
    std::string export_format = "obj", export_path = "mesh.obj";
    double imu_tolerance = 0.01, imu_scale = 100.0;

    CLI::App* validate = app.add_subcommand("validate", "ECS oracle on the six known geometries");
    add_global_flags(validate, g);

    CLI::App* sweep = app.add_subcommand("sweep-beta", "ECS across beta for the eta phase");
    add_global_flags(sweep, g);
    sweep->add_option("--betas", betas, "beta values (default: the published grid)");

    CLI::App* verify = app.add_subcommand("verify", "full verification battery for an instance");
    add_global_flags(verify, g);
    verify_flags.add_to(verify);

    CLI::App* optimize = app.add_subcommand("optimize", "differential-evolution campaign");
    add_global_flags(optimize, g);
    optimize->add_option("--config", campaign_path, "campaign config JSON");

    CLI::App* ballast = app.add_subcommand("ballast", "minimum ballast fraction for ECS=1");
    add_global_flags(ballast, g);
    ballast->add_option("geometries", geometries, "bodies to test");

    CLI::App* dynamics = app.add_subcommand("dynamics", "self-righting metrics table");
    add_global_flags(dynamics, g);
    dynamics->add_option("geometries", geometries, "bodies to test");

    CLI::App* landscape = app.add_subcommand("landscape", "plot-ready landscape CSV");
    add_global_flags(landscape, g);
    landscape_flags.add_to(landscape);
    landscape->add_option("--primitive", landscape_primitive, "primitive name");

    CLI::App* exportc = app.add_subcommand("export", "write a mesh file");
    add_global_flags(exportc, g);
    export_flags.add_to(exportc);
    exportc->add_option("--primitive", export_primitive, "primitive name");
    exportc->add_option("--format", export_format, "obj | stl-ascii | stl")->capture_default_str();
    exportc->add_option("path", export_path, "output file");

    CLI::App* imu = app.add_subcommand("imu", "passive-fixture angular precision");
    imu->add_option("--tolerance-mm", imu_tolerance, "machining tolerance")->capture_default_str();
    imu->add_option("--scale-mm", imu_scale, "fixture scale")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (g.threads > 0) set_worker_threads(g.threads);
        if (validate->parsed()) return cmd_validate(g);
        if (sweep->parsed()) return cmd_sweep_beta(g, betas);
        if (verify->parsed()) return cmd_verify(g, verify_flags);
        if (optimize->parsed()) return cmd_optimize(g, campaign_path);
        if (ballast->parsed()) return cmd_ballast(g, geometries);
        if (dynamics->parsed()) return cmd_dynamics(g, geometries);
        if (landscape->parsed()) return cmd_landscape(g, landscape_flags, landscape_primitive);
        if (exportc->parsed())
            return cmd_export(g, export_flags, export_primitive, export_format, export_path);
        if (imu->parsed()) return cmd_imu(imu_tolerance, imu_scale);
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 2;
    }
    return 2;
}
