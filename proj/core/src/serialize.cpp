#include "monostat/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace monostat {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

ordered_json report_json(const EcsReport& r) {
    ordered_json j;
    j["ecs"] = r.ecs;
    j["raw_basins"] = r.raw_basins;
    j["boa"] = r.boa;
    j["h_range"] = r.h_range;
    j["h_min"] = r.h_min;
    j["h_max"] = r.h_max;
    j["degenerate"] = r.degenerate;
    ordered_json sinks = ordered_json::array();
    for (const BasinSummary& s : r.sinks) {
        ordered_json row;
        row["direction"] = {s.sink_direction.x, s.sink_direction.y, s.sink_direction.z};
        row["height"] = s.sink_height;
        row["members"] = s.member_count;
        sinks.push_back(std::move(row));
    }
    j["sinks"] = std::move(sinks);
    return j;
}

ordered_json phase_json(const PhaseSpec& phase) {
    ordered_json j;
    switch (phase.kind()) {
        case PhaseKind::Linear:
            j["kind"] = "linear";
            j["coefficient"] = phase.linear_coeff();
            break;
        case PhaseKind::Eta:
            j["kind"] = "eta";
            break;
        case PhaseKind::EtaFourier: {
            j["kind"] = "eta_fourier";
            ordered_json terms = ordered_json::array();
            for (const FourierTerm& t : phase.terms())
                terms.push_back({{"order", t.order}, {"coeff", t.coeff}});
            j["terms"] = std::move(terms);
            break;
        }
    }
    return j;
}

PhaseSpec phase_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear") return PhaseSpec::linear(j.at("coefficient").get<double>());
    if (kind == "eta") return PhaseSpec::eta();
    if (kind == "eta_fourier") {
        std::vector<FourierTerm> terms;
        for (const auto& t : j.at("terms"))
            terms.push_back({t.at("order").get<int>(), t.at("coeff").get<double>()});
        return PhaseSpec::eta_fourier(std::move(terms));
    }
    throw std::invalid_argument("unknown phase kind: " + kind);
}

}  // namespace

std::string landscape_to_csv(const Landscape& landscape, const EcsReport& report) {
    std::ostringstream out;
    out << "direction_x,direction_y,direction_z,longitude,latitude,height,basin_id\n";
    for (std::size_t i = 0; i < landscape.directions.size(); ++i) {
        const Vec3& d = landscape.directions[i];
        const double lon = std::atan2(d.y, d.x);
        const double lat = std::asin(std::clamp(d.z, -1.0, 1.0));
        out << num(d.x) << ',' << num(d.y) << ',' << num(d.z) << ',' << num(lon) << ','
            << num(lat) << ',' << num(landscape.heights[i]) << ',' << report.basin_of[i] << '\n';
    }
    return out.str();
}

std::string ecs_report_to_json(const EcsReport& report) {
    return report_json(report).dump(2) + "\n";
}

std::string validation_to_csv(const std::vector<NamedEcsRow>& rows) {
    std::ostringstream out;
    out << "geometry,ecs,raw_basins,boa,h_range,degenerate\n";
    for (const NamedEcsRow& row : rows)
        out << row.name << ',' << row.report.ecs << ',' << row.report.raw_basins << ','
            << num(row.report.boa) << ',' << num(row.report.h_range) << ','
            << (row.report.degenerate ? 1 : 0) << '\n';
    return out.str();
}

std::string validation_to_json(const std::vector<NamedEcsRow>& rows) {
    ordered_json j = ordered_json::array();
    for (const NamedEcsRow& row : rows) {
        ordered_json entry;
        entry["geometry"] = row.name;
        entry["report"] = report_json(row.report);
        j.push_back(std::move(entry));
    }
    return j.dump(2) + "\n";
}

std::string beta_sweep_to_csv(const std::vector<BetaSweepRow>& rows) {
    std::ostringstream out;
    out << "beta,ecs,convexity_ratio,convex,h_range,degenerate\n";
    for (const BetaSweepRow& r : rows)
        out << num(r.beta) << ',' << r.ecs << ',' << num(r.convexity) << ','
            << (r.convexity > 0.999 ? "yes" : "no") << ',' << num(r.h_range) << ','
            << (r.degenerate ? 1 : 0) << '\n';
    return out.str();
}

std::string dynamics_to_csv(const std::vector<DynamicsRow>& rows) {
    std::ostringstream out;
    out << "geometry,ecs,sre,h_range,steepness,boa,degenerate\n";
    for (const DynamicsRow& r : rows)
        out << r.name << ',' << r.ecs << ',' << num(r.dynamics.sre) << ',' << num(r.h_range)
            << ',' << num(r.dynamics.steepness) << ',' << num(r.dynamics.boa) << ','
            << (r.dynamics.degenerate ? 1 : 0) << '\n';
    return out.str();
}

std::string ballast_to_csv(const std::vector<BallastRow>& rows) {
    std::ostringstream out;
    out << "geometry,w,ecs,boa\n";
    for (const BallastRow& row : rows)
        for (const BallastEntry& e : row.report.entries)
            out << row.name << ',' << num(e.weight) << ',' << e.ecs << ',' << num(e.boa) << '\n';
    return out.str();
}

std::string ballast_to_json(const std::vector<BallastRow>& rows) {
    ordered_json j = ordered_json::array();
    for (const BallastRow& row : rows) {
        ordered_json entry;
        entry["geometry"] = row.name;
        if (row.report.min_w_for_ecs1)
            entry["min_w_for_ecs1"] = *row.report.min_w_for_ecs1;
        else
            entry["min_w_for_ecs1"] = nullptr;
        ordered_json grid = ordered_json::array();
        for (const BallastEntry& e : row.report.entries)
            grid.push_back({{"w", e.weight}, {"ecs", e.ecs}, {"boa", e.boa},
                            {"degenerate", e.degenerate}});
        entry["grid"] = std::move(grid);
        j.push_back(std::move(entry));
    }
    return j.dump(2) + "\n";
}

std::string threshold_sweep_to_csv(const std::vector<std::pair<double, int>>& rows) {
    std::ostringstream out;
    out << "merge_tau,ecs\n";
    for (const auto& [tau, ecs] : rows) out << num(tau) << ',' << ecs << '\n';
    return out.str();
}

std::string resolution_sweep_to_csv(const std::vector<ResolutionPoint>& rows) {
    std::ostringstream out;
    out << "n_theta,n_phi,ecs,h_range\n";
    for (const ResolutionPoint& r : rows)
        out << r.n_theta << ',' << r.n_phi << ',' << r.ecs << ',' << num(r.h_range) << '\n';
    return out.str();
}

std::string verification_to_json(const std::string& name, const SloanParams& params,
                                 const VerificationReport& report) {
    ordered_json j;
    j["instance"] = name;
    j["beta"] = params.beta;
    j["phase"] = phase_json(params.phase);
    j["pass"] = report.pass;
    j["ecs_ok"] = report.ecs_ok;
    j["convex_ok"] = report.convex_ok;
    j["com_ok"] = report.com_ok;
    j["convexity_ratio"] = report.convexity;
    j["com_violation"] = report.com_violation;
    j["h_range"] = report.h_range;
    ordered_json cells = ordered_json::array();
    for (const VerificationCell& c : report.cells)
        cells.push_back({{"n_theta", c.n_theta},
                         {"n_phi", c.n_phi},
                         {"merge_tau", c.tau},
                         {"ecs", c.ecs},
                         {"boa", c.boa},
                         {"h_range", c.h_range}});
    j["cells"] = std::move(cells);
    return j.dump(2) + "\n";
}

std::string optimize_trace_to_csv(const OptimizeResult& result) {
    std::ostringstream out;
    out << "generation,best_objective";
    const std::size_t dim = result.best_point.size();
    out << ",beta";
    for (std::size_t i = 1; i < dim; ++i) out << ",a" << i;
    out << '\n';
    for (const GenerationStats& g : result.trace) {
        out << g.generation << ',' << num(g.best_objective);
        for (double v : g.best_point) out << ',' << num(v);
        out << '\n';
    }
    return out.str();
}

std::string optimize_result_to_json(const OptimizeResult& result) {
    ordered_json j;
    j["best_objective"] = result.best.value;
    j["basin_gap"] = result.best.gap;
    j["convexity_ratio"] = result.best.convexity;
    j["com_violation"] = result.best.com_violation;
    j["ecs"] = result.best.ecs;
    j["generations"] = result.generations;
    j["evaluations"] = result.evaluations;
    j["converged"] = result.converged;
    if (result.best_params) {
        j["beta"] = result.best_params->beta;
        j["phase"] = phase_json(result.best_params->phase);
    }
    if (result.verification) {
        j["verification_pass"] = result.verification->pass;
        j["verification_ecs_ok"] = result.verification->ecs_ok;
        j["verification_convex_ok"] = result.verification->convex_ok;
        j["verification_com_ok"] = result.verification->com_ok;
    }
    return j.dump(2) + "\n";
}

std::string instances_to_json(const std::vector<VerifiedInstance>& instances) {
    ordered_json j = ordered_json::array();
    for (const VerifiedInstance& inst : instances) {
        ordered_json entry;
        entry["name"] = inst.name;
        entry["beta"] = inst.params.beta;
        entry["phase"] = phase_json(inst.params.phase);
        entry["expected_ecs"] = inst.expected_ecs;
        entry["expected_h_range"] = inst.expected_h_range;
        j.push_back(std::move(entry));
    }
    return j.dump(2) + "\n";
}

std::vector<VerifiedInstance> instances_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    std::vector<VerifiedInstance> out;
    for (const auto& entry : j) {
        out.push_back({entry.at("name").get<std::string>(),
                       SloanParams(entry.at("beta").get<double>(),
                                   phase_from_json(entry.at("phase"))),
                       entry.at("expected_ecs").get<int>(),
                       entry.at("expected_h_range").get<double>()});
    }
    return out;
}

CampaignConfig campaign_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    CampaignConfig config;
    if (j.contains("search_space")) {
        const auto& s = j["search_space"];
        if (s.contains("beta_bounds"))
            config.space.beta_bounds = {s["beta_bounds"][0].get<double>(),
                                        s["beta_bounds"][1].get<double>()};
        if (s.contains("fourier_orders"))
            config.space.fourier_orders = s["fourier_orders"].get<std::vector<int>>();
        if (s.contains("coeff_bounds"))
            config.space.coeff_bounds = {s["coeff_bounds"][0].get<double>(),
                                         s["coeff_bounds"][1].get<double>()};
    }
    if (j.contains("de")) {
        const auto& d = j["de"];
        if (d.contains("population")) config.de.population = d["population"].get<int>();
        if (d.contains("mutation")) config.de.mutation = d["mutation"].get<double>();
        if (d.contains("crossover")) config.de.crossover = d["crossover"].get<double>();
        if (d.contains("max_generations"))
            config.de.max_generations = d["max_generations"].get<int>();
        if (d.contains("seed")) config.de.seed = d["seed"].get<std::uint64_t>();
        if (d.contains("convergence_tol"))
            config.de.convergence_tol = d["convergence_tol"].get<double>();
        if (d.contains("target_objective"))
            config.de.target_objective = d["target_objective"].get<double>();
    }
    if (j.contains("oracle")) {
        const auto& o = j["oracle"];
        if (o.contains("mesh_theta")) config.oracle.mesh_theta = o["mesh_theta"].get<int>();
        if (o.contains("mesh_phi")) config.oracle.mesh_phi = o["mesh_phi"].get<int>();
        if (o.contains("n_dirs")) config.oracle.ecs.n_dirs = o["n_dirs"].get<int>();
        if (o.contains("k")) config.oracle.ecs.k = o["k"].get<int>();
        if (o.contains("merge_tau")) config.oracle.ecs.merge_tau = o["merge_tau"].get<double>();
        if (o.contains("flat_floor")) config.oracle.ecs.flat_floor = o["flat_floor"].get<double>();
        if (o.contains("identify_antipodes"))
            config.oracle.ecs.identify_antipodes = o["identify_antipodes"].get<bool>();
    }
    if (j.contains("lambda_convex")) config.lambda_convex = j["lambda_convex"].get<double>();
    if (j.contains("lambda_com")) config.lambda_com = j["lambda_com"].get<double>();
    return config;
}

std::string campaign_to_json(const CampaignConfig& config) {
    ordered_json j;
    j["search_space"] = {{"beta_bounds", {config.space.beta_bounds.first,
                                          config.space.beta_bounds.second}},
                         {"fourier_orders", config.space.fourier_orders},
                         {"coeff_bounds", {config.space.coeff_bounds.first,
                                           config.space.coeff_bounds.second}}};
    j["de"] = {{"population", config.de.population},
               {"mutation", config.de.mutation},
               {"crossover", config.de.crossover},
               {"max_generations", config.de.max_generations},
               {"seed", config.de.seed},
               {"convergence_tol", config.de.convergence_tol},
               {"target_objective", config.de.target_objective}};
    j["oracle"] = {{"mesh_theta", config.oracle.mesh_theta},
                   {"mesh_phi", config.oracle.mesh_phi},
                   {"n_dirs", config.oracle.ecs.n_dirs},
                   {"k", config.oracle.ecs.k},
                   {"merge_tau", config.oracle.ecs.merge_tau},
                   {"flat_floor", config.oracle.ecs.flat_floor},
                   {"identify_antipodes", config.oracle.ecs.identify_antipodes}};
    j["lambda_convex"] = config.lambda_convex;
    j["lambda_com"] = config.lambda_com;
    return j.dump(2) + "\n";
}

}  // namespace monostat
