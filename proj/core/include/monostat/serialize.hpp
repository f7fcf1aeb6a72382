#pragma once

#include <string>
#include <vector>

#include "monostat/ballast.hpp"
#include "monostat/equilibrium.hpp"
#include "monostat/search.hpp"

namespace monostat {

/// Plot-ready landscape table: direction_x, direction_y, direction_z,
/// longitude, latitude, height, basin_id (radians; Mollweide-compatible).
std::string landscape_to_csv(const Landscape& landscape, const EcsReport& report);

std::string ecs_report_to_json(const EcsReport& report);

struct NamedEcsRow {
    std::string name;
    EcsReport report;
};
std::string validation_to_csv(const std::vector<NamedEcsRow>& rows);
std::string validation_to_json(const std::vector<NamedEcsRow>& rows);

struct BetaSweepRow {
    double beta = 0.0;
    int ecs = 0;
    double convexity = 0.0;
    double h_range = 0.0;
    bool degenerate = false;
};
std::string beta_sweep_to_csv(const std::vector<BetaSweepRow>& rows);

struct DynamicsRow {
    std::string name;
    int ecs = 0;
    DynamicsReport dynamics;
    double h_range = 0.0;
};
std::string dynamics_to_csv(const std::vector<DynamicsRow>& rows);

struct BallastRow {
    std::string name;
    BallastReport report;
};
std::string ballast_to_csv(const std::vector<BallastRow>& rows);
std::string ballast_to_json(const std::vector<BallastRow>& rows);

std::string threshold_sweep_to_csv(const std::vector<std::pair<double, int>>& rows);
std::string resolution_sweep_to_csv(const std::vector<ResolutionPoint>& rows);

std::string verification_to_json(const std::string& name, const SloanParams& params,
                                 const VerificationReport& report);

std::string optimize_trace_to_csv(const OptimizeResult& result);
std::string optimize_result_to_json(const OptimizeResult& result);

/// Instance catalog records (one per verified instance).
std::string instances_to_json(const std::vector<VerifiedInstance>& instances);
std::vector<VerifiedInstance> instances_from_json(const std::string& text);

/// Campaign configuration: {"search_space": {...}, "de": {...},
/// "oracle": {...}, "lambda_convex": ..., "lambda_com": ...}. Missing keys
/// keep their defaults.
struct CampaignConfig {
    SearchSpace space;
    DeConfig de;
    OracleConfig oracle;
    double lambda_convex = 10.0;
    double lambda_com = 10.0;
};
CampaignConfig campaign_from_json(const std::string& text);
std::string campaign_to_json(const CampaignConfig& config);

}  // namespace monostat
