#pragma once

#include "l3cvrp/feasibility.hpp"
#include "l3cvrp/instance.hpp"
#include "l3cvrp/timing.hpp"

#include <optional>
#include <vector>

namespace l3cvrp {

struct RoutePlan
{
    std::vector<std::vector<int>> routes;
    double cost = 0.0;
};

double plan_cost(const Instance& instance, const std::vector<std::vector<int>>& routes);

/// Best-improvement 2-opt inside one route. Each improving move is accepted only
/// if the reversed segment still loads.
std::vector<int> two_opt(const Instance& instance, std::vector<int> route, FeasibilityPipeline& pipeline,
                         const Deadline& deadline = {});

/// Parallel savings where a merge needs a loadable merged route, then 2-opt per
/// route. The plan may use more vehicles than the fleet has.
std::optional<RoutePlan> savings_solution(const Instance& instance, FeasibilityPipeline& pipeline,
                                          const Deadline& deadline = {});

struct SpConfig
{
    long max_nodes = 5000;
    double tolerance = 1e-7;
};

struct SpOutcome
{
    std::optional<RoutePlan> plan;
    double covering_bound = 0.0;
    long nodes = 0;
    int repaired_routes = 0;
};

/// Set-partitioning over the stored routes of the run. Returns a plan only when
/// it is strictly cheaper than `incumbent`.
SpOutcome sp_heuristic(const Instance& instance, FeasibilityPipeline& pipeline, const FeasibleRouteStore& routes,
                       double incumbent, const Deadline& deadline = {}, SpConfig config = {});

}  // namespace l3cvrp
