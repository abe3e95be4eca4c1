#pragma once

#include "l3cvrp/loading.hpp"

#include <map>
#include <string>
#include <vector>

namespace l3cvrp {

enum class SolveStatus
{
    Optimal,
    TimeLimit,
    Infeasible
};

std::string to_string(SolveStatus s);

struct RouteReport
{
    std::vector<int> sequence;
    std::vector<Placement> placements;
};

struct SolveStats
{
    long nodes = 0;
    double t_total = 0.0;
    double t_int = 0.0;
    double t_frac = 0.0;
    double t_sp = 0.0;
    double t_preprocess = 0.0;
    double root_bound = 0.0;
    int k_min = 0;
    int removed_arcs = 0;
    long routes_stored = 0;
    long infeasible_sets = 0;
    long exact_checks = 0;
    long heuristic_successes = 0;
    long integer_callbacks = 0;
    long lp_iterations = 0;
    std::map<std::string, long> cuts;
};

struct SolutionReport
{
    std::string instance;
    std::string variant;
    SolveStatus status = SolveStatus::TimeLimit;
    bool has_incumbent = false;
    double objective = 0.0;
    double lower_bound = 0.0;
    double gap = 0.0;
    std::vector<RouteReport> routes;
    SolveStats stats;
};

}  // namespace l3cvrp
