#pragma once

#include "l3cvrp/instance.hpp"
#include "l3cvrp/problem.hpp"
#include "l3cvrp/solution.hpp"

#include <string>
#include <vector>

namespace l3cvrp {

struct SolutionIssue
{
    /// partition, fleet, weight, volume, objective, items, or a packing violation name.
    std::string kind;
    /// Index into the report's routes; -1 for whole-solution issues.
    int route = -1;
    std::string detail;
};

/// Rebuilds every route's packing from the instance and checks the full solution.
/// Support is only enforced when `variant` requires it.
std::vector<SolutionIssue> check_solution(const Instance& instance, const SolutionReport& report, ProblemVariant variant,
                                          double supportRatio);

}  // namespace l3cvrp
