#include "l3cvrp/solution_check.hpp"

#include <cmath>
#include <map>

namespace l3cvrp {

std::vector<SolutionIssue> check_solution(const Instance& instance, const SolutionReport& report, ProblemVariant variant,
                                          double supportRatio)
{
    std::vector<SolutionIssue> issues;
    const int n = instance.num_customers();
    std::vector<int> visits(n + 1, 0);
    double cost = 0.0;
    bool sequencesValid = true;

    for (size_t r = 0; r < report.routes.size(); ++r)
    {
        const auto& seq = report.routes[r].sequence;
        const int ri = static_cast<int>(r);
        bool valid = !seq.empty();
        if (seq.empty())
            issues.push_back({"partition", ri, "empty route"});
        for (int c : seq)
        {
            if (c < 1 || c > n)
            {
                issues.push_back({"partition", ri, "unknown customer " + std::to_string(c)});
                valid = false;
                continue;
            }
            visits[c]++;
        }
        if (!valid)
        {
            sequencesValid = false;
            continue;
        }
        cost += instance.route_cost(seq);
        if (instance.weight_of(seq) > instance.vehicle.weight_capacity + 1e-9)
            issues.push_back({"weight", ri,
                              std::to_string(instance.weight_of(seq)) + " > " +
                                  std::to_string(instance.vehicle.weight_capacity)});
        if (instance.volume_of(seq) > instance.vehicle.volume())
            issues.push_back({"volume", ri,
                              std::to_string(instance.volume_of(seq)) + " > " + std::to_string(instance.vehicle.volume())});
    }
    for (int c = 1; c <= n; ++c)
        if (visits[c] != 1)
            issues.push_back({"partition", -1,
                              "customer " + std::to_string(c) + " visited " + std::to_string(visits[c]) + " times"});
    if (static_cast<int>(report.routes.size()) > instance.vehicle.count)
        issues.push_back({"fleet", -1,
                          std::to_string(report.routes.size()) + " routes for " +
                              std::to_string(instance.vehicle.count) + " vehicles"});
    if (report.has_incumbent && sequencesValid && std::abs(report.objective - cost) > 1e-6 * std::max(1.0, cost))
        issues.push_back({"objective", -1, "reported " + std::to_string(report.objective) + ", routes cost " +
                                               std::to_string(cost)});

    const auto cs = loading_constraints(variant, supportRatio);
    if (!cs || !sequencesValid)
        return issues;
    for (size_t r = 0; r < report.routes.size(); ++r)
    {
        const auto& route = report.routes[r];
        const int ri = static_cast<int>(r);
        std::map<std::pair<int, int>, LoadItem> expected;
        for (const auto& it : route_items(instance, route.sequence))
            expected.emplace(std::make_pair(it.customer, it.index), it);

        Packing pk;
        pk.container = container_of(instance.vehicle);
        bool complete = true;
        for (const auto& p : route.placements)
        {
            auto it = expected.find({p.item.customer, p.item.index});
            if (it == expected.end())
            {
                issues.push_back({"items", ri,
                                  "item " + std::to_string(p.item.index) + " of customer " +
                                      std::to_string(p.item.customer) + " is not on this route or placed twice"});
                complete = false;
                continue;
            }
            Placement q = p;
            q.item = it->second;
            pk.placements.push_back(q);
            expected.erase(it);
        }
        for (const auto& [key, item] : expected)
        {
            issues.push_back({"items", ri,
                              "item " + std::to_string(key.second) + " of customer " + std::to_string(key.first) +
                                  " is not placed"});
            complete = false;
        }
        if (!complete)
            continue;
        for (const auto& v : validate_packing(pk, *cs))
        {
            std::string detail = "placement " + std::to_string(v.first);
            if (v.second >= 0)
                detail += " and " + std::to_string(v.second);
            issues.push_back({to_string(v.kind), ri, detail});
        }
    }
    return issues;
}

}  // namespace l3cvrp
