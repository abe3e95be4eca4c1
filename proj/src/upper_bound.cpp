#include "l3cvrp/upper_bound.hpp"

#include "l3cvrp/dual_simplex.hpp"

#include <algorithm>
#include <cmath>

namespace l3cvrp {

double plan_cost(const Instance& instance, const std::vector<std::vector<int>>& routes)
{
    double c = 0.0;
    for (const auto& r : routes)
        c += instance.route_cost(r);
    return c;
}

std::vector<int> two_opt(const Instance& instance, std::vector<int> route, FeasibilityPipeline& pipeline,
                         const Deadline& deadline)
{
    const int p = static_cast<int>(route.size());
    if (p < 3)
        return route;
    auto node = [&](int k) { return k < 0 || k >= p ? 0 : route[k]; };
    while (!deadline.expired())
    {
        // reversing route[a..b] replaces arcs (a-1, a) and (b, b+1)
        std::vector<std::tuple<double, int, int>> moves;
        for (int a = 0; a < p; ++a)
            for (int b = a + 1; b < p; ++b)
            {
                if (a == 0 && b == p - 1)
                    continue;
                const auto& c = instance.cost;
                double before = c(node(a - 1), node(a)) + c(node(b), node(b + 1));
                double after = c(node(a - 1), node(b)) + c(node(a), node(b + 1));
                for (int k = a; k < b; ++k)
                {
                    before += c(node(k), node(k + 1));
                    after += c(node(k + 1), node(k));
                }
                if (after < before - 1e-9)
                    moves.emplace_back(after - before, a, b);
            }
        std::sort(moves.begin(), moves.end());
        bool improved = false;
        for (const auto& [gain, a, b] : moves)
        {
            std::vector<int> next = route;
            std::reverse(next.begin() + a, next.begin() + b + 1);
            if (pipeline.loadable(next))
            {
                route = std::move(next);
                improved = true;
                break;
            }
            if (deadline.expired())
                break;
        }
        if (!improved)
            break;
    }
    return route;
}

std::optional<RoutePlan> savings_solution(const Instance& instance, FeasibilityPipeline& pipeline,
                                          const Deadline& deadline)
{
    const int n = instance.num_customers();
    std::vector<std::vector<int>> routes(n + 1);
    std::vector<int> where(n + 1);
    for (int i = 1; i <= n; ++i)
    {
        routes[i] = {i};
        where[i] = i;
        if (!pipeline.loadable(routes[i]))
            return std::nullopt;
    }

    struct Saving
    {
        double value;
        int i, j;
    };
    std::vector<Saving> savings;
    const auto& c = instance.cost;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j)
            {
                const double s = c(i, 0) + c(0, j) - c(i, j);
                if (s > 1e-9)
                    savings.push_back({s, i, j});
            }
    std::stable_sort(savings.begin(), savings.end(), [](const Saving& a, const Saving& b) { return a.value > b.value; });

    for (const auto& s : savings)
    {
        if (deadline.expired())
            break;
        const int a = where[s.i], b = where[s.j];
        if (a == b || routes[a].back() != s.i || routes[b].front() != s.j)
            continue;
        std::vector<int> merged = routes[a];
        merged.insert(merged.end(), routes[b].begin(), routes[b].end());
        if (required_vehicles(instance, merged) > 1 || !pipeline.loadable(merged))
            continue;
        routes[a] = std::move(merged);
        for (int v : routes[b])
            where[v] = a;
        routes[b].clear();
    }

    RoutePlan plan;
    for (auto& r : routes)
        if (!r.empty())
            plan.routes.push_back(two_opt(instance, std::move(r), pipeline, deadline));
    plan.cost = plan_cost(instance, plan.routes);
    return plan;
}

namespace {

using Simplex = lp::DualSimplex<double>;

/// Covering or partitioning LP over route columns with a fleet row.
Simplex route_lp(const Instance& instance, const std::vector<std::vector<int>>& columns, bool partition)
{
    const int m = static_cast<int>(columns.size());
    Eigen::VectorXd cost(m), lo = Eigen::VectorXd::Zero(m), up = Eigen::VectorXd::Ones(m);
    for (int k = 0; k < m; ++k)
        cost(k) = instance.route_cost(columns[k]);
    Simplex lp(cost, lo, up);
    const int n = instance.num_customers();
    std::vector<std::vector<Simplex::Term>> rows(n + 1);
    for (int k = 0; k < m; ++k)
    {
        for (int c : columns[k])
            rows[c - 1].emplace_back(k, 1.0);
        rows[n].emplace_back(k, 1.0);
    }
    std::vector<double> rlo(n + 1, 1.0), rup(n + 1, partition ? 1.0 : INFINITY);
    rlo[n] = -INFINITY;
    rup[n] = instance.vehicle.count;
    lp.add_rows(rows, rlo, rup);
    return lp;
}

}  // namespace

SpOutcome sp_heuristic(const Instance& instance, FeasibilityPipeline& pipeline, const FeasibleRouteStore& routes,
                       double incumbent, const Deadline& deadline, SpConfig config)
{
    SpOutcome out;
    const ConstraintSet key = pipeline.store_key();
    auto columns = routes.routes(key);
    if (columns.empty())
        return out;

    auto cover = route_lp(instance, columns, false);
    if (cover.solve() != lp::LpStatus::Optimal)
        return out;
    out.covering_bound = cover.objective();
    if (out.covering_bound >= incumbent - config.tolerance)
        return out;

    // split customers covered more than once out of each covering route
    const int n = instance.num_customers();
    std::vector<int> used;
    std::vector<int> times(n + 1, 0);
    for (int k = 0; k < static_cast<int>(columns.size()); ++k)
        if (cover.value(k) > 1e-6)
        {
            used.push_back(k);
            for (int c : columns[k])
                times[c]++;
        }
    for (int c = 1; c <= n && !deadline.expired(); ++c)
    {
        if (times[c] < 2)
            continue;
        for (int k : used)
        {
            const auto& r = columns[k];
            if (r.size() < 2 || std::find(r.begin(), r.end(), c) == r.end())
                continue;
            std::vector<int> shorter;
            for (int v : r)
                if (v != c)
                    shorter.push_back(v);
            if (pipeline.loadable(shorter))
            {
                ++out.repaired_routes;
                two_opt(instance, shorter, pipeline, deadline);
            }
        }
    }
    columns = routes.routes(key);

    auto sp = route_lp(instance, columns, true);
    const int m = static_cast<int>(columns.size());
    double best = incumbent;
    std::optional<std::vector<int>> chosen;

    // depth-first search on y with bound pruning; fixings are undone on backtrack
    struct Frame
    {
        int col;
        double value;
        size_t depth;
    };
    std::vector<Frame> open{{-1, 0.0, 0}};
    std::vector<std::pair<int, double>> fixed;
    while (!open.empty() && out.nodes < config.max_nodes && !deadline.expired())
    {
        Frame f = open.back();
        open.pop_back();
        while (fixed.size() > f.depth)
        {
            sp.set_bounds(fixed.back().first, 0.0, 1.0);
            fixed.pop_back();
        }
        if (f.col >= 0)
        {
            sp.set_bounds(f.col, f.value, f.value);
            fixed.emplace_back(f.col, f.value);
        }
        ++out.nodes;
        if (sp.solve() != lp::LpStatus::Optimal || sp.objective() >= best - config.tolerance)
            continue;
        int branch = -1;
        double frac = 0.0;
        for (int k = 0; k < m; ++k)
        {
            const double v = sp.value(k);
            const double d = std::min(v, 1.0 - v);
            if (d > 1e-6 && d > frac + 1e-12)
            {
                frac = d;
                branch = k;
            }
        }
        if (branch < 0)
        {
            best = sp.objective();
            std::vector<int> pick;
            for (int k = 0; k < m; ++k)
                if (sp.value(k) > 0.5)
                    pick.push_back(k);
            chosen = std::move(pick);
            continue;
        }
        open.push_back({branch, 0.0, fixed.size()});
        open.push_back({branch, 1.0, fixed.size()});
    }

    if (chosen)
    {
        RoutePlan plan;
        for (int k : *chosen)
            plan.routes.push_back(columns[k]);
        plan.cost = plan_cost(instance, plan.routes);
        if (plan.cost < incumbent - config.tolerance)
            out.plan = std::move(plan);
    }
    return out;
}

}  // namespace l3cvrp
