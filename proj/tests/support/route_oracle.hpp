#pragma once

#include "l3cvrp/cuts.hpp"
#include "l3cvrp/exact_loading.hpp"
#include "l3cvrp/instance.hpp"
#include "l3cvrp/packing_heuristic.hpp"
#include "l3cvrp/problem.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace l3cvrp::testing {

/// Memoised route loadability. Necessary conditions come first: the order-free
/// relaxation, the support-free relaxation, and for support-free settings every
/// route with one customer dropped.
class LoadabilityMemo
{
  public:
    explicit LoadabilityMemo(const Instance& inst) : mInst(inst) {}

    bool verdict(const std::vector<int>& route, const ConstraintSet& cs)
    {
        std::vector<int> key = route;
        if (cs.lifo != LifoMode::Sequence)
            std::sort(key.begin(), key.end());
        auto& memo = mMemo[cs.key()];
        if (auto it = memo.find(key); it != memo.end())
            return it->second;

        bool ok = true;
        if (cs.lifo == LifoMode::Sequence)
            ok = verdict(route, cs.with_lifo(LifoMode::Off));
        if (ok && cs.support)
            ok = verdict(route, cs.without_support());
        if (ok && !cs.support)
            for (size_t k = 0; ok && route.size() > 1 && k < route.size(); ++k)
            {
                std::vector<int> sub = route;
                sub.erase(sub.begin() + static_cast<long>(k));
                ok = verdict(sub, cs);
            }
        if (ok)
            ok = Loads(route, cs);
        memo.emplace(std::move(key), ok);
        return ok;
    }

    long searches() const { return mSearches; }

  private:
    /// A validated heuristic packing proves feasibility; otherwise the exact search decides.
    bool Loads(const std::vector<int>& route, const ConstraintSet& cs)
    {
        ++mSearches;
        const Container box = container_of(mInst.vehicle);
        const auto items = route_items(mInst, route);
        HeuristicConfig quick;
        quick.max_seconds = 0.02;
        const auto h = metaheuristic_pack(items, box, cs, quick);
        if (h.packing && validate_packing(*h.packing, cs).empty())
            return true;
        return exact_check(items, box, cs, TimeBudget::unlimited()).status == LoadStatus::Feasible;
    }

    const Instance& mInst;
    std::map<std::string, std::map<std::vector<int>, bool>> mMemo;
    long mSearches = 0;
};

namespace detail {

/// Best total of per-block values over partitions of the full set into at most
/// `maxRoutes` blocks. `value[mask]` is -inf for unusable blocks. Fills `blocks`
/// with an optimal partition.
inline std::optional<double> best_partition(const std::vector<double>& value, int n, int maxRoutes,
                                            std::vector<unsigned>* blocks = nullptr)
{
    const double none = -std::numeric_limits<double>::infinity();
    const unsigned full = (1u << n) - 1;
    // dp[k][mask]: best with exactly k routes covering mask
    std::vector<std::vector<double>> dp(maxRoutes + 1, std::vector<double>(full + 1, none));
    std::vector<std::vector<unsigned>> pick(maxRoutes + 1, std::vector<unsigned>(full + 1, 0));
    dp[0][0] = 0.0;
    double best = none;
    int bestK = 0;
    for (int k = 1; k <= maxRoutes; ++k)
    {
        for (unsigned m = 1; m <= full; ++m)
        {
            const unsigned low = m & (~m + 1);
            for (unsigned sub = m; sub; sub = (sub - 1) & m)
            {
                if (!(sub & low) || value[sub] == none || dp[k - 1][m ^ sub] == none)
                    continue;
                const double v = dp[k - 1][m ^ sub] + value[sub];
                if (v > dp[k][m])
                {
                    dp[k][m] = v;
                    pick[k][m] = sub;
                }
            }
        }
        if (dp[k][full] > best)
        {
            best = dp[k][full];
            bestK = k;
        }
    }
    if (best == none)
        return std::nullopt;
    if (blocks)
    {
        blocks->clear();
        for (unsigned m = full; bestK > 0; --bestK)
        {
            blocks->push_back(pick[bestK][m]);
            m ^= pick[bestK][m];
        }
    }
    return best;
}

}  // namespace detail

/// Every loadable ordered route of a small instance, grouped by customer set.
/// Optimum and worst-case cut activity follow from a DP over set partitions.
class RouteOracle
{
  public:
    RouteOracle(const Instance& inst, ProblemVariant variant, double supportRatio)
        : mInst(inst), mN(inst.num_customers()), mByMask(std::size_t(1) << mN)
    {
        const auto cs = loading_constraints(variant, supportRatio);
        LoadabilityMemo memo(inst);
        std::vector<int> route;
        std::vector<char> used(mN + 1, 0);
        auto grow = [&](auto&& self, unsigned mask) -> void {
            if (!route.empty() && (!cs || memo.verdict(route, *cs)))
                mByMask[mask].push_back(route);
            for (int c = 1; c <= mN; ++c)
            {
                if (used[c])
                    continue;
                route.push_back(c);
                if (required_vehicles(inst, route) == 1)
                {
                    used[c] = 1;
                    self(self, mask | (1u << (c - 1)));
                    used[c] = 0;
                }
                route.pop_back();
            }
        };
        grow(grow, 0u);
    }

    const std::vector<std::vector<int>>& routes_of(unsigned mask) const { return mByMask[mask]; }

    bool loadable(const std::vector<int>& route) const
    {
        unsigned mask = 0;
        for (int c : route)
            mask |= 1u << (c - 1);
        for (const auto& r : mByMask[mask])
            if (r == route)
                return true;
        return false;
    }

    /// Minimum total cost with at most `maxRoutes` routes; empty when none exists.
    std::optional<double> optimum(int maxRoutes) const
    {
        auto v = Solve(maxRoutes, [&](const std::vector<int>& r) { return -mInst.route_cost(r); });
        if (!v)
            return std::nullopt;
        return -*v;
    }

    /// Largest left-hand side of `cut` over all feasible solutions with at most `maxRoutes` routes.
    std::optional<double> max_lhs(const CutExpr& cut, int maxRoutes) const
    {
        return Solve(maxRoutes, [&](const std::vector<int>& r) {
            std::vector<std::vector<int>> one{r};
            return lhs(cut, route_incidence(one, mN + 1));
        });
    }

  private:
    template <typename Score>
    std::optional<double> Solve(int maxRoutes, Score score) const
    {
        std::vector<double> bestRoute(mByMask.size(), -std::numeric_limits<double>::infinity());
        for (size_t m = 1; m < mByMask.size(); ++m)
            for (const auto& r : mByMask[m])
                bestRoute[m] = std::max(bestRoute[m], score(r));
        return detail::best_partition(bestRoute, mN, maxRoutes);
    }

    const Instance& mInst;
    int mN;
    std::vector<std::vector<std::vector<int>>> mByMask;
};

/// Optimum over partitions into loadable routes that only checks routes when they
/// belong to the current best partition under optimistic costs. Each customer set
/// tries its visiting orders from cheapest to dearest.
class LazyRouteOracle
{
  public:
    LazyRouteOracle(const Instance& inst, ProblemVariant variant, double supportRatio)
        : mInst(inst), mN(inst.num_customers()), mCs(loading_constraints(variant, supportRatio)), mMemo(inst)
    {
    }

    std::optional<double> optimum(int maxRoutes)
    {
        const double none = -std::numeric_limits<double>::infinity();
        const unsigned full = (1u << mN) - 1;
        std::vector<std::vector<std::vector<int>>> orders(full + 1);
        std::vector<size_t> next(full + 1, 0);
        std::vector<char> confirmed(full + 1, 0);
        for (unsigned m = 1; m <= full; ++m)
        {
            std::vector<int> members;
            for (int c = 1; c <= mN; ++c)
                if (m >> (c - 1) & 1)
                    members.push_back(c);
            if (required_vehicles(mInst, members) > 1)
                continue;
            do
                orders[m].push_back(members);
            while (std::next_permutation(members.begin(), members.end()));
            std::stable_sort(orders[m].begin(), orders[m].end(), [&](const auto& a, const auto& b) {
                return mInst.route_cost(a) < mInst.route_cost(b);
            });
        }
        auto value = [&](unsigned m) { return next[m] < orders[m].size() ? -mInst.route_cost(orders[m][next[m]]) : none; };

        std::vector<double> values(full + 1, none);
        for (unsigned m = 1; m <= full; ++m)
            values[m] = value(m);
        while (true)
        {
            std::vector<unsigned> blocks;
            const auto best = detail::best_partition(values, mN, maxRoutes, &blocks);
            if (!best)
                return std::nullopt;
            bool settled = true;
            for (unsigned m : blocks)
            {
                if (confirmed[m])
                    continue;
                if (!mCs || mMemo.verdict(orders[m][next[m]], *mCs))
                    confirmed[m] = 1;
                else
                {
                    ++next[m];
                    values[m] = value(m);
                    settled = false;
                }
            }
            if (settled)
            {
                mRoutes.clear();
                for (unsigned m : blocks)
                    mRoutes.push_back(orders[m][next[m]]);
                return -*best;
            }
        }
    }

    /// Routes of the last optimum.
    const std::vector<std::vector<int>>& routes() const { return mRoutes; }
    long searches() const { return mMemo.searches(); }

  private:
    const Instance& mInst;
    int mN;
    std::optional<ConstraintSet> mCs;
    LoadabilityMemo mMemo;
    std::vector<std::vector<int>> mRoutes;
};

}  // namespace l3cvrp::testing
