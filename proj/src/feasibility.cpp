#include "l3cvrp/feasibility.hpp"

#include <algorithm>

namespace l3cvrp {

namespace {

std::vector<int> reversed(std::span<const int> route) { return {route.rbegin(), route.rend()}; }

}  // namespace

FeasibilityPipeline::FeasibilityPipeline(const Instance& instance, ProblemVariant variant, PipelineConfig config,
                                         FeasibleRouteStore& routes, InfeasibleComboStore& combos, Deadline global)
    : mInstance(instance),
      mVariant(variant),
      mConfig(config),
      mRoutes(routes),
      mCombos(combos),
      mGlobal(global),
      mRun(loading_constraints(variant, config.support_ratio)),
      mContainer(container_of(instance.vehicle))
{
}

ConstraintSet FeasibilityPipeline::set_relaxation() const
{
    const ConstraintSet run = mRun.value_or(ConstraintSet{});
    return {run.fragility, false, run.lifo == LifoMode::Off ? LifoMode::Off : LifoMode::AnySequence,
            run.support_ratio};
}

LoadCheckOutcome FeasibilityPipeline::exact(std::span<const int> sequence, const ConstraintSet& cs, TimeBudget budget)
{
    ++mStats.exact_checks;
    const auto items = route_items(mInstance, sequence);
    auto out = exact_check(items, mContainer, cs, budget, mConfig.seed, mGlobal);
    if (out.status == LoadStatus::Unknown && budget.is_unlimited())
        throw TimeLimitReached();
    return out;
}

LoadStatus FeasibilityPipeline::check(std::span<const int> sequence, const ConstraintSet& cs, TimeBudget budget,
                                      std::optional<Packing>* witness)
{
    auto out = exact(sequence, cs, budget);
    if (witness)
        *witness = std::move(out.witness);
    return out.status;
}

std::optional<Packing> FeasibilityPipeline::heuristic(std::span<const int> route, const ConstraintSet& cs)
{
    ++mStats.heuristic_calls;
    const auto items = route_items(mInstance, route);
    auto out = metaheuristic_pack(items, mContainer, cs, mConfig.heuristic, mGlobal, mConfig.seed);
    if (out.packing)
        ++mStats.heuristic_successes;
    return std::move(out.packing);
}

void FeasibilityPipeline::accept(std::span<const int> route, const Packing& pk, RouteCheck& out)
{
    mRoutes.insert(route, store_key(), pk);
    out.accepted = true;
    out.packing = pk;
}

std::vector<int> FeasibilityPipeline::reduce_set(std::vector<int> s, const ConstraintSet& cs)
{
    std::vector<int> order = s;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return mInstance.customer(a).volume() < mInstance.customer(b).volume(); });
    for (int c : order)
    {
        if (s.size() <= 2)
            break;
        std::vector<int> smaller;
        for (int v : s)
            if (v != c)
                smaller.push_back(v);
        if (check(smaller, cs, TimeBudget::seconds(mConfig.limited_seconds)) == LoadStatus::Infeasible)
            s = std::move(smaller);
    }
    return s;
}

std::vector<int> FeasibilityPipeline::reduce_path(std::vector<int> p, const ConstraintSet& cs)
{
    const auto limited = TimeBudget::seconds(mConfig.limited_seconds);
    while (p.size() > 2)
    {
        std::vector<int> tail(p.begin() + 1, p.end());
        if (check(tail, cs, limited) != LoadStatus::Infeasible)
            break;
        p = std::move(tail);
    }
    while (p.size() > 2)
    {
        std::vector<int> head(p.begin(), p.end() - 1);
        if (check(head, cs, limited) != LoadStatus::Infeasible)
            break;
        p = std::move(head);
    }
    return p;
}

void FeasibilityPipeline::add_two_path(std::span<const int> route, const ConstraintSet& setCs, RouteCheck& out)
{
    std::vector<int> s(route.begin(), route.end());
    out.cuts.push_back({two_path(s), s, false});
    auto reduced = reduce_set(s, setCs);
    if (mConfig.memo)
        mCombos.insert(reduced, setCs);
}

RouteCheck FeasibilityPipeline::evaluate(std::span<const int> route)
{
    RouteCheck out;
    std::vector<int> r(route.begin(), route.end());
    const int need = required_vehicles(mInstance, r);
    if (need > 1)
    {
        out.cuts.push_back({gsec(r, need), r, false});
        return out;
    }
    if (!mRun)
    {
        accept(r, Packing{mContainer, {}, {}}, out);
        return out;
    }
    if (mConfig.memo)
    {
        if (auto pk = mRoutes.packing(r, *mRun))
        {
            ++mStats.memo_hits;
            out.accepted = true;
            out.packing = std::move(pk);
            return out;
        }
        if (mCombos.superset_of_infeasible(r, set_relaxation()))
        {
            ++mStats.combo_hits;
            out.cuts.push_back({two_path(r), r, false});
            return out;
        }
    }
    if (mConfig.complete)
    {
        if (auto pk = heuristic(r, *mRun))
        {
            accept(r, *pk, out);
            return out;
        }
        return staged(r);
    }
    return basic(r);
}

RouteCheck FeasibilityPipeline::basic(std::span<const int> route)
{
    RouteCheck out;
    std::optional<Packing> witness;
    if (check(route, *mRun, TimeBudget::unlimited(), &witness) == LoadStatus::Feasible)
    {
        accept(route, *witness, out);
        return out;
    }
    std::vector<int> r(route.begin(), route.end());
    switch (mVariant)
    {
        case ProblemVariant::AllConstraints:
        case ProblemVariant::NoFragility:
            out.cuts.push_back({infeasible_tail_path(r), r, false});
            break;
        case ProblemVariant::NoSupport:
        case ProblemVariant::LoadingOnly:
            out.cuts.push_back({infeasible_path(r), r, false});
            break;
        default:
            out.cuts.push_back({infeasible_route(r), r, false});
    }
    return out;
}

RouteCheck FeasibilityPipeline::staged(std::span<const int> route)
{
    RouteCheck out;
    std::vector<int> r(route.begin(), route.end());
    const auto rev = reversed(r);
    const ConstraintSet run = *mRun;
    const auto limited = TimeBudget::seconds(mConfig.limited_seconds);
    const auto setBudget = TimeBudget::seconds(mConfig.set_check_seconds);
    std::optional<Packing> witness;

    if (mVariant == ProblemVariant::LoadingOnly)
    {
        if (check(r, run, TimeBudget::unlimited(), &witness) == LoadStatus::Feasible)
            accept(r, *witness, out);
        else
            add_two_path(r, run, out);
        return out;
    }

    const LoadStatus first = check(r, run, limited, &witness);
    if (first == LoadStatus::Feasible)
    {
        accept(r, *witness, out);
        return out;
    }

    if (mVariant == ProblemVariant::NoLifo)
    {
        const auto loadingOnly = *loading_constraints(ProblemVariant::LoadingOnly, run.support_ratio);
        if (check(r, loadingOnly, setBudget) == LoadStatus::Infeasible)
        {
            add_two_path(r, loadingOnly, out);
            return out;
        }
        if (first == LoadStatus::Unknown && check(r, run, TimeBudget::unlimited(), &witness) == LoadStatus::Feasible)
        {
            accept(r, *witness, out);
            return out;
        }
        out.cuts.push_back({two_path_tail(r, mInstance.num_customers()), r, false});
        return out;
    }

    if (check(r, set_relaxation(), setBudget) == LoadStatus::Infeasible)
    {
        add_two_path(r, set_relaxation(), out);
        return out;
    }

    const ConstraintSet supportFree = run.without_support();
    if (run.support && check(r, supportFree, limited) == LoadStatus::Infeasible)
    {
        auto p = reduce_path(r, supportFree);
        out.cuts.push_back({tournament(p), r, false});
        return out;
    }

    if (first == LoadStatus::Unknown && check(r, run, TimeBudget::unlimited(), &witness) == LoadStatus::Feasible)
    {
        accept(r, *witness, out);
        return out;
    }

    // r is infeasible under the full constraints from here on
    const bool reverseInfeasible = check(rev, run, limited) == LoadStatus::Infeasible;
    if (run.support)
    {
        if (reverseInfeasible)
        {
            out.cuts.push_back({undirected_tail_path(r), r, false});
            out.cuts.push_back({tail_tournament(rev), rev, true});
        }
        else
            out.cuts.push_back({tail_tournament(r), r, false});
    }
    else
    {
        if (reverseInfeasible)
        {
            out.cuts.push_back({undirected_infeasible_path(r), r, false});
            out.cuts.push_back({tournament(rev), rev, true});
        }
        else
        {
            auto p = reduce_path(r, run);
            out.cuts.push_back({tournament(p), r, false});
        }
    }
    return out;
}

std::optional<Packing> FeasibilityPipeline::loadable(std::span<const int> route)
{
    std::vector<int> r(route.begin(), route.end());
    if (required_vehicles(mInstance, r) > 1)
        return std::nullopt;
    if (!mRun)
    {
        Packing empty{mContainer, {}, {}};
        mRoutes.insert(r, store_key(), empty);
        return empty;
    }
    if (mConfig.memo)
    {
        if (auto pk = mRoutes.packing(r, *mRun))
            return pk;
        if (mCombos.superset_of_infeasible(r, set_relaxation()))
            return std::nullopt;
    }
    auto pk = heuristic(r, *mRun);
    if (!pk)
    {
        auto out = exact(r, *mRun, TimeBudget::seconds(mConfig.limited_seconds));
        if (out.status == LoadStatus::Feasible)
            pk = std::move(out.witness);
    }
    if (pk)
        mRoutes.insert(r, *mRun, *pk);
    return pk;
}

PreprocessResult FeasibilityPipeline::preprocess()
{
    const int n = mInstance.num_customers();
    PreprocessResult res;
    res.removed.assign(n + 1, std::vector<char>(n + 1, 0));
    if (!mRun)
    {
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (i != j && required_vehicles(mInstance, std::vector<int>{i, j}) > 1)
                {
                    res.removed[i][j] = 1;
                    ++res.removed_count;
                }
        return res;
    }

    const ConstraintSet run = *mRun;
    const ConstraintSet relaxed = run.without_support();
    const auto limited = TimeBudget::seconds(mConfig.limited_seconds);
    auto loads = [&](std::span<const int> seq, const ConstraintSet& cs, std::optional<Packing>* witness) {
        if (mConfig.complete)
            if (auto pk = heuristic(seq, cs))
            {
                if (witness)
                    *witness = std::move(pk);
                return LoadStatus::Feasible;
            }
        return check(seq, cs, limited, witness);
    };

    // relaxed status of each ordered pair, Feasible when capacity already fails is never used
    std::vector<std::vector<LoadStatus>> pairStatus(n + 1, std::vector<LoadStatus>(n + 1, LoadStatus::Unknown));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
        {
            if (i == j)
                continue;
            const std::vector<int> pair{i, j};
            if (required_vehicles(mInstance, pair) > 1)
            {
                pairStatus[i][j] = LoadStatus::Infeasible;
                res.removed[i][j] = 1;
                ++res.removed_count;
                continue;
            }
            if (run.lifo == LifoMode::Off && j < i)
                pairStatus[i][j] = pairStatus[j][i];
            else
                pairStatus[i][j] = loads(pair, relaxed, nullptr);
            if (pairStatus[i][j] == LoadStatus::Infeasible)
            {
                res.removed[i][j] = 1;
                ++res.removed_count;
                continue;
            }
            if (!run.support)
                continue;

            std::optional<Packing> witness;
            const LoadStatus full = loads(pair, run, &witness);
            if (full == LoadStatus::Feasible)
            {
                mRoutes.insert(pair, run, *witness);
                continue;
            }
            if (full == LoadStatus::Unknown)
                continue;

            bool extendable = false;
            for (int k = 1; k <= n && !extendable; ++k)
            {
                if (k == i || k == j)
                    continue;
                const std::vector<int> triple{i, j, k};
                if (required_vehicles(mInstance, triple) > 1)
                    continue;
                extendable = loads(triple, relaxed, nullptr) != LoadStatus::Infeasible;
            }
            if (!extendable)
            {
                res.removed[i][j] = 1;
                ++res.removed_count;
            }
            else if (run.lifo == LifoMode::Off)
                res.cuts.push_back({two_path_tail(pair, n), pair, false});
            else
                res.cuts.push_back({infeasible_tail_path(pair), pair, false});
        }

    if (mConfig.memo)
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (pairStatus[i][j] == LoadStatus::Infeasible && pairStatus[j][i] == LoadStatus::Infeasible &&
                    required_vehicles(mInstance, std::vector<int>{i, j}) == 1)
                    mCombos.insert(std::vector<int>{i, j}, set_relaxation());
    return res;
}

}  // namespace l3cvrp
