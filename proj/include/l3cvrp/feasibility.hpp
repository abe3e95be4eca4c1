#pragma once

#include "l3cvrp/cuts.hpp"
#include "l3cvrp/exact_loading.hpp"
#include "l3cvrp/instance.hpp"
#include "l3cvrp/packing_heuristic.hpp"
#include "l3cvrp/problem.hpp"
#include "l3cvrp/route_memory.hpp"
#include "l3cvrp/timing.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace l3cvrp {

/// Raised when the global time limit interrupts a check that has no budget of its own.
class TimeLimitReached : public std::runtime_error
{
  public:
    TimeLimitReached() : std::runtime_error("time limit reached") {}
};

struct PipelineConfig
{
    /// Lookups in the route and combination stores.
    bool memo = true;
    /// Full staged checks with lifting; false runs one exact check and the plain inequality.
    bool complete = true;
    double limited_seconds = 1.0;
    double set_check_seconds = 4.0;
    double support_ratio = 0.75;
    HeuristicConfig heuristic;
    std::uint64_t seed = 0;
};

struct PipelineStats
{
    long exact_checks = 0;
    long heuristic_calls = 0;
    long heuristic_successes = 0;
    long memo_hits = 0;
    long combo_hits = 0;
};

/// A cut together with the route that triggered it. `on_reverse` marks cuts
/// justified by the reversed route.
struct GeneratedCut
{
    CutExpr cut;
    std::vector<int> route;
    bool on_reverse = false;
};

struct RouteCheck
{
    bool accepted = false;
    std::optional<Packing> packing;
    std::vector<GeneratedCut> cuts;
};

struct PreprocessResult
{
    /// removed(i, j) for customer arcs that no feasible route can use.
    std::vector<std::vector<char>> removed;
    std::vector<GeneratedCut> cuts;
    int removed_count = 0;
};

class FeasibilityPipeline
{
  public:
    FeasibilityPipeline(const Instance& instance, ProblemVariant variant, PipelineConfig config,
                        FeasibleRouteStore& routes, InfeasibleComboStore& combos, Deadline global = {});

    /// One depot route of an integer solution: capacity, stores, heuristic, then the
    /// staged exact checks of the variant.
    RouteCheck evaluate(std::span<const int> route);

    /// Loadability for construction heuristics: stores, heuristic, limited exact check.
    std::optional<Packing> loadable(std::span<const int> route);

    PreprocessResult preprocess();

    /// Exact check of `sequence` with groups from visiting order.
    LoadCheckOutcome exact(std::span<const int> sequence, const ConstraintSet& cs, TimeBudget budget);

    const std::optional<ConstraintSet>& constraints() const { return mRun; }
    /// Key of the run's routes in the route store; plain CVRP uses the empty set.
    ConstraintSet store_key() const { return mRun.value_or(ConstraintSet{}); }
    /// Support-free, order-free relaxation used for the combination store.
    ConstraintSet set_relaxation() const;
    const PipelineStats& stats() const { return mStats; }
    ProblemVariant variant() const { return mVariant; }

  private:
    RouteCheck staged(std::span<const int> route);
    RouteCheck basic(std::span<const int> route);
    std::optional<Packing> heuristic(std::span<const int> route, const ConstraintSet& cs);
    LoadStatus check(std::span<const int> sequence, const ConstraintSet& cs, TimeBudget budget,
                     std::optional<Packing>* witness = nullptr);
    std::vector<int> reduce_set(std::vector<int> s, const ConstraintSet& cs);
    std::vector<int> reduce_path(std::vector<int> p, const ConstraintSet& cs);
    void accept(std::span<const int> route, const Packing& pk, RouteCheck& out);
    void add_two_path(std::span<const int> route, const ConstraintSet& setCs, RouteCheck& out);

    const Instance& mInstance;
    ProblemVariant mVariant;
    PipelineConfig mConfig;
    FeasibleRouteStore& mRoutes;
    InfeasibleComboStore& mCombos;
    Deadline mGlobal;
    std::optional<ConstraintSet> mRun;
    Container mContainer;
    PipelineStats mStats;
};

}  // namespace l3cvrp
