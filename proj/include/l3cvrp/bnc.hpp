#pragma once

#include "l3cvrp/cuts.hpp"
#include "l3cvrp/feasibility.hpp"
#include "l3cvrp/instance.hpp"
#include "l3cvrp/problem.hpp"
#include "l3cvrp/solution.hpp"
#include "l3cvrp/upper_bound.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace l3cvrp {

/// The LP or a loading check broke a contract; the run cannot continue.
class OracleFailure : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct BncConfig
{
    /// Nodes up to this index run every separator.
    long n_all = 200;
    /// After n_all, separation runs on every n_sep-th node only.
    long n_sep = 100;
    /// New stored routes between two set-partitioning runs.
    long n_sp = 20;
    double time_limit = 28800.0;
    /// Accepted for interface compatibility; the search runs on one thread.
    int threads = 8;
    std::uint64_t seed = 0;
    bool complete = true;
    bool memo = true;
    double support_ratio = 0.75;
    /// Pair rows are part of the initial model up to this many customers and separated above it.
    int static_pair_rows = 30;
    int max_cut_rounds = 50;
    /// Node bounds within this absolute distance of the incumbent are pruned.
    double prune_tolerance = 1e-7;
    double integrality_tolerance = 1e-6;
    PipelineConfig pipeline;
    SpConfig sp;
};

enum class SeparationMode
{
    Skip,
    All,
    /// Separator families in turn, stopping at the first that finds a cut.
    Sequential
};

/// Schedule of the fractional callback for 1-based node index `node`.
SeparationMode separation_schedule(long node, const BncConfig& config);

/// Most fractional entry of `x`; ties go to the larger cost, then the lower index.
/// Throws std::logic_error when every entry is integral within `tol`.
int most_fractional(std::span<const double> x, std::span<const double> cost, double tol = 1e-6);

struct CutRecord
{
    CutExpr cut;
    /// Route whose rejection produced the cut; empty for subtour and fractional cuts.
    std::vector<int> route;
    bool fractional = false;
    /// Violation at the solution that triggered the cut.
    double trigger_violation = 0.0;
};

/// Branch-and-cut over the two-index flow model. Appends every emitted cut to `ledger`.
SolutionReport solve(const Instance& instance, ProblemVariant variant, const BncConfig& config,
                     std::vector<CutRecord>* ledger = nullptr);

}  // namespace l3cvrp
