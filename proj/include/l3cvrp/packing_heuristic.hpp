#pragma once

#include "l3cvrp/loading.hpp"
#include "l3cvrp/timing.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace l3cvrp {

struct HeuristicConfig
{
    int enumeration_threshold = 7;
    int lifo_tolerance = 2;
    int lifo_eval = 4;
    int perturbation_distance = 3;
    int max_perturbations = 50;
    double max_seconds = 1.0;
};

/// Positions [start, end] that the items of one group occupy in the strict LIFO order.
struct GroupSpan
{
    int start = 0;
    int end = 0;
};

int lifo_distance(GroupSpan span, int k, int tolerance);

/// Loading order: groups that leave last go in first, larger bases first.
std::vector<int> initial_sequence(std::span<const LoadItem> items, const ConstraintSet& constraints);

/// Span of each item's group inside `initial_sequence`.
std::vector<GroupSpan> group_spans(std::span<const LoadItem> items, const ConstraintSet& constraints);

int total_lifo_distance(std::span<const int> sequence, std::span<const GroupSpan> spans, int tolerance);

struct ConstructiveResult
{
    Packing packing;
    std::vector<int> skipped;
    int placed = 0;
};

/// Places items in `sequence` order at the lexicographically smallest feasible
/// point. Items that fit nowhere are skipped, or end the run when `stopAtFailure`.
ConstructiveResult constructive_pack(std::span<const LoadItem> items, const Container& container,
                                     std::span<const int> sequence, const ConstraintSet& constraints,
                                     bool stopAtFailure = false);

struct HeuristicOutcome
{
    std::optional<Packing> packing;
    long evaluations = 0;
};

HeuristicOutcome metaheuristic_pack(std::span<const LoadItem> items, const Container& container,
                                    const ConstraintSet& constraints, const HeuristicConfig& config = {},
                                    const Deadline& outer = {}, std::uint64_t seed = 0);

}  // namespace l3cvrp
