#pragma once

#include "l3cvrp/loading.hpp"
#include "l3cvrp/timing.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace l3cvrp {

enum class LoadStatus
{
    Feasible,
    Infeasible,
    Unknown
};

std::string to_string(LoadStatus status);

struct LoadCheckOutcome
{
    LoadStatus status = LoadStatus::Unknown;
    std::optional<Packing> witness;
    std::string reason;
    long nodes = 0;
};

/// Complete search over integer placements. Feasible comes with a witness that
/// passes validate_packing; Unknown means the budget or `outer` ran out first.
LoadCheckOutcome exact_check(std::span<const LoadItem> items, const Container& container,
                             const ConstraintSet& constraints, TimeBudget budget, std::uint64_t seed = 0,
                             const Deadline& outer = {});

}  // namespace l3cvrp
