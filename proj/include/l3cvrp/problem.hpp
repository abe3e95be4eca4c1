#pragma once

#include "l3cvrp/loading.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace l3cvrp {

/// Routing-level problem setting. Cvrp ignores geometry and keeps weight and volume.
enum class ProblemVariant
{
    Cvrp,
    LoadingOnly,
    NoSupport,
    NoLifo,
    NoFragility,
    AllConstraints
};

std::string to_string(ProblemVariant v);
std::optional<ProblemVariant> parse_variant(std::string_view text);

/// Loading constraints of a variant; empty for Cvrp.
std::optional<ConstraintSet> loading_constraints(ProblemVariant v, double supportRatio);

}  // namespace l3cvrp
