#include "l3cvrp/problem.hpp"

#include "l3cvrp/solution.hpp"

namespace l3cvrp {

std::string to_string(ProblemVariant v)
{
    switch (v)
    {
        case ProblemVariant::Cvrp:
            return "cvrp";
        case ProblemVariant::LoadingOnly:
            return "loading-only";
        case ProblemVariant::NoSupport:
            return "no-support";
        case ProblemVariant::NoLifo:
            return "no-lifo";
        case ProblemVariant::NoFragility:
            return "no-fragility";
        case ProblemVariant::AllConstraints:
            return "all";
    }
    return "?";
}

std::optional<ProblemVariant> parse_variant(std::string_view text)
{
    for (auto v : {ProblemVariant::Cvrp, ProblemVariant::LoadingOnly, ProblemVariant::NoSupport, ProblemVariant::NoLifo,
                   ProblemVariant::NoFragility, ProblemVariant::AllConstraints})
        if (to_string(v) == text)
            return v;
    return std::nullopt;
}

std::optional<ConstraintSet> loading_constraints(ProblemVariant v, double supportRatio)
{
    switch (v)
    {
        case ProblemVariant::Cvrp:
            return std::nullopt;
        case ProblemVariant::LoadingOnly:
            return ConstraintSet(LoadingVariant{LoadingKind::LoadingOnly, supportRatio});
        case ProblemVariant::NoSupport:
            return ConstraintSet(LoadingVariant{LoadingKind::NoSupport, supportRatio});
        case ProblemVariant::NoLifo:
            return ConstraintSet(LoadingVariant{LoadingKind::NoLifo, supportRatio});
        case ProblemVariant::NoFragility:
            return ConstraintSet(LoadingVariant{LoadingKind::NoFragility, supportRatio});
        case ProblemVariant::AllConstraints:
            return ConstraintSet(LoadingVariant{LoadingKind::AllConstraints, supportRatio});
    }
    return std::nullopt;
}

std::string to_string(SolveStatus s)
{
    switch (s)
    {
        case SolveStatus::Optimal:
            return "optimal";
        case SolveStatus::TimeLimit:
            return "time-limit";
        case SolveStatus::Infeasible:
            return "infeasible";
    }
    return "?";
}

}  // namespace l3cvrp
