#include "doctest.h"

#include "l3cvrp/route_memory.hpp"

#include <stdexcept>

using namespace l3cvrp;

TEST_CASE("customer sets")
{
    const std::vector<int> a{3, 70, 5};
    CustomerSet s(a);
    CHECK(s.contains(70));
    CHECK_FALSE(s.contains(4));
    CHECK(s.members() == std::vector<int>{3, 5, 70});
    const std::vector<int> b{3, 5, 70, 130};
    CHECK(s.subset_of(CustomerSet(b)));
    CHECK_FALSE(CustomerSet(b).subset_of(s));
}

TEST_CASE("feasible routes are kept per constraint set")
{
    FeasibleRouteStore store;
    const ConstraintSet all(LoadingVariant{LoadingKind::AllConstraints});
    const ConstraintSet none(LoadingVariant{LoadingKind::LoadingOnly});
    const std::vector<int> r{2, 1};
    Packing pk;
    pk.container = {4, 4, 4};
    CHECK(store.insert(r, all, pk));
    CHECK_FALSE(store.insert(r, all, pk));
    CHECK(store.contains(r, all));
    CHECK_FALSE(store.contains(r, none));
    CHECK_FALSE(store.contains(std::vector<int>{1, 2}, all));
    CHECK(store.packing(r, all)->container.length == 4);
    CHECK(store.routes(all).size() == 1);
    CHECK(store.size() == 1);
}

TEST_CASE("infeasible combinations")
{
    InfeasibleComboStore store;
    const ConstraintSet loose(false, false, LifoMode::Off);
    const ConstraintSet fragile(true, false, LifoMode::AnySequence);
    store.insert(std::vector<int>{4, 2}, loose);

    CHECK(store.superset_of_infeasible(std::vector<int>{1, 2, 4}, loose));
    CHECK(store.superset_of_infeasible(std::vector<int>{2, 4}, fragile));
    CHECK_FALSE(store.superset_of_infeasible(std::vector<int>{1, 2}, loose));

    store.insert(std::vector<int>{5, 6}, fragile);
    CHECK(store.superset_of_infeasible(std::vector<int>{5, 6}, fragile));
    // a weaker relaxation does not inherit the stricter entry
    CHECK_FALSE(store.superset_of_infeasible(std::vector<int>{5, 6}, loose));

    const ConstraintSet withSupport(true, true, LifoMode::Sequence);
    CHECK_THROWS_AS(store.insert(std::vector<int>{1, 3}, withSupport), std::logic_error);
    CHECK_THROWS_AS(store.superset_of_infeasible(std::vector<int>{1, 3}, withSupport), std::logic_error);
    CHECK(store.size() == 2);
}
