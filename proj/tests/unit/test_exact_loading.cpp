#include "doctest.h"

#include "../support/brute_force.hpp"
#include "../support/generators.hpp"
#include "l3cvrp/exact_loading.hpp"

#include <random>

using namespace l3cvrp;
using namespace l3cvrp::testing;

TEST_CASE("exact check agrees with enumeration on small cases")
{
    std::mt19937_64 rng(7);
    int feasible = 0, infeasible = 0;
    for (int trial = 0; trial < 400; ++trial)
    {
        auto m = random_micro_clp(rng);
        auto sets = six_loading_variants(m.ratio);
        auto truth = brute_force_feasible(m.items, m.container, sets);
        for (size_t k = 0; k < sets.size(); ++k)
        {
            auto out = exact_check(m.items, m.container, sets[k], TimeBudget::unlimited());
            REQUIRE(out.status != LoadStatus::Unknown);
            INFO("trial " << trial << " variant " << k);
            CHECK((out.status == LoadStatus::Feasible) == truth[k]);
            if (out.witness)
                CHECK(validate_packing(*out.witness, sets[k]).empty());
            (truth[k] ? feasible : infeasible)++;
        }
    }
    CHECK(feasible > 200);
    CHECK(infeasible > 200);
}

TEST_CASE("oversized item and excess volume are rejected up front")
{
    std::vector<LoadItem> big{{5, 5, 5, false, 1, 1, 0}};
    auto out = exact_check(big, Container{4, 6, 6}, ConstraintSet{}, TimeBudget::unlimited());
    CHECK(out.status == LoadStatus::Infeasible);
    CHECK_FALSE(out.reason.empty());

    std::vector<LoadItem> many(9, LoadItem{1, 1, 1, false, 1, 1, 0});
    CHECK(exact_check(many, Container{2, 2, 2}, ConstraintSet{}, TimeBudget::unlimited()).status
          == LoadStatus::Infeasible);
}

TEST_CASE("zero budget yields unknown")
{
    std::vector<LoadItem> items{{1, 1, 1, false, 1, 1, 0}, {1, 1, 1, false, 2, 2, 0}};
    auto out = exact_check(items, Container{3, 3, 3}, ConstraintSet{}, TimeBudget::seconds(0.0));
    CHECK(out.status == LoadStatus::Unknown);
}

TEST_CASE("any-sequence witness carries an unload order")
{
    std::vector<LoadItem> items{{2, 1, 2, false, 1, 1, 0}, {2, 1, 2, false, 2, 2, 0}, {2, 1, 2, false, 2, 2, 1},
                                {2, 1, 2, false, 1, 1, 1}};
    ConstraintSet any{false, false, LifoMode::AnySequence};
    auto out = exact_check(items, Container{4, 2, 2}, any, TimeBudget::unlimited());
    REQUIRE(out.status == LoadStatus::Feasible);
    CHECK(out.witness->unload_order.size() == 2);
    CHECK(validate_packing(*out.witness, any).empty());
}
