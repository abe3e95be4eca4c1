#include "doctest.h"

#include "../support/generators.hpp"
#include "l3cvrp/exact_loading.hpp"
#include "l3cvrp/packing_heuristic.hpp"

#include <random>

using namespace l3cvrp;
using namespace l3cvrp::testing;

TEST_CASE("lifo distance is zero inside the tolerance window")
{
    GroupSpan s{4, 6};
    CHECK(lifo_distance(s, 5, 0) == 0);
    CHECK(lifo_distance(s, 2, 2) == 0);
    CHECK(lifo_distance(s, 1, 2) == 3);
    CHECK(lifo_distance(s, 9, 2) == 3);
    CHECK(lifo_distance(s, 8, 2) == 0);
    CHECK(lifo_distance(s, 7, 0) == 1);
}

TEST_CASE("initial sequence loads late groups first")
{
    std::vector<LoadItem> items{{1, 1, 1, false, 2, 1, 0}, {3, 3, 1, false, 1, 2, 0}, {2, 2, 1, false, 2, 1, 1}};
    ConstraintSet cs;
    auto seq = initial_sequence(items, cs);
    CHECK(seq == std::vector<int>{1, 2, 0});
    auto spans = group_spans(items, cs);
    CHECK(spans[0].start == 1);
    CHECK(spans[0].end == 2);
    CHECK(total_lifo_distance(seq, spans, 0) == 0);
    std::vector<int> reversed{0, 2, 1};
    CHECK(total_lifo_distance(reversed, spans, 0) == 3);
}

TEST_CASE("constructive placement fills the back of the container first")
{
    std::vector<LoadItem> items{{2, 2, 2, false, 1, 1, 0}, {2, 2, 2, false, 1, 1, 1}, {2, 2, 2, false, 1, 1, 2}};
    std::vector<int> seq{0, 1, 2};
    auto r = constructive_pack(items, Container{4, 2, 4}, seq, ConstraintSet{false, true, LifoMode::Off});
    REQUIRE(r.placed == 3);
    CHECK(r.packing.placements[0].x == 0);
    CHECK(r.packing.placements[1].x == 0);
    CHECK(r.packing.placements[1].z == 2);
    CHECK(r.packing.placements[2].x == 2);
}

TEST_CASE("constructive skips what does not fit")
{
    std::vector<LoadItem> items{{3, 3, 3, false, 1, 1, 0}, {3, 3, 3, false, 1, 1, 1}};
    std::vector<int> seq{0, 1};
    auto r = constructive_pack(items, Container{4, 4, 4}, seq, ConstraintSet{});
    CHECK(r.placed == 1);
    CHECK(r.skipped == std::vector<int>{1});
}

TEST_CASE("heuristic packings always validate and never contradict the exact check")
{
    std::mt19937_64 rng(11);
    int successes = 0;
    for (int trial = 0; trial < 600; ++trial)
    {
        auto m = random_micro_clp(rng);
        for (const auto& cs : six_loading_variants(m.ratio))
        {
            auto h = metaheuristic_pack(m.items, m.container, cs, HeuristicConfig{}, {}, trial);
            if (!h.packing)
                continue;
            ++successes;
            CHECK(validate_packing(*h.packing, cs).empty());
            CHECK(h.packing->placements.size() == m.items.size());
            CHECK(exact_check(m.items, m.container, cs, TimeBudget::unlimited()).status == LoadStatus::Feasible);
        }
    }
    CHECK(successes > 500);
}

TEST_CASE("local search handles longer item lists")
{
    std::mt19937_64 rng(3);
    RandomInstanceShape shape;
    shape.customers = 6;
    shape.max_items = 3;
    shape.container = {10, 6, 6};
    auto inst = random_instance(rng, shape, "h");
    std::vector<int> route{1, 2, 3, 4, 5, 6};
    auto items = route_items(inst, route);
    REQUIRE(items.size() > 7);
    for (const auto& cs : six_loading_variants(0.75))
    {
        auto h = metaheuristic_pack(items, container_of(inst.vehicle), cs, HeuristicConfig{}, {}, 1);
        if (h.packing)
            CHECK(validate_packing(*h.packing, cs).empty());
        CHECK(h.evaluations > 0);
    }
}
