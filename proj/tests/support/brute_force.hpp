#pragma once

// Reference loader for tiny instances: tries every integer position and
// orientation of every item, then asks the validator about each complete layout.

#include "l3cvrp/loading.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace l3cvrp::testing {

inline bool valid_under(Packing pk, const ConstraintSet& cs)
{
    if (cs.lifo != LifoMode::AnySequence)
        return validate_packing(pk, cs).empty();
    std::set<int> gs;
    for (const auto& p : pk.placements)
        gs.insert(p.item.group);
    std::vector<int> order(gs.begin(), gs.end());
    do
    {
        pk.unload_order = order;
        if (validate_packing(pk, cs).empty())
            return true;
    } while (std::next_permutation(order.begin(), order.end()));
    return false;
}

/// feasible[k] tells whether some layout satisfies sets[k].
inline std::vector<bool> brute_force_feasible(const std::vector<LoadItem>& items, const Container& c,
                                              const std::vector<ConstraintSet>& sets)
{
    std::vector<bool> feasible(sets.size(), false);
    size_t open = sets.size();
    Packing pk;
    pk.container = c;

    auto rec = [&](auto&& self, size_t i) -> void {
        if (open == 0)
            return;
        if (i == items.size())
        {
            for (size_t k = 0; k < sets.size(); ++k)
                if (!feasible[k] && valid_under(pk, sets[k]))
                {
                    feasible[k] = true;
                    --open;
                }
            return;
        }
        for (int r = 0; r < 2; ++r)
        {
            Placement p{items[i], 0, 0, 0, r == 1};
            if (r == 1 && items[i].length == items[i].width)
                continue;
            for (p.x = 0; p.x + p.dx() <= c.length; ++p.x)
                for (p.y = 0; p.y + p.dy() <= c.width; ++p.y)
                    for (p.z = 0; p.z + p.dz() <= c.height; ++p.z)
                    {
                        bool clash = false;
                        for (const auto& q : pk.placements)
                            clash = clash || overlaps(p, q);
                        if (clash)
                            continue;
                        pk.placements.push_back(p);
                        self(self, i + 1);
                        pk.placements.pop_back();
                        if (open == 0)
                            return;
                    }
        }
    };
    rec(rec, 0);
    return feasible;
}

}  // namespace l3cvrp::testing
