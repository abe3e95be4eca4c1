#include "l3cvrp/loading.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace l3cvrp {

ConstraintSet::ConstraintSet(LoadingVariant variant) : support_ratio(variant.support_ratio)
{
    switch (variant.kind)
    {
        case LoadingKind::AllConstraints:
            break;
        case LoadingKind::NoFragility:
            fragility = false;
            break;
        case LoadingKind::NoLifo:
            lifo = LifoMode::Off;
            break;
        case LoadingKind::NoSupport:
            support = false;
            break;
        case LoadingKind::LoadingOnly:
            fragility = false;
            support = false;
            lifo = LifoMode::Off;
            break;
        case LoadingKind::LifoNoSequence:
            lifo = LifoMode::AnySequence;
            break;
    }
}

namespace {
int lifo_rank(LifoMode m)
{
    switch (m)
    {
        case LifoMode::Off:
            return 0;
        case LifoMode::AnySequence:
            return 1;
        case LifoMode::Sequence:
            return 2;
    }
    return 0;
}
}  // namespace

bool ConstraintSet::at_least_as_strict_as(const ConstraintSet& other) const
{
    if (other.fragility && !fragility)
        return false;
    if (other.support && (!support || support_ratio < other.support_ratio))
        return false;
    return lifo_rank(lifo) >= lifo_rank(other.lifo);
}

std::string ConstraintSet::key() const
{
    std::string k;
    k += fragility ? 'F' : 'f';
    k += support ? 'S' : 's';
    k += lifo == LifoMode::Off ? 'o' : (lifo == LifoMode::Sequence ? 'L' : 'A');
    if (support)
        k += std::to_string(support_ratio);
    return k;
}

std::string to_string(LoadingKind kind)
{
    switch (kind)
    {
        case LoadingKind::AllConstraints:
            return "AllConstraints";
        case LoadingKind::NoFragility:
            return "NoFragility";
        case LoadingKind::NoLifo:
            return "NoLifo";
        case LoadingKind::NoSupport:
            return "NoSupport";
        case LoadingKind::LoadingOnly:
            return "LoadingOnly";
        case LoadingKind::LifoNoSequence:
            return "LifoNoSequence";
    }
    return "?";
}

std::string to_string(ViolationKind kind)
{
    switch (kind)
    {
        case ViolationKind::OutOfBounds:
            return "out-of-bounds";
        case ViolationKind::Overlap:
            return "overlap";
        case ViolationKind::Fragility:
            return "fragility";
        case ViolationKind::Support:
            return "support";
        case ViolationKind::Lifo:
            return "lifo";
        case ViolationKind::UnloadOrder:
            return "unload-order";
    }
    return "?";
}

bool overlaps(const Placement& p, const Placement& q)
{
    return overlap_1d(p.x, p.dx(), q.x, q.dx()) && overlap_1d(p.y, p.dy(), q.y, q.dy())
           && overlap_1d(p.z, p.dz(), q.z, q.dz());
}

long xy_overlap_area(const Placement& p, const Placement& q)
{
    return overlap_len(p.x, p.dx(), q.x, q.dx()) * overlap_len(p.y, p.dy(), q.y, q.dy());
}

bool supported(long coveredArea, long baseArea, double ratio)
{
    const auto needed = static_cast<long>(std::ceil(ratio * static_cast<double>(baseArea) - 1e-9));
    return coveredArea >= needed;
}

double support_ratio_of(const Packing& pk, size_t index)
{
    const Placement& p = pk.placements.at(index);
    if (p.z == 0)
        return 1.0;
    long covered = 0;
    for (size_t k = 0; k < pk.placements.size(); ++k)
        if (k != index && pk.placements[k].top() == p.z)
            covered += xy_overlap_area(p, pk.placements[k]);
    return static_cast<double>(covered) / static_cast<double>(long(p.dx()) * p.dy());
}

namespace {

bool fragility_pair_ok(const Placement& upper, const Placement& lower)
{
    if (upper.item.fragile || !lower.item.fragile)
        return true;
    return !(lower.top() == upper.z && xy_overlap_area(upper, lower) > 0);
}

std::map<int, int> unload_rank(const Packing& pk)
{
    std::map<int, int> rank;
    if (!pk.unload_order.empty())
    {
        for (size_t k = 0; k < pk.unload_order.size(); ++k)
            rank[pk.unload_order[k]] = static_cast<int>(k);
        return rank;
    }
    std::set<int, std::greater<>> groups;
    for (const auto& p : pk.placements)
        groups.insert(p.item.group);
    int k = 0;
    for (int g : groups)
        rank[g] = k++;
    return rank;
}

/// Groups in blocking relation must admit a topological order.
bool some_unload_order_exists(const Packing& pk)
{
    std::map<int, std::set<int>> succ;  // blocker group -> blocked groups
    std::set<int> groups;
    for (const auto& p : pk.placements)
        groups.insert(p.item.group);
    for (const auto& a : pk.placements)
        for (const auto& b : pk.placements)
            if (a.item.group != b.item.group && blocks(a, b))
                succ[a.item.group].insert(b.item.group);

    std::map<int, int> indeg;
    for (int g : groups)
        indeg[g] = 0;
    for (const auto& [g, s] : succ)
        for (int h : s)
            ++indeg[h];
    std::vector<int> ready;
    for (const auto& [g, d] : indeg)
        if (d == 0)
            ready.push_back(g);
    size_t seen = 0;
    while (!ready.empty())
    {
        int g = ready.back();
        ready.pop_back();
        ++seen;
        for (int h : succ[g])
            if (--indeg[h] == 0)
                ready.push_back(h);
    }
    return seen == groups.size();
}

}  // namespace

bool fragility_ok(const Packing& pk)
{
    for (const auto& a : pk.placements)
        for (const auto& b : pk.placements)
            if (!fragility_pair_ok(a, b))
                return false;
    return true;
}

bool blocks(const Placement& blocker, const Placement& blocked)
{
    const bool fromRear = blocker.x >= blocked.x + blocked.dx()
                          && overlap_1d(blocker.y, blocker.dy(), blocked.y, blocked.dy())
                          && overlap_1d(blocker.z, blocker.dz(), blocked.z, blocked.dz());
    const bool fromAbove = blocker.z >= blocked.z + blocked.dz()
                           && overlap_1d(blocker.x, blocker.dx(), blocked.x, blocked.dx())
                           && overlap_1d(blocker.y, blocker.dy(), blocked.y, blocked.dy());
    return fromRear || fromAbove;
}

bool lifo_ok(const Packing& pk)
{
    const auto rank = unload_rank(pk);
    for (const auto& a : pk.placements)
        for (const auto& b : pk.placements)
        {
            if (a.item.group == b.item.group || !blocks(a, b))
                continue;
            auto ra = rank.find(a.item.group);
            auto rb = rank.find(b.item.group);
            if (ra == rank.end() || rb == rank.end() || ra->second > rb->second)
                return false;
        }
    return true;
}

std::vector<Violation> validate_packing(const Packing& pk, const ConstraintSet& constraints)
{
    std::vector<Violation> out;
    const auto& c = pk.container;
    const auto& ps = pk.placements;
    const int n = static_cast<int>(ps.size());

    for (int i = 0; i < n; ++i)
    {
        const auto& p = ps[i];
        if (p.x < 0 || p.y < 0 || p.z < 0 || p.x + p.dx() > c.length || p.y + p.dy() > c.width
            || p.z + p.dz() > c.height)
            out.push_back({ViolationKind::OutOfBounds, i, -1});
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (overlaps(ps[i], ps[j]))
                out.push_back({ViolationKind::Overlap, i, j});

    if (constraints.fragility)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && !fragility_pair_ok(ps[i], ps[j]))
                    out.push_back({ViolationKind::Fragility, i, j});

    if (constraints.support)
        for (int i = 0; i < n; ++i)
        {
            if (ps[i].z == 0)
                continue;
            long covered = 0;
            for (int j = 0; j < n; ++j)
                if (j != i && ps[j].top() == ps[i].z)
                    covered += xy_overlap_area(ps[i], ps[j]);
            if (!supported(covered, long(ps[i].dx()) * ps[i].dy(), constraints.support_ratio))
                out.push_back({ViolationKind::Support, i, -1});
        }

    const bool explicitOrder = !pk.unload_order.empty();
    if (explicitOrder)
    {
        std::set<int> listed(pk.unload_order.begin(), pk.unload_order.end());
        bool complete = listed.size() == pk.unload_order.size();
        for (const auto& p : ps)
            complete = complete && listed.count(p.item.group) > 0;
        if (!complete && constraints.lifo != LifoMode::Off)
            out.push_back({ViolationKind::UnloadOrder, -1, -1});
    }

    if (constraints.lifo == LifoMode::Sequence || (constraints.lifo == LifoMode::AnySequence && explicitOrder))
    {
        const auto rank = unload_rank(pk);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
            {
                if (ps[i].item.group == ps[j].item.group || !blocks(ps[i], ps[j]))
                    continue;
                auto ri = rank.find(ps[i].item.group);
                auto rj = rank.find(ps[j].item.group);
                if (ri == rank.end() || rj == rank.end() || ri->second > rj->second)
                    out.push_back({ViolationKind::Lifo, i, j});
            }
    }
    else if (constraints.lifo == LifoMode::AnySequence && !some_unload_order_exists(pk))
        out.push_back({ViolationKind::Lifo, -1, -1});

    return out;
}

std::vector<LoadItem> route_items(const Instance& instance, std::span<const int> route)
{
    std::vector<LoadItem> items;
    const int p = static_cast<int>(route.size());
    for (int k = 0; k < p; ++k)
    {
        const auto& c = instance.customer(route[k]);
        for (size_t i = 0; i < c.items.size(); ++i)
        {
            const auto& it = c.items[i];
            items.push_back({it.length, it.width, it.height, it.fragile, p - k, c.id, static_cast<int>(i)});
        }
    }
    return items;
}

}  // namespace l3cvrp
