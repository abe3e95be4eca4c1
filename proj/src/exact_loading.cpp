#include "l3cvrp/exact_loading.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <map>
#include <numeric>
#include <random>
#include <tuple>

namespace l3cvrp {

std::string to_string(LoadStatus status)
{
    switch (status)
    {
        case LoadStatus::Feasible:
            return "feasible";
        case LoadStatus::Infeasible:
            return "infeasible";
        case LoadStatus::Unknown:
            return "unknown";
    }
    return "?";
}

namespace {

struct ItemType
{
    int length, width, height;
    bool fragile;
    int group;
    int groupIndex;
    std::vector<int> members;  // indices into the input span
    int remaining;
    long volume() const { return long(length) * width * height; }
};

struct Placed
{
    int type;
    int item;
    int x, y, z, dx, dy, dz;
    bool rotated;
};

/// Smallest extent of an item along x and y over the orientations that fit.
std::pair<int, int> min_extents(const LoadItem& it, const Container& c)
{
    int mx = INT_MAX, my = INT_MAX;
    if (it.length <= c.length && it.width <= c.width)
    {
        mx = std::min(mx, it.length);
        my = std::min(my, it.width);
    }
    if (it.width <= c.length && it.length <= c.width)
    {
        mx = std::min(mx, it.width);
        my = std::min(my, it.length);
    }
    return {mx, my};
}

/// True when some clique of `adj` has total weight above `capacity`.
bool heavy_clique(const std::vector<std::vector<char>>& adj, const std::vector<long>& weight, long capacity)
{
    const int n = static_cast<int>(weight.size());
    long budget = 200000;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int u, int v) { return weight[u] > weight[v]; });
    auto grow = [&](auto&& self, const std::vector<int>& cand, long w) -> bool {
        if (w > capacity)
            return true;
        if (--budget < 0)
            return false;
        long rest = 0;
        for (int v : cand)
            rest += weight[v];
        if (w + rest <= capacity)
            return false;
        for (size_t k = 0; k < cand.size(); ++k)
        {
            const int v = cand[k];
            std::vector<int> next;
            for (size_t m = k + 1; m < cand.size(); ++m)
                if (adj[v][cand[m]])
                    next.push_back(cand[m]);
            if (self(self, next, w + weight[v]))
                return true;
        }
        return false;
    };
    return grow(grow, order, 0);
}

/// Two boxes that cannot be separated along an axis need disjoint projections on
/// the face across it; boxes that cannot be separated along two axes line up along
/// the third. Returns a description of the failing bound, or an empty string.
std::string clique_violation(std::span<const LoadItem> items, const Container& c)
{
    const int n = static_cast<int>(items.size());
    std::vector<std::array<long, 3>> ext(n);
    for (int i = 0; i < n; ++i)
    {
        auto [mx, my] = min_extents(items[i], c);
        ext[i] = {mx, my, items[i].height};
    }
    const long size[3] = {c.length, c.width, c.height};
    std::vector<std::vector<char>> tight[3];
    for (int axis = 0; axis < 3; ++axis)
    {
        tight[axis].assign(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                tight[axis][i][j] = tight[axis][j][i] = ext[i][axis] + ext[j][axis] > size[axis];
    }
    std::vector<long> weight(n);
    for (int axis = 0; axis < 3; ++axis)
    {
        const int a = (axis + 1) % 3, b = (axis + 2) % 3;
        for (int i = 0; i < n; ++i)
            weight[i] = axis == 2 ? long(items[i].length) * items[i].width : ext[i][a] * ext[i][b];
        if (heavy_clique(tight[axis], weight, size[a] * size[b]))
            return std::string("boxes stacked across ") + "xyz"[axis] + " exceed the face";

        std::vector<std::vector<char>> both(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                both[i][j] = tight[a][i][j] && tight[b][i][j];
        for (int i = 0; i < n; ++i)
            weight[i] = ext[i][axis];
        if (heavy_clique(both, weight, size[axis]))
            return std::string("boxes in line along ") + "xyz"[axis] + " exceed the container";
    }
    return {};
}

/// Cells are visited in (z, x, y) order. Each node fills the first free cell
/// with an item corner or leaves it empty for good.
class CellSearch
{
  public:
    CellSearch(std::span<const LoadItem> items, const Container& c, const ConstraintSet& cs, Deadline deadline,
               std::uint64_t seed)
        : mItems(items), mC(c), mCs(cs), mDeadline(deadline)
    {
        BuildTypes(seed);
        mGrid.assign(static_cast<size_t>(c.volume()), 0);
        mLayerFree.assign(c.height, long(c.length) * c.width);
        long itemVolume = 0;
        for (const auto& it : items)
            itemVolume += it.volume();
        mRemainingVolume = itemVolume;
        mSlack = c.volume() - itemVolume;
        mRemainingItems = static_cast<int>(items.size());
        const size_t g = mGroups.size();
        mEdges.assign(g * g, 0);
    }

    LoadStatus Run()
    {
        const bool found = Dfs(0);
        if (found)
            return LoadStatus::Feasible;
        return mAborted ? LoadStatus::Unknown : LoadStatus::Infeasible;
    }

    long Nodes() const { return mNodes; }

    Packing Witness() const
    {
        Packing pk;
        pk.container = mC;
        for (const auto& p : mPlaced)
            pk.placements.push_back({mItems[p.item], p.x, p.y, p.z, p.rotated});
        if (mCs.lifo == LifoMode::AnySequence)
            pk.unload_order = TopologicalGroups();
        return pk;
    }

  private:
    void BuildTypes(std::uint64_t seed)
    {
        std::map<std::tuple<int, int, int, bool, int>, int> index;
        for (size_t i = 0; i < mItems.size(); ++i)
        {
            const auto& it = mItems[i];
            const int a = std::min(it.length, it.width);
            const int b = std::max(it.length, it.width);
            const int group = mCs.lifo == LifoMode::Off ? 0 : it.group;
            auto key = std::make_tuple(a, b, it.height, mCs.fragility && it.fragile, group);
            auto [pos, fresh] = index.try_emplace(key, static_cast<int>(mTypes.size()));
            if (fresh)
                mTypes.push_back({a, b, it.height, std::get<3>(key), group, 0, {}, 0});
            mTypes[pos->second].members.push_back(static_cast<int>(i));
            mTypes[pos->second].remaining++;
        }

        std::map<int, int> groupIndex;
        for (const auto& t : mTypes)
            groupIndex.emplace(t.group, 0);
        for (auto& [g, k] : groupIndex)
        {
            k = static_cast<int>(mGroups.size());
            mGroups.push_back(g);
        }
        for (auto& t : mTypes)
            t.groupIndex = groupIndex[t.group];

        std::mt19937_64 rng(seed);
        std::shuffle(mTypes.begin(), mTypes.end(), rng);
        std::stable_sort(mTypes.begin(), mTypes.end(), [](const ItemType& a, const ItemType& b) {
            if (a.group != b.group)
                return a.group < b.group;
            return a.volume() > b.volume();
        });
    }

    size_t Cell(int x, int y, int z) const { return (size_t(z) * mC.length + x) * mC.width + y; }

    void Mark(const Placed& p, uint8_t value)
    {
        for (int z = p.z; z < p.z + p.dz; ++z)
            mLayerFree[z] += value ? -long(p.dx) * p.dy : long(p.dx) * p.dy;
        for (int z = p.z; z < p.z + p.dz; ++z)
            for (int x = p.x; x < p.x + p.dx; ++x)
            {
                const size_t base = Cell(x, p.y, z);
                std::fill_n(mGrid.begin() + static_cast<long>(base), p.dy, value);
            }
    }

    bool Reaches(int from, int to) const
    {
        const size_t g = mGroups.size();
        std::vector<char> seen(g, 0);
        std::vector<int> stack{from};
        seen[from] = 1;
        while (!stack.empty())
        {
            const int u = stack.back();
            stack.pop_back();
            if (u == to)
                return true;
            for (size_t v = 0; v < g; ++v)
                if (!seen[v] && mEdges[u * g + v] > 0)
                {
                    seen[v] = 1;
                    stack.push_back(static_cast<int>(v));
                }
        }
        return false;
    }

    static bool Blocks(const Placed& a, const Placed& b)
    {
        const bool rear = a.x >= b.x + b.dx && overlap_1d(a.y, a.dy, b.y, b.dy) && overlap_1d(a.z, a.dz, b.z, b.dz);
        const bool above = a.z >= b.z + b.dz && overlap_1d(a.x, a.dx, b.x, b.dx) && overlap_1d(a.y, a.dy, b.y, b.dy);
        return rear || above;
    }

    /// Checks the new box against everything placed and records precedence edges.
    bool Admissible(const Placed& p, std::vector<std::pair<int, int>>& newEdges)
    {
        long covered = 0;
        const ItemType& t = mTypes[p.type];
        for (const auto& q : mPlaced)
        {
            if (overlap_1d(p.x, p.dx, q.x, q.dx) && overlap_1d(p.y, p.dy, q.y, q.dy) && overlap_1d(p.z, p.dz, q.z, q.dz))
                return false;
            const ItemType& u = mTypes[q.type];
            if (q.z + q.dz == p.z)
            {
                const long area = overlap_len(p.x, p.dx, q.x, q.dx) * overlap_len(p.y, p.dy, q.y, q.dy);
                if (area > 0 && mCs.fragility && u.fragile && !t.fragile)
                    return false;
                covered += area;
            }
            if (mCs.lifo == LifoMode::Off || t.group == u.group)
                continue;
            const bool pq = Blocks(p, q);
            const bool qp = Blocks(q, p);
            if (mCs.lifo == LifoMode::Sequence)
            {
                if ((pq && t.group < u.group) || (qp && u.group < t.group))
                    return false;
            }
            else
            {
                if (pq)
                    newEdges.emplace_back(t.groupIndex, u.groupIndex);
                if (qp)
                    newEdges.emplace_back(u.groupIndex, t.groupIndex);
            }
        }
        if (mCs.support && p.z > 0 && !supported(covered, long(p.dx) * p.dy, mCs.support_ratio))
            return false;

        const size_t g = mGroups.size();
        size_t added = 0;
        bool ok = true;
        for (; added < newEdges.size(); ++added)
        {
            auto [a, b] = newEdges[added];
            if (mEdges[a * g + b] == 0 && Reaches(b, a))
            {
                ok = false;
                break;
            }
            mEdges[a * g + b]++;
        }
        if (!ok)
        {
            for (size_t k = 0; k < added; ++k)
                mEdges[newEdges[k].first * g + newEdges[k].second]--;
            newEdges.clear();
        }
        return ok;
    }

    bool Expired()
    {
        if ((++mNodes & 255) == 0 && mDeadline.expired())
            mAborted = true;
        return mAborted;
    }

    bool Dfs(size_t cursor)
    {
        if (mRemainingItems == 0)
            return true;

        const size_t cells = mGrid.size();
        std::vector<size_t> wastedHere;
        bool found = false;
        while (!found && !mAborted)
        {
            while (cursor < cells && mGrid[cursor] != 0)
                ++cursor;
            if (cursor >= cells || Expired())
                break;

            const int y = static_cast<int>(cursor % mC.width);
            const int x = static_cast<int>((cursor / mC.width) % mC.length);
            const int z = static_cast<int>(cursor / (size_t(mC.width) * mC.length));
            // every remaining item still has to start at this level or above
            if (z + TallestRemaining() > mC.height || LayerOverfull(z))
                break;
            int run = 0;
            while (y + run < mC.width && mGrid[cursor + run] == 0)
                ++run;

            for (size_t ti = 0; ti < mTypes.size() && !found && !mAborted; ++ti)
            {
                ItemType& t = mTypes[ti];
                if (t.remaining == 0 || z + t.height > mC.height)
                    continue;
                const int orientations = t.length == t.width ? 1 : 2;
                for (int o = 0; o < orientations && !found && !mAborted; ++o)
                {
                    const int dx = o == 0 ? t.length : t.width;
                    const int dy = o == 0 ? t.width : t.length;
                    if (x + dx > mC.length || dy > run)
                        continue;
                    const int item = t.members[t.members.size() - t.remaining];
                    const bool rotated = (dx != mItems[item].length);
                    Placed p{static_cast<int>(ti), item, x, y, z, dx, dy, t.height, rotated};
                    std::vector<std::pair<int, int>> edges;
                    if (!Admissible(p, edges))
                        continue;

                    mPlaced.push_back(p);
                    Mark(p, 1);
                    t.remaining--;
                    mRemainingItems--;
                    mRemainingVolume -= t.volume();
                    if (Dfs(cursor + 1))
                    {
                        found = true;
                        break;
                    }
                    mRemainingVolume += t.volume();
                    mRemainingItems++;
                    t.remaining++;
                    Mark(p, 0);
                    mPlaced.pop_back();
                    const size_t g = mGroups.size();
                    for (auto [a, b] : edges)
                        mEdges[a * g + b]--;
                }
            }
            if (found || mAborted || mWasted + 1 > mSlack)
                break;
            mGrid[cursor] = 2;
            --mLayerFree[z];
            ++mWasted;
            wastedHere.push_back(cursor);
            ++cursor;
        }
        if (!found)
            for (size_t c : wastedHere)
            {
                mGrid[c] = 0;
                ++mLayerFree[c / (size_t(mC.width) * mC.length)];
                --mWasted;
            }
        return found;
    }

    /// Items that start at `z` or above but no higher than H - h cover every layer
    /// in [H - h, z + h - 1]; their footprints must fit the free cells there.
    bool LayerOverfull(int z) const
    {
        for (int layer = z; layer < mC.height; ++layer)
        {
            long forced = 0;
            for (const auto& t : mTypes)
                if (t.remaining > 0 && mC.height - t.height <= layer && layer <= z + t.height - 1)
                    forced += long(t.remaining) * t.length * t.width;
            if (forced > mLayerFree[layer])
                return true;
        }
        return false;
    }

    int TallestRemaining() const
    {
        int h = 0;
        for (const auto& t : mTypes)
            if (t.remaining > 0)
                h = std::max(h, t.height);
        return h;
    }

    std::vector<int> TopologicalGroups() const
    {
        const size_t g = mGroups.size();
        std::vector<int> indeg(g, 0);
        for (size_t a = 0; a < g; ++a)
            for (size_t b = 0; b < g; ++b)
                if (mEdges[a * g + b] > 0)
                    indeg[b]++;
        std::vector<int> order;
        std::vector<char> done(g, 0);
        for (size_t round = 0; round < g; ++round)
        {
            // Highest ready group first so the order matches the default where possible.
            int pick = -1;
            for (int a = static_cast<int>(g) - 1; a >= 0; --a)
                if (!done[a] && indeg[a] == 0)
                {
                    pick = a;
                    break;
                }
            if (pick < 0)
                break;
            done[pick] = 1;
            order.push_back(mGroups[pick]);
            for (size_t b = 0; b < g; ++b)
                if (mEdges[pick * g + b] > 0)
                    indeg[b]--;
        }
        return order;
    }

    std::span<const LoadItem> mItems;
    Container mC;
    ConstraintSet mCs;
    Deadline mDeadline;

    std::vector<ItemType> mTypes;
    std::vector<int> mGroups;
    std::vector<int> mEdges;
    std::vector<uint8_t> mGrid;
    std::vector<long> mLayerFree;
    std::vector<Placed> mPlaced;
    long mRemainingVolume = 0;
    long mSlack = 0;
    long mWasted = 0;
    int mRemainingItems = 0;
    long mNodes = 0;
    bool mAborted = false;
};

}  // namespace

LoadCheckOutcome exact_check(std::span<const LoadItem> items, const Container& container,
                             const ConstraintSet& constraints, TimeBudget budget, std::uint64_t seed,
                             const Deadline& outer)
{
    LoadCheckOutcome out;
    long volume = 0;
    for (const auto& it : items)
    {
        volume += it.volume();
        const bool plain = it.length <= container.length && it.width <= container.width;
        const bool turned = it.width <= container.length && it.length <= container.width;
        if (it.height > container.height || (!plain && !turned))
        {
            out.status = LoadStatus::Infeasible;
            out.reason = "item of customer " + std::to_string(it.customer) + " does not fit the container";
            return out;
        }
    }
    if (volume > container.volume())
    {
        out.status = LoadStatus::Infeasible;
        out.reason = "item volume exceeds container volume";
        return out;
    }
    if (auto why = clique_violation(items, container); !why.empty())
    {
        out.status = LoadStatus::Infeasible;
        out.reason = std::move(why);
        return out;
    }
    if (items.empty())
    {
        out.status = LoadStatus::Feasible;
        out.witness = Packing{container, {}, {}};
        return out;
    }

    const Deadline deadline = Deadline::after(budget).earliest(outer);
    if (deadline.expired())
    {
        out.reason = "budget exhausted";
        return out;
    }

    CellSearch search(items, container, constraints, deadline, seed);
    out.status = search.Run();
    out.nodes = search.Nodes();
    if (out.status == LoadStatus::Feasible)
        out.witness = search.Witness();
    else if (out.status == LoadStatus::Unknown)
        out.reason = "budget exhausted";
    else
        out.reason = "search exhausted";
    return out;
}

}  // namespace l3cvrp
