#include "l3cvrp/packing_heuristic.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>

namespace l3cvrp {

int lifo_distance(GroupSpan span, int k, int tolerance)
{
    if (k < span.start - tolerance)
        return span.start - k;
    if (k > span.end + tolerance)
        return k - span.end;
    return 0;
}

std::vector<int> initial_sequence(std::span<const LoadItem> items, const ConstraintSet& constraints)
{
    std::vector<int> seq(items.size());
    std::iota(seq.begin(), seq.end(), 0);
    const bool byGroup = constraints.lifo != LifoMode::Off;
    std::stable_sort(seq.begin(), seq.end(), [&](int a, int b) {
        const auto& p = items[a];
        const auto& q = items[b];
        if (byGroup && p.group != q.group)
            return p.group < q.group;
        const long pa = long(p.length) * p.width;
        const long qa = long(q.length) * q.width;
        if (pa != qa)
            return pa > qa;
        return p.height > q.height;
    });
    return seq;
}

std::vector<GroupSpan> group_spans(std::span<const LoadItem> items, const ConstraintSet& constraints)
{
    const auto seq = initial_sequence(items, constraints);
    std::vector<GroupSpan> spans(items.size());
    if (constraints.lifo == LifoMode::Off)
    {
        for (auto& s : spans)
            s = {0, static_cast<int>(items.size()) - 1};
        return spans;
    }
    std::map<int, GroupSpan> byGroup;
    for (int k = 0; k < static_cast<int>(seq.size()); ++k)
    {
        const int g = items[seq[k]].group;
        auto [it, fresh] = byGroup.try_emplace(g, GroupSpan{k, k});
        if (!fresh)
            it->second.end = k;
    }
    for (size_t i = 0; i < items.size(); ++i)
        spans[i] = byGroup[items[i].group];
    return spans;
}

int total_lifo_distance(std::span<const int> sequence, std::span<const GroupSpan> spans, int tolerance)
{
    int total = 0;
    for (int k = 0; k < static_cast<int>(sequence.size()); ++k)
        total += lifo_distance(spans[sequence[k]], k, tolerance);
    return total;
}

namespace {

using Point = std::array<int, 3>;

std::vector<int> normal_pattern(std::span<const LoadItem> items, int limit, bool alongLength)
{
    std::vector<char> reach(static_cast<size_t>(limit) + 1, 0);
    reach[0] = 1;
    for (const auto& it : items)
    {
        const int a = alongLength ? it.length : it.width;
        const int b = alongLength ? it.width : it.length;
        std::vector<char> next = reach;
        for (int v = 0; v <= limit; ++v)
        {
            if (!reach[v])
                continue;
            if (v + a <= limit)
                next[v + a] = 1;
            if (v + b <= limit)
                next[v + b] = 1;
        }
        reach.swap(next);
    }
    std::vector<int> out;
    for (int v = 0; v < limit; ++v)
        if (reach[v])
            out.push_back(v);
    return out;
}

class Builder
{
  public:
    Builder(std::span<const LoadItem> items, const Container& c, const ConstraintSet& cs) : mC(c), mCs(cs)
    {
        mPx = normal_pattern(items, c.length, true);
        mPy = normal_pattern(items, c.width, false);
        std::vector<Point> floor;
        for (int x : mPx)
            for (int y : mPy)
                floor.push_back({x, y, 0});
        mPoints.push_back(std::move(floor));
    }

    const std::vector<Placement>& Placements() const { return mPlaced; }

    bool Place(const LoadItem& item)
    {
        const auto& points = mPoints.back();
        const int orientations = item.length == item.width ? 1 : 2;
        for (const auto& pt : points)
        {
            int chosen = -1;
            for (int o = 0; o < orientations; ++o)
            {
                Placement p{item, pt[0], pt[1], pt[2], o == 1};
                if (!Feasible(p))
                    continue;
                if (chosen < 0 || p.dx() < Placement{item, 0, 0, 0, chosen == 1}.dx())
                    chosen = o;
            }
            if (chosen >= 0)
            {
                Commit(Placement{item, pt[0], pt[1], pt[2], chosen == 1});
                return true;
            }
        }
        return false;
    }

    void Pop()
    {
        mPlaced.pop_back();
        mPoints.pop_back();
    }

  private:
    bool Feasible(const Placement& p) const
    {
        if (p.x + p.dx() > mC.length || p.y + p.dy() > mC.width || p.z + p.dz() > mC.height)
            return false;
        long covered = 0;
        for (const auto& q : mPlaced)
        {
            if (overlaps(p, q))
                return false;
            const long area = xy_overlap_area(p, q);
            if (area > 0 && q.top() == p.z)
            {
                covered += area;
                if (mCs.fragility && q.item.fragile && !p.item.fragile)
                    return false;
            }
            if (area > 0 && p.top() == q.z && mCs.fragility && p.item.fragile && !q.item.fragile)
                return false;
            if (mCs.lifo != LifoMode::Off && p.item.group != q.item.group)
            {
                if (blocks(p, q) && p.item.group < q.item.group)
                    return false;
                if (blocks(q, p) && q.item.group < p.item.group)
                    return false;
            }
        }
        return !(mCs.support && p.z > 0 && !supported(covered, long(p.dx()) * p.dy(), mCs.support_ratio));
    }

    int ProjectX(int x, int y, int z) const
    {
        int best = 0;
        for (const auto& q : mPlaced)
            if (q.x + q.dx() <= x && q.x + q.dx() > best && y >= q.y && y < q.y + q.dy() && z >= q.z && z < q.top())
                best = q.x + q.dx();
        return best;
    }

    int ProjectY(int x, int y, int z) const
    {
        int best = 0;
        for (const auto& q : mPlaced)
            if (q.y + q.dy() <= y && q.y + q.dy() > best && x >= q.x && x < q.x + q.dx() && z >= q.z && z < q.top())
                best = q.y + q.dy();
        return best;
    }

    int ProjectZ(int x, int y, int z) const
    {
        int best = 0;
        for (const auto& q : mPlaced)
            if (q.top() <= z && q.top() > best && x >= q.x && x < q.x + q.dx() && y >= q.y && y < q.y + q.dy())
                best = q.top();
        return best;
    }

    void Commit(const Placement& p)
    {
        mPlaced.push_back(p);
        std::vector<Point> next;
        next.reserve(mPoints.back().size() + 16);
        for (const auto& pt : mPoints.back())
        {
            const bool inside = pt[0] >= p.x && pt[0] < p.x + p.dx() && pt[1] >= p.y && pt[1] < p.y + p.dy()
                                && pt[2] >= p.z && pt[2] < p.top();
            if (!inside)
                next.push_back(pt);
        }

        const int x1 = p.x + p.dx(), y1 = p.y + p.dy(), z1 = p.top();
        auto add = [&](int x, int y, int z) {
            if (x < mC.length && y < mC.width && z < mC.height)
                next.push_back({x, y, z});
        };
        add(x1, ProjectY(x1, p.y, p.z), p.z);
        add(x1, p.y, ProjectZ(x1, p.y, p.z));
        add(ProjectX(p.x, y1, p.z), y1, p.z);
        add(p.x, y1, ProjectZ(p.x, y1, p.z));
        add(ProjectX(p.x, p.y, z1), p.y, z1);
        add(p.x, ProjectY(p.x, p.y, z1), z1);

        add(p.x, p.y, z1);
        for (int px : mPx)
        {
            if (px < p.x || px >= x1)
                continue;
            for (int py : mPy)
                if (py >= p.y && py < y1)
                    add(px, py, z1);
        }

        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        mPoints.push_back(std::move(next));
    }

    Container mC;
    ConstraintSet mCs;
    std::vector<int> mPx, mPy;
    std::vector<Placement> mPlaced;
    std::vector<std::vector<Point>> mPoints;
};

struct Score
{
    int placed = 0;
    int lifo = 0;
};

bool strictly_better(const Score& a, const Score& b)
{
    return a.placed > b.placed || (a.placed == b.placed && a.lifo < b.lifo);
}

Packing as_packing(const Container& c, const std::vector<Placement>& placed)
{
    Packing pk;
    pk.container = c;
    pk.placements = placed;
    return pk;
}

}  // namespace

ConstructiveResult constructive_pack(std::span<const LoadItem> items, const Container& container,
                                     std::span<const int> sequence, const ConstraintSet& constraints,
                                     bool stopAtFailure)
{
    Builder b(items, container, constraints);
    ConstructiveResult r;
    for (size_t k = 0; k < sequence.size(); ++k)
    {
        if (b.Place(items[sequence[k]]))
        {
            ++r.placed;
            continue;
        }
        r.skipped.push_back(sequence[k]);
        if (stopAtFailure)
        {
            for (size_t j = k + 1; j < sequence.size(); ++j)
                r.skipped.push_back(sequence[j]);
            break;
        }
    }
    r.packing = as_packing(container, b.Placements());
    return r;
}

HeuristicOutcome metaheuristic_pack(std::span<const LoadItem> items, const Container& container,
                                    const ConstraintSet& constraints, const HeuristicConfig& config,
                                    const Deadline& outer, std::uint64_t seed)
{
    HeuristicOutcome out;
    const int n = static_cast<int>(items.size());
    if (n == 0)
    {
        out.packing = Packing{container, {}, {}};
        return out;
    }
    long volume = 0;
    for (const auto& it : items)
        volume += it.volume();
    if (volume > container.volume())
        return out;

    const Deadline deadline = Deadline::after(TimeBudget::seconds(config.max_seconds)).earliest(outer);
    const auto spans = group_spans(items, constraints);
    std::vector<int> seq = initial_sequence(items, constraints);

    if (n <= config.enumeration_threshold)
    {
        // Permutations as a prefix tree: a prefix that cannot be placed cuts its subtree.
        Builder b(items, container, constraints);
        std::vector<char> used(n, 0);
        bool found = false;
        bool stop = false;
        auto rec = [&](auto&& self, int depth) -> void {
            if (depth == n)
            {
                found = true;
                return;
            }
            if ((++out.evaluations & 63) == 0 && deadline.expired())
                stop = true;
            for (int k = 0; k < n && !found && !stop; ++k)
            {
                const int i = seq[k];
                if (used[i])
                    continue;
                bool duplicate = false;
                for (int j = 0; j < k && !duplicate; ++j)
                    duplicate = !used[seq[j]] && items[seq[j]].length == items[i].length
                                && items[seq[j]].width == items[i].width && items[seq[j]].height == items[i].height
                                && items[seq[j]].fragile == items[i].fragile && items[seq[j]].group == items[i].group;
                if (duplicate || !b.Place(items[i]))
                    continue;
                used[i] = 1;
                self(self, depth + 1);
                if (found)
                    return;
                used[i] = 0;
                b.Pop();
            }
        };
        rec(rec, 0);
        if (found)
            out.packing = as_packing(container, b.Placements());
        return out;
    }

    auto evaluate = [&](const std::vector<int>& s, Score& score) -> std::optional<Packing> {
        ++out.evaluations;
        auto r = constructive_pack(items, container, s, constraints, true);
        score = {r.placed, total_lifo_distance(s, spans, config.lifo_tolerance)};
        if (r.placed == n)
            return r.packing;
        return std::nullopt;
    };

    auto allowed = [&](int item, int position) { return lifo_distance(spans[item], position, 0) <= config.lifo_eval; };

    Score current;
    if (auto pk = evaluate(seq, current))
    {
        out.packing = std::move(pk);
        return out;
    }

    std::mt19937_64 rng(seed);
    std::vector<int> best = seq;
    Score bestScore = current;

    for (int perturbation = 0; perturbation <= config.max_perturbations; ++perturbation)
    {
        int hood = 0;
        while (hood < 2 && !deadline.expired())
        {
            bool improved = false;
            for (int i = 0; i < n && !improved && !deadline.expired(); ++i)
                for (int j = 0; j < n && !improved && !deadline.expired(); ++j)
                {
                    if (i == j || (hood == 0 && j < i))
                        continue;
                    std::vector<int> cand = seq;
                    if (hood == 0)
                    {
                        if (!allowed(seq[i], j) || !allowed(seq[j], i))
                            continue;
                        std::swap(cand[i], cand[j]);
                    }
                    else
                    {
                        if (!allowed(seq[i], j))
                            continue;
                        const int moved = cand[i];
                        cand.erase(cand.begin() + i);
                        cand.insert(cand.begin() + j, moved);
                    }
                    Score s;
                    if (auto pk = evaluate(cand, s))
                    {
                        out.packing = std::move(pk);
                        return out;
                    }
                    if (strictly_better(s, current))
                    {
                        seq = std::move(cand);
                        current = s;
                        improved = true;
                    }
                }
            if (!improved)
                ++hood;
        }

        if (current.placed > bestScore.placed || (current.placed >= bestScore.placed && current.lifo <= bestScore.lifo))
        {
            best = seq;
            bestScore = current;
        }
        if (deadline.expired() || perturbation == config.max_perturbations)
            break;

        seq = best;
        const int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
        const int lo = std::max(0, i - config.perturbation_distance);
        const int hi = std::min(n - 1, i + config.perturbation_distance);
        int j = std::uniform_int_distribution<int>(lo, hi)(rng);
        if (j == i)
            j = i == hi ? lo : hi;
        std::swap(seq[i], seq[j]);
        if (auto pk = evaluate(seq, current))
        {
            out.packing = std::move(pk);
            return out;
        }
    }
    return out;
}

}  // namespace l3cvrp
