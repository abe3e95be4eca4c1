#include "l3cvrp/route_memory.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <stdexcept>

namespace l3cvrp {

CustomerSet::CustomerSet(std::span<const int> ids)
{
    for (int id : ids)
        insert(id);
}

void CustomerSet::insert(int id)
{
    const size_t w = static_cast<size_t>(id) / 64;
    if (w >= mWords.size())
        mWords.resize(w + 1, 0);
    mWords[w] |= std::uint64_t{1} << (id % 64);
}

bool CustomerSet::contains(int id) const
{
    const size_t w = static_cast<size_t>(id) / 64;
    return w < mWords.size() && ((mWords[w] >> (id % 64)) & 1U);
}

bool CustomerSet::subset_of(const CustomerSet& other) const
{
    for (size_t w = 0; w < mWords.size(); ++w)
    {
        const std::uint64_t theirs = w < other.mWords.size() ? other.mWords[w] : 0;
        if (mWords[w] & ~theirs)
            return false;
    }
    return true;
}

std::vector<int> CustomerSet::members() const
{
    std::vector<int> out;
    for (size_t w = 0; w < mWords.size(); ++w)
    {
        std::uint64_t bits = mWords[w];
        while (bits)
        {
            out.push_back(static_cast<int>(w * 64) + std::countr_zero(bits));
            bits &= bits - 1;
        }
    }
    return out;
}

bool FeasibleRouteStore::contains(std::span<const int> route, const ConstraintSet& cs) const
{
    std::shared_lock lock(mMutex);
    auto it = mByKey.find(cs.key());
    return it != mByKey.end() && it->second.count(std::vector<int>(route.begin(), route.end())) > 0;
}

std::optional<Packing> FeasibleRouteStore::packing(std::span<const int> route, const ConstraintSet& cs) const
{
    std::shared_lock lock(mMutex);
    auto it = mByKey.find(cs.key());
    if (it == mByKey.end())
        return std::nullopt;
    auto r = it->second.find(std::vector<int>(route.begin(), route.end()));
    if (r == it->second.end())
        return std::nullopt;
    return r->second;
}

bool FeasibleRouteStore::insert(std::span<const int> route, const ConstraintSet& cs, Packing packing)
{
    std::unique_lock lock(mMutex);
    return mByKey[cs.key()].try_emplace(std::vector<int>(route.begin(), route.end()), std::move(packing)).second;
}

std::vector<std::vector<int>> FeasibleRouteStore::routes(const ConstraintSet& cs) const
{
    std::shared_lock lock(mMutex);
    std::vector<std::vector<int>> out;
    auto it = mByKey.find(cs.key());
    if (it != mByKey.end())
        for (const auto& [r, pk] : it->second)
            out.push_back(r);
    return out;
}

size_t FeasibleRouteStore::size() const
{
    std::shared_lock lock(mMutex);
    size_t n = 0;
    for (const auto& [k, m] : mByKey)
        n += m.size();
    return n;
}

void InfeasibleComboStore::insert(std::span<const int> combo, const ConstraintSet& cs)
{
    if (cs.support)
        throw std::logic_error("infeasible combinations are only kept for support-free relaxations");
    std::vector<int> ids(combo.begin(), combo.end());
    std::sort(ids.begin(), ids.end());
    std::unique_lock lock(mMutex);
    for (const auto& e : mEntries)
        if (e.ids == ids && e.cs == cs)
            return;
    mEntries.push_back({cs, CustomerSet(ids), std::move(ids)});
}

std::optional<std::vector<int>> InfeasibleComboStore::superset_of_infeasible(std::span<const int> s,
                                                                             const ConstraintSet& cs) const
{
    if (cs.support)
        throw std::logic_error("subset queries need a support-free relaxation");
    const CustomerSet query(s);
    std::shared_lock lock(mMutex);
    for (const auto& e : mEntries)
        if (cs.at_least_as_strict_as(e.cs) && e.set.subset_of(query))
            return e.ids;
    return std::nullopt;
}

std::vector<std::vector<int>> InfeasibleComboStore::combos() const
{
    std::shared_lock lock(mMutex);
    std::vector<std::vector<int>> out;
    for (const auto& e : mEntries)
        out.push_back(e.ids);
    return out;
}

size_t InfeasibleComboStore::size() const
{
    std::shared_lock lock(mMutex);
    return mEntries.size();
}

}  // namespace l3cvrp
