#pragma once

#include "l3cvrp/loading.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

namespace l3cvrp {

/// Bitset over customer ids.
class CustomerSet
{
  public:
    CustomerSet() = default;
    explicit CustomerSet(std::span<const int> ids);

    void insert(int id);
    bool contains(int id) const;
    bool subset_of(const CustomerSet& other) const;
    std::vector<int> members() const;

  private:
    std::vector<std::uint64_t> mWords;
};

/// Routes proven loadable, each with its packing, kept per constraint set.
class FeasibleRouteStore
{
  public:
    bool contains(std::span<const int> route, const ConstraintSet& cs) const;
    std::optional<Packing> packing(std::span<const int> route, const ConstraintSet& cs) const;
    /// False when the route was already stored.
    bool insert(std::span<const int> route, const ConstraintSet& cs, Packing packing);
    std::vector<std::vector<int>> routes(const ConstraintSet& cs) const;
    size_t size() const;

  private:
    mutable std::shared_mutex mMutex;
    std::map<std::string, std::map<std::vector<int>, Packing>> mByKey;
};

/// Customer sets that cannot share one vehicle under a support-free relaxation.
class InfeasibleComboStore
{
  public:
    /// Throws std::logic_error when `cs` enforces support.
    void insert(std::span<const int> combo, const ConstraintSet& cs);

    /// Some stored combo contained in `s` whose relaxation `cs` implies.
    std::optional<std::vector<int>> superset_of_infeasible(std::span<const int> s, const ConstraintSet& cs) const;

    std::vector<std::vector<int>> combos() const;
    size_t size() const;

  private:
    struct Entry
    {
        ConstraintSet cs;
        CustomerSet set;
        std::vector<int> ids;
    };
    mutable std::shared_mutex mMutex;
    std::vector<Entry> mEntries;
};

}  // namespace l3cvrp
